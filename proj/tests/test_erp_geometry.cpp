/* Copyright (c) 2026 odvkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <doctest.h>

#include <cmath>
#include <random>

#include "odv/erp_geometry.hpp"
#include "odv/kernels.hpp"
#include "oracles.hpp"

using namespace odv;

namespace {

Frame longitude_cosine(FrameSize s) {
  Frame f(s);
  for (int v = 0; v < s.height; ++v)
    for (int u = 0; u < s.width; ++u)
      f.at(v, u) = 0.5 + 0.5 * std::cos(kTwoPi * (u + 0.5) / s.width);
  return f;
}

Frame longitude_sine(FrameSize s) {
  Frame f(s);
  for (int v = 0; v < s.height; ++v)
    for (int u = 0; u < s.width; ++u)
      f.at(v, u) = 0.5 + 0.5 * std::sin(kTwoPi * (u + 0.5) / s.width);
  return f;
}

}  // namespace

TEST_SUITE("erp_geometry") {

TEST_CASE("erp_to_sphere maps the frame center to the front equator") {
  for (FrameSize s : {FrameSize{4, 8}, FrameSize{480, 960}, FrameSize{7, 13}}) {
    const auto p = erp_to_sphere({s.width / 2.0 - 0.5, s.height / 2.0 - 0.5}, s);
    CHECK(p.longitude == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(p.latitude == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("erp_to_sphere puts the left frame edge on the zero meridian") {
  for (double v : {0.0, 1.0, 2.5}) {
    const auto p = erp_to_sphere({-0.5, v}, {4, 8});
    CHECK(p.longitude == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("erp_to_sphere pinned value at H=4 W=8") {
  const auto p = erp_to_sphere({0.0, 0.0}, {4, 8});
  CHECK(p.longitude == doctest::Approx(kPi / 8.0).epsilon(1e-12));
  CHECK(p.latitude == doctest::Approx(3.0 * kPi / 8.0).epsilon(1e-12));
}

TEST_CASE("erp_to_sphere clamps v to the pole rows and wraps u") {
  const FrameSize s{4, 8};
  CHECK(erp_to_sphere({0.0, -3.0}, s).latitude == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(erp_to_sphere({0.0, 9.5}, s).latitude == doctest::Approx(-kPi / 2).epsilon(1e-12));
  CHECK(erp_to_sphere({8.0, 0.0}, s).longitude ==
        doctest::Approx(erp_to_sphere({0.0, 0.0}, s).longitude).epsilon(1e-12));
}

TEST_CASE("sphere_to_erp pinned values") {
  const auto c = sphere_to_erp({kPi, 0.0}, {4, 8});
  CHECK(c.u == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(c.v == doctest::Approx(1.5).epsilon(1e-12));

  const auto corner = sphere_to_erp({0.0, kPi / 2.0}, {4, 8});
  CHECK(corner.u == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(corner.v == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("sphere<->erp round trip on 1e4 random interior coordinates") {
  std::mt19937 rng(7);
  const FrameSize s{540, 1080};
  std::uniform_real_distribution<double> du(-0.5, s.width - 0.5 - 1e-9);
  std::uniform_real_distribution<double> dv(-0.5, s.height - 0.5);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const ErpCoord c{du(rng), dv(rng)};
    const ErpCoord back = sphere_to_erp(erp_to_sphere(c, s), s);
    worst = std::max({worst, std::abs(back.u - c.u), std::abs(back.v - c.v)});
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("stretching_ratio pinned values") {
  CHECK(stretching_ratio(0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(stretching_ratio(kPi / 2.0)) <= 1e-12);
  CHECK(std::abs(stretching_ratio(-kPi / 2.0)) <= 1e-12);
  CHECK(stretching_ratio(kPi / 3.0) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("latitude_weight_map H=4 pinned rows") {
  const WeightMap w = latitude_weight_map({4, 8});
  const double expected[4] = {0.3826834, 0.9238795, 0.9238795, 0.3826834};
  for (int v = 0; v < 4; ++v)
    for (int u = 0; u < 8; ++u)
      CHECK(w.at(v, u) == doctest::Approx(expected[v]).epsilon(1e-6));
}

TEST_CASE("latitude_weight_map degenerate single row is all ones") {
  const WeightMap w = latitude_weight_map({1, 4});
  for (int u = 0; u < 4; ++u) CHECK(w.at(0, u) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("latitude_weight_map equals stretching_ratio of the row latitude exactly") {
  for (int h : {1, 2, 4, 480, 1080}) {
    const WeightMap w = latitude_weight_map({h, 2});
    for (int v = 0; v < h; ++v) {
      const double expect = stretching_ratio(erp_to_sphere({0.0, double(v)}, {h, 2}).latitude);
      CHECK(w.at(v, 0) == expect);  // bit-identical: shared formula
    }
  }
}

TEST_CASE("latitude_weight_map bounds, symmetry, monotonicity") {
  for (int h : {2, 5, 64, 481}) {
    const WeightMap w = latitude_weight_map({h, 1});
    for (int v = 0; v < h; ++v) {
      CHECK(w.at(v, 0) > 0.0);
      CHECK(w.at(v, 0) <= 1.0);
      CHECK(w.at(v, 0) == w.at(h - 1 - v, 0));
    }
    for (int v = 0; v + 1 <= h / 2 - 1; ++v) CHECK(w.at(v, 0) <= w.at(v + 1, 0));
  }
}

TEST_CASE("viewport_project samples a constant frame as constant") {
  const Frame f(FrameSize{16, 32}, 0.7);
  ViewportSpec vp;
  vp.center = {1.0, 0.3};
  vp.out_size = {9, 9};
  const Frame out = viewport_project(f, vp);
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 9; ++x) CHECK(out.at(y, x) == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("viewport_project all-ones frame yields all-ones viewport") {
  const Frame f(FrameSize{32, 64}, 1.0);
  ViewportSpec vp;
  vp.center = {kPi / 3.0, -0.7};
  vp.fov_h = 2.0;
  vp.fov_v = 1.2;
  vp.out_size = {15, 21};
  const Frame out = viewport_project(f, vp);
  for (double x : out.values()) CHECK(x == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("viewport_project small-FOV center pixel equals the ERP center sample") {
  const FrameSize s{64, 128};
  const Frame f = oracle::random_frame(s, 11);
  ViewportSpec vp;
  vp.center = {kPi, 0.0};
  vp.fov_h = 1e-4;
  vp.fov_v = 1e-4;
  vp.out_size = {5, 5};
  const Frame out = viewport_project(f, vp);
  const double expect = bilinear_at(f, s.width / 2.0 - 0.5, s.height / 2.0 - 0.5);
  CHECK(out.at(2, 2) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("viewport_project across the seam stays smooth for a longitude sinusoid") {
  const FrameSize s{128, 256};
  const Frame f = longitude_sine(s);
  ViewportSpec vp;
  vp.center = {0.0, 0.0};  // straight at the wrap seam
  vp.out_size = {128, 128};
  const Frame out = viewport_project(f, vp);

  // Maximum horizontal jump in the 3-column band around the seam vs the
  // maximum jump elsewhere.
  const int mid = out.width() / 2;
  double seam_jump = 0.0, interior_jump = 0.0;
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x + 1 < out.width(); ++x) {
      const double jump = std::abs(out.at(y, x + 1) - out.at(y, x));
      if (std::abs(x - mid) <= 1)
        seam_jump = std::max(seam_jump, jump);
      else
        interior_jump = std::max(interior_jump, jump);
    }
  CHECK(seam_jump <= 1.05 * interior_jump);
}

TEST_CASE("viewport_project is bit-identical when 2*pi is added to the center longitude") {
  const Frame f = oracle::random_frame({32, 64}, 23);
  for (double lon : {0.0, 0.5, 1.0, kPi / 2.0, kPi}) {
    ViewportSpec a;
    a.center = {lon, 0.2};
    a.out_size = {17, 17};
    ViewportSpec b = a;
    b.center.longitude = lon + kTwoPi;
    const Frame fa = viewport_project(f, a);
    const Frame fb = viewport_project(f, b);
    CHECK(fa == fb);
  }
}

TEST_CASE("viewport_project rejects bad parameters") {
  const Frame f(FrameSize{8, 16});
  ViewportSpec vp;
  vp.out_size = {0, 4};
  CHECK_THROWS_AS(viewport_project(f, vp), std::invalid_argument);
  vp.out_size = {4, 4};
  vp.fov_h = 0.0;
  CHECK_THROWS_AS(viewport_project(f, vp), std::invalid_argument);
  vp.fov_h = kPi;
  CHECK_THROWS_AS(viewport_project(f, vp), std::invalid_argument);
}

TEST_CASE("seam_stitch keeps a constant frame constant") {
  const Frame f(FrameSize{16, 32}, 0.25);
  const Frame out = seam_stitch(f, kPi / 2.0, {11, 11});
  for (double x : out.values()) CHECK(x == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("seam_stitch midline column samples the wrap columns") {
  // Mark the two wrap columns; everything else zero. The stitched view's
  // center column must pick the marks up.
  Frame f(FrameSize{32, 64});
  for (int v = 0; v < 32; ++v) {
    f.at(v, 0) = 1.0;
    f.at(v, 63) = 1.0;
  }
  const Frame out = seam_stitch(f, kPi / 2.0, {33, 33});
  const int mid = out.width() / 2;
  double center_mass = 0.0;
  for (int y = 0; y < out.height(); ++y) center_mass += out.at(y, mid);
  CHECK(center_mass > 0.0);
}

TEST_CASE("seam_discontinuity_score on a seam-continuous longitude sinusoid") {
  const Frame f = longitude_cosine({16, 64});
  CHECK(seam_discontinuity_score(f) <= 1.05);
}

TEST_CASE("seam_discontinuity_score responds to the sampling phase") {
  // With the extremum on the seam the score vanishes; with the steepest
  // slope on the seam it sits near pi/2.
  const Frame f = longitude_sine({16, 64});
  const double score = seam_discontinuity_score(f);
  CHECK(score > 1.0);
  CHECK(score < 2.0);
}

TEST_CASE("seam_discontinuity_score on a constructed hard seam") {
  Frame f(FrameSize{8, 16});
  for (int v = 0; v < 8; ++v) f.at(v, 0) = 1.0;
  CHECK(seam_discontinuity_score(f) > 1e10);
}

TEST_CASE("seam_discontinuity_score of a constant frame is zero") {
  const Frame f(FrameSize{8, 16}, 0.4);
  CHECK(seam_discontinuity_score(f) == 0.0);
}

TEST_CASE("seam_stitch of a continuous sinusoid scores clean") {
  const Frame f = longitude_cosine({64, 128});
  const Frame stitched = seam_stitch(f, kPi / 2.0, {64, 64});
  CHECK(seam_discontinuity_score(stitched) <= 1.05);
}

}  // TEST_SUITE
