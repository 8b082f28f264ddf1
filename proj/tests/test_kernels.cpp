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

FeatureMap random_features(int channels, FrameSize s, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FeatureMap f(channels, s);
  for (double& x : f.values()) x = dist(rng);
  return f;
}

DeformableKernel center_identity_kernel(int channels) {
  DeformableKernel k;
  k.out_channels = channels;
  k.in_channels = channels;
  k.base_taps = square_taps(1);
  k.weights.assign(static_cast<std::size_t>(channels) * channels * 9, 0.0);
  for (int c = 0; c < channels; ++c) k.weight(c, c, 4) = 1.0;  // center tap
  return k;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("bilinear_at at integer positions copies pixels exactly") {
  const Frame f = oracle::random_frame({6, 9}, 3);
  for (int v = 0; v < 6; ++v)
    for (int u = 0; u < 9; ++u) CHECK(bilinear_at(f, u, v) == f.at(v, u));
}

TEST_CASE("bilinear_at wraps across the seam") {
  const Frame f = oracle::random_frame({4, 8}, 5);
  const double got = bilinear_at(f, 8 - 0.5, 0.0, HorizontalMode::wrap);
  CHECK(got == doctest::Approx(0.5 * f.at(0, 7) + 0.5 * f.at(0, 0)).epsilon(1e-12));
}

TEST_CASE("bilinear_at clamp mode pins out-of-range columns") {
  const Frame f = oracle::random_frame({4, 8}, 6);
  CHECK(bilinear_at(f, -3.0, 1.0, HorizontalMode::clamp) == f.at(1, 0));
  CHECK(bilinear_at(f, 11.0, 1.0, HorizontalMode::clamp) == f.at(1, 7));
}

TEST_CASE("bilinear_sample keeps all-ones input at one for random positions") {
  const FeatureMap ones(2, FrameSize{5, 7}, 1.0);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> du(-20.0, 20.0);
  std::vector<SamplePos> at(5 * 7);
  for (auto& p : at) p = {du(rng), du(rng)};
  const FeatureMap out = bilinear_sample(ones, at, {5, 7});
  for (double x : out.values()) CHECK(x == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("deformable_sample with zero offsets, unit masks, identity kernel is identity") {
  const FeatureMap src = random_features(3, {6, 10}, 17);
  const auto kernel = center_identity_kernel(3);
  const OffsetField offsets(src.size(), 9);
  const MaskField masks(src.size(), 9, 1.0);
  const FeatureMap out = deformable_sample(src, kernel, offsets, masks);
  auto a = out.values(), b = src.values();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-6));
}

TEST_CASE("deformable_sample averaging kernel preserves all-ones input") {
  const FeatureMap ones(1, FrameSize{5, 8}, 1.0);
  DeformableKernel k;
  k.out_channels = 1;
  k.in_channels = 1;
  k.base_taps = square_taps(1);
  k.weights.assign(9, 1.0 / 9.0);
  const OffsetField offsets(ones.size(), 9);
  const MaskField masks(ones.size(), 9, 1.0);
  const FeatureMap out = deformable_sample(ones, k, offsets, masks);
  for (double x : out.values()) CHECK(x == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("deformable_sample uniform unit offset equals a wrapped column roll") {
  const Frame plane = oracle::random_frame({5, 8}, 21);
  FeatureMap src = FeatureMap::from_frame(plane);
  auto kernel = center_identity_kernel(1);
  OffsetField offsets(src.size(), 9);
  for (int k = 0; k < 9; ++k)
    for (int v = 0; v < 5; ++v)
      for (int u = 0; u < 8; ++u) offsets.du(k, v, u) = 1.0;
  const MaskField masks(src.size(), 9, 1.0);
  const FeatureMap out = deformable_sample(src, kernel, offsets, masks);

  // Sampling at u+1 pulls content one column leftward: out == roll(src, -1).
  const Frame expected = oracle::roll_horizontal(plane, -1);
  for (int v = 0; v < 5; ++v)
    for (int u = 0; u < 8; ++u)
      CHECK(out.at(0, v, u) == doctest::Approx(expected.at(v, u)).epsilon(1e-12));
}

TEST_CASE("deformable_sample is linear in the source") {
  const FrameSize s{6, 9};
  const FeatureMap x = random_features(2, s, 31);
  const FeatureMap y = random_features(2, s, 32);
  DeformableKernel k;
  k.out_channels = 2;
  k.in_channels = 2;
  k.base_taps = square_taps(1);
  std::mt19937 rng(33);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  k.weights.resize(2 * 2 * 9);
  for (double& w : k.weights) w = dist(rng);
  OffsetField offsets(s, 9);
  for (double& o : offsets.data) o = dist(rng);
  MaskField masks(s, 9);
  std::uniform_real_distribution<double> mdist(0.0, 1.0);
  for (double& m : masks.data) m = mdist(rng);

  const double a = 0.7, b = -1.3;
  FeatureMap mix(2, s);
  for (std::size_t i = 0; i < mix.values().size(); ++i)
    mix.values()[i] = a * x.values()[i] + b * y.values()[i];

  const FeatureMap sampled_mix = deformable_sample(mix, k, offsets, masks);
  const FeatureMap sx = deformable_sample(x, k, offsets, masks);
  const FeatureMap sy = deformable_sample(y, k, offsets, masks);
  for (std::size_t i = 0; i < sampled_mix.values().size(); ++i)
    CHECK(sampled_mix.values()[i] ==
          doctest::Approx(a * sx.values()[i] + b * sy.values()[i]).epsilon(1e-6));
}

TEST_CASE("deformable_sample validates shapes") {
  const FeatureMap src = random_features(2, {4, 6}, 41);
  auto kernel = center_identity_kernel(2);
  OffsetField offsets(FrameSize{4, 5}, 9);  // wrong width
  MaskField masks(src.size(), 9, 1.0);
  CHECK_THROWS_AS(deformable_sample(src, kernel, offsets, masks), std::invalid_argument);
  OffsetField offsets_ok(src.size(), 9);
  MaskField bad_masks(src.size(), 8, 1.0);  // wrong tap count
  CHECK_THROWS_AS(deformable_sample(src, kernel, offsets_ok, bad_masks),
                  std::invalid_argument);
}

TEST_CASE("pixel_shuffle definitional ordering, r=2 on a 1x1 block") {
  FeatureMap src(4, FrameSize{1, 1});
  for (int c = 0; c < 4; ++c) src.at(c, 0, 0) = c + 1.0;
  const FeatureMap out = pixel_shuffle(src, 2);
  CHECK(out.channels() == 1);
  CHECK(out.height() == 2);
  CHECK(out.width() == 2);
  CHECK(out.at(0, 0, 0) == 1.0);
  CHECK(out.at(0, 0, 1) == 2.0);
  CHECK(out.at(0, 1, 0) == 3.0);
  CHECK(out.at(0, 1, 1) == 4.0);
}

TEST_CASE("pixel_shuffle r=1 is the identity") {
  const FeatureMap src = random_features(3, {4, 5}, 51);
  CHECK(pixel_shuffle(src, 1) == src);
}

TEST_CASE("pixel_shuffle constant-per-group input gives constant output") {
  FeatureMap src(8, FrameSize{3, 3});
  for (int c = 0; c < 8; ++c)
    for (int v = 0; v < 3; ++v)
      for (int u = 0; u < 3; ++u) src.at(c, v, u) = c / 4;  // group constant
  const FeatureMap out = pixel_shuffle(src, 2);
  for (int c = 0; c < 2; ++c)
    for (int v = 0; v < 6; ++v)
      for (int u = 0; u < 6; ++u) CHECK(out.at(c, v, u) == c);
}

TEST_CASE("pixel_shuffle then pixel_unshuffle round-trips exactly") {
  const FeatureMap src = random_features(12, {3, 4}, 57);
  CHECK(pixel_unshuffle(pixel_shuffle(src, 2), 2) == src);
}

TEST_CASE("pixel_shuffle rejects indivisible channel counts") {
  const FeatureMap src = random_features(6, {2, 2}, 58);
  CHECK_THROWS_AS(pixel_shuffle(src, 2), std::invalid_argument);
}

TEST_CASE("warp with zero flow is the identity") {
  const Frame f = oracle::random_frame({5, 9}, 61);
  const FlowField zero(f.size());
  CHECK(warp(f, zero) == f);
}

TEST_CASE("warp with uniform integer flow equals a wrapped roll") {
  const Frame f = oracle::random_frame({5, 8}, 62);
  FlowField flow(f.size());
  for (double& d : flow.du.values()) d = 2.0;
  const Frame out = warp(f, flow);
  const Frame expected = oracle::roll_horizontal(f, -2);
  for (int v = 0; v < 5; ++v)
    for (int u = 0; u < 8; ++u) CHECK(out.at(v, u) == expected.at(v, u));
}

TEST_CASE("warp keeps all-ones frames at one under arbitrary flow") {
  const Frame ones(FrameSize{6, 7}, 1.0);
  std::mt19937 rng(63);
  std::uniform_real_distribution<double> dist(-9.0, 9.0);
  FlowField flow(ones.size());
  for (double& d : flow.du.values()) d = dist(rng);
  for (double& d : flow.dv.values()) d = dist(rng);
  const Frame out = warp(ones, flow);
  for (double x : out.values()) CHECK(x == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("warp wrap equivariance: rolled input and flow give rolled output") {
  const Frame f = oracle::random_frame({4, 10}, 64);
  std::mt19937 rng(65);
  std::uniform_int_distribution<int> dist(-3, 3);  // integer shifts stay bit-exact
  FlowField flow(f.size());
  for (double& d : flow.du.values()) d = dist(rng);
  for (double& d : flow.dv.values()) d = dist(rng);

  const int k = 3;
  FlowField rolled_flow(f.size());
  rolled_flow.du = oracle::roll_horizontal(flow.du, k);
  rolled_flow.dv = oracle::roll_horizontal(flow.dv, k);
  const Frame lhs = warp(oracle::roll_horizontal(f, k), rolled_flow);
  const Frame rhs = oracle::roll_horizontal(warp(f, flow), k);
  CHECK(lhs == rhs);
}

TEST_CASE("bicubic_resize at scale 1 is the identity") {
  const Frame f = oracle::random_frame({7, 12}, 71);
  const Frame out = bicubic_resize(f, 1.0);
  for (std::size_t i = 0; i < out.values().size(); ++i)
    CHECK(out.values()[i] == doctest::Approx(f.values()[i]).epsilon(1e-6));
}

TEST_CASE("bicubic_resize keeps constants constant at any scale") {
  const Frame f(FrameSize{12, 20}, 0.37);
  for (double scale : {0.25, 0.5, 2.0, 4.0, 1.5}) {
    const Frame out = bicubic_resize(f, scale);
    for (double x : out.values()) CHECK(x == doctest::Approx(0.37).epsilon(1e-6));
  }
}

TEST_CASE("bicubic_resize band-limited round trip exceeds 40 dB") {
  const FrameSize s{64, 128};
  Frame f(s);
  for (int v = 0; v < s.height; ++v)
    for (int u = 0; u < s.width; ++u) {
      const double x = (u + 0.5) / s.width, y = (v + 0.5) / s.height;
      f.at(v, u) = 0.5 + 0.2 * std::sin(kTwoPi * 4 * x) + 0.15 * std::cos(kTwoPi * 2 * y) +
                   0.1 * std::sin(kTwoPi * (6 * x + 2 * y));
    }
  const Frame up = bicubic_resize(bicubic_resize(f, 0.25), 4.0);
  REQUIRE(up.size() == s);
  CHECK(oracle::psnr(f, up) >= 40.0);
}

TEST_CASE("bicubic_resize wrap equivariance for integer-compatible rolls") {
  // Rolling the input by k columns rolls a scale-s output by k*s columns
  // when k*s is an integer; the tap weights are identical either way.
  const Frame f = oracle::random_frame({8, 16}, 72);
  const double scale = 0.5;
  const int k = 4;
  const Frame lhs = bicubic_resize(oracle::roll_horizontal(f, k), scale);
  const Frame rhs = oracle::roll_horizontal(bicubic_resize(f, scale), k / 2);
  CHECK(lhs == rhs);
}

TEST_CASE("bicubic_resize output dimensions round and degenerate sizes throw") {
  const Frame f = oracle::random_frame({10, 10}, 73);
  CHECK(bicubic_resize(f, 0.35).height() == 4);  // round(3.5) away from zero
  CHECK_THROWS_AS(bicubic_resize(f, 0.01), std::invalid_argument);
}

TEST_CASE("samplers preserve all-ones input over 100 random configurations") {
  std::mt19937 rng(81);
  std::uniform_real_distribution<double> pos(-15.0, 15.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const FrameSize s{6, 8};
  const Frame ones_frame(s, 1.0);
  const FeatureMap ones_map(1, s, 1.0);

  for (int trial = 0; trial < 100; ++trial) {
    // warp
    FlowField flow(s);
    for (double& d : flow.du.values()) d = pos(rng);
    for (double& d : flow.dv.values()) d = pos(rng);
    const Frame warped = warp(ones_frame, flow);
    for (double x : warped.values()) CHECK(x == doctest::Approx(1.0).epsilon(1e-6));

    // deformable with random offsets and a random partition-of-unity kernel
    DeformableKernel k;
    k.out_channels = 1;
    k.in_channels = 1;
    k.base_taps = square_taps(1);
    k.weights.resize(9);
    double wsum = 0.0;
    for (double& w : k.weights) {
      w = unit(rng) + 1e-3;
      wsum += w;
    }
    for (double& w : k.weights) w /= wsum;
    OffsetField offsets(s, 9);
    for (double& o : offsets.data) o = pos(rng);
    const MaskField masks(s, 9, 1.0);
    const FeatureMap deformed = deformable_sample(ones_map, k, offsets, masks);
    for (double x : deformed.values()) CHECK(x == doctest::Approx(1.0).epsilon(1e-6));
  }
}

}  // TEST_SUITE
