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

#include "odv/erp_geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "odv/kernels.hpp"

namespace odv {

double wrap_longitude(double longitude) {
  double r = std::fmod(longitude, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double erp_row_latitude(double v, int height) {
  v = std::clamp(v, -0.5, height - 0.5);
  return -kPi * (v + 0.5 - 0.5 * height) / height;
}

SphericalCoord erp_to_sphere(ErpCoord c, FrameSize s) {
  require(s.valid(), "erp_to_sphere: invalid frame size");
  return {wrap_longitude(kTwoPi * (c.u + 0.5) / s.width),
          erp_row_latitude(c.v, s.height)};
}

ErpCoord sphere_to_erp(SphericalCoord p, FrameSize s) {
  require(s.valid(), "sphere_to_erp: invalid frame size");
  const double u = wrap_longitude(p.longitude) * s.width / kTwoPi - 0.5;
  const double v = 0.5 * s.height - 0.5 - p.latitude * s.height / kPi;
  return {u, v};
}

double stretching_ratio(double latitude) {
  return std::cos(latitude);
}

WeightMap latitude_weight_map(FrameSize s) {
  require(s.valid(), "latitude_weight_map: invalid frame size");
  WeightMap map(s);
  for (int v = 0; v < s.height; ++v) {
    const double w = stretching_ratio(erp_row_latitude(v, s.height));
    for (int u = 0; u < s.width; ++u) map.at(v, u) = w;
  }
  return map;
}

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// World frame: +x toward (lon 0, lat 0), +y toward lon pi/2, +z north pole.
// Camera frame: forward +x, image right +y (east), image down -z.
Mat3 camera_to_world(const SphericalCoord& center, double roll) {
  const double ct = std::cos(center.longitude), st = std::sin(center.longitude);
  const double cp = std::cos(center.latitude), sp = std::sin(center.latitude);
  const double cr = std::cos(roll), sr = std::sin(roll);
  const Mat3 yaw{{{ct, -st, 0.0}, {st, ct, 0.0}, {0.0, 0.0, 1.0}}};
  const Mat3 pitch{{{cp, 0.0, -sp}, {0.0, 1.0, 0.0}, {sp, 0.0, cp}}};
  const Mat3 spin{{{1.0, 0.0, 0.0}, {0.0, cr, -sr}, {0.0, sr, cr}}};
  return matmul(yaw, matmul(pitch, spin));
}

}  // namespace

Frame viewport_project(const Frame& erp, const ViewportSpec& vp) {
  require(!erp.empty(), "viewport_project: empty input frame");
  require(vp.out_size.valid(), "viewport_project: non-positive output size");
  require(vp.fov_h > 0.0 && vp.fov_h < kPi, "viewport_project: fov_h outside (0, pi)");
  require(vp.fov_v > 0.0 && vp.fov_v < kPi, "viewport_project: fov_v outside (0, pi)");

  const int out_h = vp.out_size.height, out_w = vp.out_size.width;
  const double tan_h = std::tan(0.5 * vp.fov_h);
  const double tan_v = std::tan(0.5 * vp.fov_v);
  const SphericalCoord center{wrap_longitude(vp.center.longitude), vp.center.latitude};
  const Mat3 rot = camera_to_world(center, vp.roll);

  Frame out(vp.out_size);
  for (int y = 0; y < out_h; ++y) {
    const double py = (2.0 * (y + 0.5) / out_h - 1.0) * tan_v;
    for (int x = 0; x < out_w; ++x) {
      const double px = (2.0 * (x + 0.5) / out_w - 1.0) * tan_h;
      const double cam[3] = {1.0, px, -py};
      double w[3];
      for (int i = 0; i < 3; ++i)
        w[i] = rot[i][0] * cam[0] + rot[i][1] * cam[1] + rot[i][2] * cam[2];
      const double norm = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
      const SphericalCoord dir{wrap_longitude(std::atan2(w[1], w[0])),
                               std::asin(std::clamp(w[2] / norm, -1.0, 1.0))};
      const ErpCoord at = sphere_to_erp(dir, erp.size());
      out.at(y, x) = bilinear_at(erp, at.u, at.v, HorizontalMode::wrap);
    }
  }
  return out;
}

Frame seam_stitch(const Frame& erp, double fov, FrameSize out) {
  ViewportSpec vp;
  vp.center = {0.0, 0.0};
  vp.fov_h = fov;
  vp.fov_v = fov;
  vp.out_size = out;
  return viewport_project(erp, vp);
}

double seam_discontinuity_score(const Frame& erp) {
  require(erp.width() >= 2, "seam_discontinuity_score: width must be >= 2");
  constexpr double kGuard = 1e-12;
  const int h = erp.height(), w = erp.width();

  std::vector<double> seam_steps;
  seam_steps.reserve(h);
  for (int v = 0; v < h; ++v)
    seam_steps.push_back(std::abs(erp.at(v, 0) - erp.at(v, w - 1)));
  const double seam = mean(seam_steps);

  // Interior pairs keep clear of the wrap columns so a constructed hard seam
  // does not leak into its own baseline.
  std::vector<double> interior_steps;
  if (w >= 4) {
    interior_steps.reserve(static_cast<std::size_t>(h) * (w - 3));
    for (int v = 0; v < h; ++v)
      for (int u = 1; u + 1 <= w - 2; ++u)
        interior_steps.push_back(std::abs(erp.at(v, u + 1) - erp.at(v, u)));
  }
  const double interior = mean(interior_steps);
  return seam / (interior + kGuard);
}

}  // namespace odv
