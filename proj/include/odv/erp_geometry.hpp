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

#pragma once

#include <numbers>

#include "odv/core.hpp"

namespace odv {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Point on the unit sphere.
///   longitude in [0, 2*pi), wraps modulo 2*pi under arithmetic;
///   latitude in [-pi/2, +pi/2], measured from the equator, positive north.
struct SphericalCoord {
  double longitude = 0.0;
  double latitude = 0.0;
};

/// Continuous ERP pixel coordinate. Integer index i has its center at
/// coordinate i; u is interpreted modulo the frame width, v is clamped to
/// [-0.5, H - 0.5]. Row 0 is the north-pole edge.
struct ErpCoord {
  double u = 0.0;
  double v = 0.0;
};

/// Rectilinear (pinhole) view: direction, field of view, output raster.
/// fov_h and fov_v must lie strictly inside (0, pi). roll rotates the image
/// about the view axis (positive = counterclockwise image content).
struct ViewportSpec {
  SphericalCoord center{};
  double fov_h = kPi / 2.0;
  double fov_v = kPi / 2.0;
  FrameSize out_size{};
  double roll = 0.0;
};

/// Canonical longitude in [0, 2*pi). Exact for arguments already in range.
double wrap_longitude(double longitude);

/// Latitude of the (clamped) continuous row coordinate v on an ERP frame of
/// the given height: -pi * (v + 0.5 - H/2) / H. Row centers of the latitude
/// weight map share this exact expression.
double erp_row_latitude(double v, int height);

SphericalCoord erp_to_sphere(ErpCoord c, FrameSize s);

/// Inverse of erp_to_sphere; returns u in [-0.5, W - 0.5).
ErpCoord sphere_to_erp(SphericalCoord p, FrameSize s);

/// Local spherical-to-ERP area ratio at a latitude: cos(latitude).
/// 1 at the equator, 0 at the poles.
double stretching_ratio(double latitude);

/// Column-constant map of stretching_ratio at each row center. Values in
/// (0, 1], symmetric about the horizontal midline.
WeightMap latitude_weight_map(FrameSize s);

/// Render a perspective view of an ERP frame. Bilinear sampling with
/// horizontal wrap and vertical clamp; output dimensions = vp.out_size.
/// Adding 2*pi to vp.center.longitude leaves the output bit-identical.
Frame viewport_project(const Frame& erp, const ViewportSpec& vp);

/// Perspective view centered on the ERP left/right boundary (longitude 0),
/// so the wrap seam lands on the output's vertical midline.
Frame seam_stitch(const Frame& erp, double fov, FrameSize out);

/// Ratio of the mean wrap-column step |f[v,0] - f[v,W-1]| to the mean
/// absolute step between interior column pairs (pairs not touching the wrap
/// columns), guarded by 1e-12. Near 0..1 for seam-continuous content, large
/// for seam artifacts.
double seam_discontinuity_score(const Frame& erp);

}  // namespace odv
