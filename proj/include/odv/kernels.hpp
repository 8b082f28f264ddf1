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

#include <array>
#include <vector>

#include "odv/core.hpp"

namespace odv {

/// Out-of-range handling for the horizontal axis. The vertical axis always
/// clamps (pole rows have no meaningful continuation).
enum class HorizontalMode { wrap, clamp };

struct SamplePos {
  double u = 0.0;
  double v = 0.0;
};

/// 4-tap bilinear interpolation of a single channel at continuous (u, v).
double bilinear_at(const Frame& src, double u, double v,
                   HorizontalMode h_mode = HorizontalMode::wrap);

/// Bilinear-resample every channel of src at one position per output pixel
/// (row-major, size out_size.pixel_count()).
FeatureMap bilinear_sample(const FeatureMap& src, std::span<const SamplePos> at,
                           FrameSize out_size,
                           HorizontalMode h_mode = HorizontalMode::wrap);

/// Tap weights of a deformable sampling kernel plus the regular displacement
/// grid the per-pixel offsets perturb. weights is indexed
/// [c_out][c_in][tap], flattened row-major.
struct DeformableKernel {
  int out_channels = 0;
  int in_channels = 0;
  std::vector<std::array<double, 2>> base_taps;  // (du, dv) per tap
  std::vector<double> weights;

  [[nodiscard]] int taps() const { return static_cast<int>(base_taps.size()); }
  double& weight(int c_out, int c_in, int k) {
    return weights[(static_cast<std::size_t>(c_out) * in_channels + c_in) * base_taps.size() + k];
  }
  [[nodiscard]] double weight(int c_out, int c_in, int k) const {
    return weights[(static_cast<std::size_t>(c_out) * in_channels + c_in) * base_taps.size() + k];
  }
};

/// The 3x3 grid (du, dv) in {-r..r}^2, row-major over (dv, du). radius 1
/// gives the 9-tap default; its center tap has index 4.
std::vector<std::array<double, 2>> square_taps(int radius = 1);

/// Per-tap (du, dv) pixel displacements added on top of the kernel's base
/// grid, one pair per pixel.
struct OffsetField {
  FrameSize size{};
  int taps = 0;
  std::vector<double> data;  // [tap][{du,dv}][v][u]

  OffsetField() = default;
  OffsetField(FrameSize s, int k)
      : size(s), taps(k), data(2 * static_cast<std::size_t>(k) * s.pixel_count(), 0.0) {}
  double& du(int k, int v, int u) { return data[idx(k, 0, v, u)]; }
  double& dv(int k, int v, int u) { return data[idx(k, 1, v, u)]; }
  [[nodiscard]] double du(int k, int v, int u) const { return data[idx(k, 0, v, u)]; }
  [[nodiscard]] double dv(int k, int v, int u) const { return data[idx(k, 1, v, u)]; }

 private:
  [[nodiscard]] std::size_t idx(int k, int comp, int v, int u) const {
    return ((static_cast<std::size_t>(k) * 2 + comp) * size.height + v) * size.width + u;
  }
};

/// Per-tap modulation scalars in [0, 1], one per pixel.
struct MaskField {
  FrameSize size{};
  int taps = 0;
  std::vector<double> data;  // [tap][v][u]

  MaskField() = default;
  MaskField(FrameSize s, int k, double fill = 1.0)
      : size(s), taps(k), data(static_cast<std::size_t>(k) * s.pixel_count(), fill) {}
  double& at(int k, int v, int u) { return data[idx(k, v, u)]; }
  [[nodiscard]] double at(int k, int v, int u) const { return data[idx(k, v, u)]; }

 private:
  [[nodiscard]] std::size_t idx(int k, int v, int u) const {
    return (static_cast<std::size_t>(k) * size.height + v) * size.width + u;
  }
};

/// Modulated deformable sampling:
///   out(c', p) = sum_k sum_c w[c'][c][k] * mask[k][p]
///                * bilinear(src_c, p + base_tap_k + offset[k][p])
/// with horizontal wrap (taps may cross the ERP seam) and vertical clamp.
FeatureMap deformable_sample(const FeatureMap& src, const DeformableKernel& kernel,
                             const OffsetField& offsets, const MaskField& masks);

/// Channel-to-space rearrangement: C x H x W -> C/r^2 x rH x rW, channel
/// block index (i*r + j) filling sub-pixel (row i, col j).
FeatureMap pixel_shuffle(const FeatureMap& src, int upscale);

/// Exact inverse of pixel_shuffle.
FeatureMap pixel_unshuffle(const FeatureMap& src, int downscale);

/// Backward warp: out(p) = bilinear(src, p + flow(p)), horizontal wrap.
Frame warp(const Frame& src, const FlowField& flow);

/// Separable Keys bicubic resize (a = -0.5). Output dims are
/// round(dim * scale). When downscaling, the kernel support widens by
/// 1/scale (anti-aliased). Horizontal wrap, vertical clamp; tap weights are
/// normalized to sum 1.
Frame bicubic_resize(const Frame& src, double scale);

}  // namespace odv
