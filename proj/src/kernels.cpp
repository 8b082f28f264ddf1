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

#include "odv/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace odv {

double pairwise_sum(std::span<const double> xs) {
  // Full cascade down to pairs: sums of 2^k equal values stay exact, which
  // the loss and metric surfaces rely on for their closed-form identities.
  switch (xs.size()) {
    case 0: return 0.0;
    case 1: return xs[0];
    case 2: return xs[0] + xs[1];
    default: break;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

namespace {

double wrap_coord(double u, int width) {
  double r = std::fmod(u, static_cast<double>(width));
  if (r < 0.0) r += width;
  if (r >= width) r -= width;  // fmod of a tiny negative can land on width
  return r;
}

}  // namespace

double bilinear_at(const Frame& src, double u, double v, HorizontalMode h_mode) {
  const int h = src.height(), w = src.width();
  if (h_mode == HorizontalMode::wrap) {
    u = wrap_coord(u, w);
  } else {
    u = std::clamp(u, 0.0, static_cast<double>(w - 1));
  }
  v = std::clamp(v, 0.0, static_cast<double>(h - 1));

  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  const double fu = u - i0;
  const double fv = v - j0;

  int c0 = i0, c1 = i0 + 1;
  if (h_mode == HorizontalMode::wrap) {
    if (c1 >= w) c1 -= w;
  } else {
    c1 = std::min(c1, w - 1);
  }
  const int r0 = j0;
  const int r1 = std::min(j0 + 1, h - 1);

  const double top = (1.0 - fu) * src.at(r0, c0) + fu * src.at(r0, c1);
  const double bot = (1.0 - fu) * src.at(r1, c0) + fu * src.at(r1, c1);
  return (1.0 - fv) * top + fv * bot;
}

FeatureMap bilinear_sample(const FeatureMap& src, std::span<const SamplePos> at,
                           FrameSize out_size, HorizontalMode h_mode) {
  require(!src.empty(), "bilinear_sample: empty source");
  require(out_size.valid(), "bilinear_sample: invalid output size");
  require(at.size() == out_size.pixel_count(),
          "bilinear_sample: one position per output pixel required");

  FeatureMap out(src.channels(), out_size);
  for (int c = 0; c < src.channels(); ++c) {
    const Frame plane = src.to_frame(c);
    std::size_t i = 0;
    for (int v = 0; v < out_size.height; ++v)
      for (int u = 0; u < out_size.width; ++u, ++i)
        out.at(c, v, u) = bilinear_at(plane, at[i].u, at[i].v, h_mode);
  }
  return out;
}

std::vector<std::array<double, 2>> square_taps(int radius) {
  require(radius >= 0, "square_taps: negative radius");
  std::vector<std::array<double, 2>> taps;
  taps.reserve(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1));
  for (int dv = -radius; dv <= radius; ++dv)
    for (int du = -radius; du <= radius; ++du)
      taps.push_back({static_cast<double>(du), static_cast<double>(dv)});
  return taps;
}

FeatureMap deformable_sample(const FeatureMap& src, const DeformableKernel& kernel,
                             const OffsetField& offsets, const MaskField& masks) {
  require(!src.empty(), "deformable_sample: empty source");
  const int k_taps = kernel.taps();
  require(k_taps >= 1, "deformable_sample: kernel needs at least one tap");
  require(kernel.in_channels == src.channels(),
          "deformable_sample: kernel in_channels does not match source");
  require(kernel.out_channels >= 1, "deformable_sample: kernel out_channels must be >= 1");
  require(kernel.weights.size() ==
              static_cast<std::size_t>(kernel.out_channels) * kernel.in_channels * k_taps,
          "deformable_sample: kernel weight count mismatch");
  require(offsets.size == src.size() && offsets.taps == k_taps,
          "deformable_sample: offset field shape mismatch");
  require(masks.size == src.size() && masks.taps == k_taps,
          "deformable_sample: mask field shape mismatch");

  const int h = src.height(), w = src.width();
  const int c_in = src.channels(), c_out = kernel.out_channels;

  std::vector<Frame> planes;
  planes.reserve(c_in);
  for (int c = 0; c < c_in; ++c) planes.push_back(src.to_frame(c));

  FeatureMap out(c_out, src.size());
  std::vector<double> tap_values(static_cast<std::size_t>(c_in) * k_taps);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      for (int k = 0; k < k_taps; ++k) {
        const double su = u + kernel.base_taps[k][0] + offsets.du(k, v, u);
        const double sv = v + kernel.base_taps[k][1] + offsets.dv(k, v, u);
        const double m = masks.at(k, v, u);
        for (int c = 0; c < c_in; ++c)
          tap_values[static_cast<std::size_t>(c) * k_taps + k] =
              m * bilinear_at(planes[c], su, sv, HorizontalMode::wrap);
      }
      for (int co = 0; co < c_out; ++co) {
        double acc = 0.0;
        for (int c = 0; c < c_in; ++c)
          for (int k = 0; k < k_taps; ++k)
            acc += kernel.weight(co, c, k) * tap_values[static_cast<std::size_t>(c) * k_taps + k];
        out.at(co, v, u) = acc;
      }
    }
  }
  return out;
}

FeatureMap pixel_shuffle(const FeatureMap& src, int upscale) {
  require(upscale >= 1, "pixel_shuffle: upscale must be >= 1");
  const int r = upscale, r2 = r * r;
  require(src.channels() % r2 == 0,
          "pixel_shuffle: channels not divisible by upscale^2");

  const int out_c = src.channels() / r2;
  FeatureMap out(out_c, {src.height() * r, src.width() * r});
  for (int c = 0; c < out_c; ++c)
    for (int y = 0; y < out.height(); ++y)
      for (int x = 0; x < out.width(); ++x)
        out.at(c, y, x) = src.at(c * r2 + (y % r) * r + (x % r), y / r, x / r);
  return out;
}

FeatureMap pixel_unshuffle(const FeatureMap& src, int downscale) {
  require(downscale >= 1, "pixel_unshuffle: downscale must be >= 1");
  const int r = downscale;
  require(src.height() % r == 0 && src.width() % r == 0,
          "pixel_unshuffle: dimensions not divisible by downscale");

  FeatureMap out(src.channels() * r * r, {src.height() / r, src.width() / r});
  for (int c = 0; c < src.channels(); ++c)
    for (int y = 0; y < src.height(); ++y)
      for (int x = 0; x < src.width(); ++x)
        out.at(c * r * r + (y % r) * r + (x % r), y / r, x / r) = src.at(c, y, x);
  return out;
}

Frame warp(const Frame& src, const FlowField& flow) {
  require(!src.empty(), "warp: empty source");
  require(flow.size() == src.size(), "warp: flow size does not match frame");
  Frame out(src.size());
  for (int v = 0; v < src.height(); ++v)
    for (int u = 0; u < src.width(); ++u)
      out.at(v, u) = bilinear_at(src, u + flow.du.at(v, u), v + flow.dv.at(v, u),
                                 HorizontalMode::wrap);
  return out;
}

namespace {

double keys_cubic(double x) {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return a * (((x - 5.0) * x + 8.0) * x - 4.0);
  return 0.0;
}

struct TapRow {
  int first = 0;
  std::vector<double> weights;
};

std::vector<TapRow> resize_taps(int out_dim, double scale) {
  const double s = std::min(scale, 1.0);
  const double support = 2.0 / s;
  std::vector<TapRow> rows(out_dim);
  for (int x = 0; x < out_dim; ++x) {
    const double center = (x + 0.5) / scale - 0.5;
    const int lo = static_cast<int>(std::floor(center - support));
    const int hi = static_cast<int>(std::ceil(center + support));
    TapRow row;
    row.first = lo;
    row.weights.reserve(hi - lo + 1);
    double sum = 0.0;
    for (int i = lo; i <= hi; ++i) {
      const double w = keys_cubic((center - i) * s) * s;
      row.weights.push_back(w);
      sum += w;
    }
    for (double& w : row.weights) w /= sum;
    rows[x] = std::move(row);
  }
  return rows;
}

}  // namespace

Frame bicubic_resize(const Frame& src, double scale) {
  require(!src.empty(), "bicubic_resize: empty source");
  require(scale > 0.0, "bicubic_resize: scale must be positive");
  const int out_h = static_cast<int>(std::lround(src.height() * scale));
  const int out_w = static_cast<int>(std::lround(src.width() * scale));
  require(out_h >= 1 && out_w >= 1, "bicubic_resize: degenerate output size");

  const int in_h = src.height(), in_w = src.width();

  // Horizontal pass with wrap.
  const auto htaps = resize_taps(out_w, scale);
  Frame mid({in_h, out_w});
  for (int v = 0; v < in_h; ++v) {
    for (int x = 0; x < out_w; ++x) {
      const TapRow& row = htaps[x];
      double acc = 0.0;
      for (std::size_t t = 0; t < row.weights.size(); ++t) {
        int i = row.first + static_cast<int>(t);
        i %= in_w;
        if (i < 0) i += in_w;
        acc += row.weights[t] * src.at(v, i);
      }
      mid.at(v, x) = acc;
    }
  }

  // Vertical pass with clamp.
  const auto vtaps = resize_taps(out_h, scale);
  Frame out({out_h, out_w});
  for (int y = 0; y < out_h; ++y) {
    const TapRow& row = vtaps[y];
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (std::size_t t = 0; t < row.weights.size(); ++t) {
        const int i = std::clamp(row.first + static_cast<int>(t), 0, in_h - 1);
        acc += row.weights[t] * mid.at(i, x);
      }
      out.at(y, x) = acc;
    }
  }
  return out;
}

}  // namespace odv
