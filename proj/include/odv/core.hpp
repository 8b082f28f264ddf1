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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace odv {

struct FrameSize {
  int height = 0;
  int width = 0;

  bool operator==(const FrameSize&) const = default;
  [[nodiscard]] bool valid() const { return height >= 1 && width >= 1; }
  [[nodiscard]] std::size_t pixel_count() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
};

[[noreturn]] inline void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}

/// Single-channel raster of doubles, row-major, row 0 at the top.
/// Pixel (v, u) = (row, column); the continuous coordinate of a pixel
/// center is exactly its integer index.
class Frame {
 public:
  Frame() = default;
  explicit Frame(FrameSize size, double fill = 0.0)
      : size_(size), data_(size.pixel_count(), fill) {
    require(size.valid(), "Frame: non-positive dimensions");
  }

  [[nodiscard]] FrameSize size() const { return size_; }
  [[nodiscard]] int height() const { return size_.height; }
  [[nodiscard]] int width() const { return size_.width; }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  double& at(int v, int u) { return data_[idx(v, u)]; }
  [[nodiscard]] double at(int v, int u) const { return data_[idx(v, u)]; }

  [[nodiscard]] std::span<double> values() { return data_; }
  [[nodiscard]] std::span<const double> values() const { return data_; }

  bool operator==(const Frame&) const = default;

 private:
  [[nodiscard]] std::size_t idx(int v, int u) const {
    return static_cast<std::size_t>(v) * size_.width + u;
  }

  FrameSize size_{};
  std::vector<double> data_;
};

/// Per-pixel weights in [0, 1]. Alias of Frame; producers are responsible
/// for the range invariant (latitude_weight_map guarantees it, saliency
/// ingestion normalizes into it).
using WeightMap = Frame;

using FrameSequence = std::vector<Frame>;

/// channels x height x width tensor of doubles, channel-major planes.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int channels, FrameSize size, double fill = 0.0)
      : channels_(channels), size_(size),
        data_(static_cast<std::size_t>(channels) * size.pixel_count(), fill) {
    require(channels >= 1, "FeatureMap: channel count must be >= 1");
    require(size.valid(), "FeatureMap: non-positive dimensions");
  }

  [[nodiscard]] int channels() const { return channels_; }
  [[nodiscard]] FrameSize size() const { return size_; }
  [[nodiscard]] int height() const { return size_.height; }
  [[nodiscard]] int width() const { return size_.width; }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  double& at(int c, int v, int u) { return data_[idx(c, v, u)]; }
  [[nodiscard]] double at(int c, int v, int u) const { return data_[idx(c, v, u)]; }

  [[nodiscard]] std::span<double> channel(int c) {
    return {data_.data() + static_cast<std::size_t>(c) * size_.pixel_count(),
            size_.pixel_count()};
  }
  [[nodiscard]] std::span<const double> channel(int c) const {
    return {data_.data() + static_cast<std::size_t>(c) * size_.pixel_count(),
            size_.pixel_count()};
  }

  [[nodiscard]] std::span<double> values() { return data_; }
  [[nodiscard]] std::span<const double> values() const { return data_; }

  [[nodiscard]] Frame to_frame(int c) const {
    Frame out(size_);
    auto src = channel(c);
    std::copy(src.begin(), src.end(), out.values().begin());
    return out;
  }

  static FeatureMap from_frame(const Frame& f) {
    FeatureMap out(1, f.size());
    auto src = f.values();
    std::copy(src.begin(), src.end(), out.values().begin());
    return out;
  }

  bool operator==(const FeatureMap&) const = default;

 private:
  [[nodiscard]] std::size_t idx(int c, int v, int u) const {
    return (static_cast<std::size_t>(c) * size_.height + v) * size_.width + u;
  }

  int channels_ = 0;
  FrameSize size_{};
  std::vector<double> data_;
};

/// Per-pixel backward displacement in pixels: sample source at p + (du, dv).
struct FlowField {
  Frame du;
  Frame dv;

  FlowField() = default;
  explicit FlowField(FrameSize size) : du(size), dv(size) {}
  [[nodiscard]] FrameSize size() const { return du.size(); }
};

/// Deterministic pairwise (cascade) summation; row-major input order.
double pairwise_sum(std::span<const double> xs);

inline double mean(std::span<const double> xs) {
  return xs.empty() ? 0.0 : pairwise_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace odv
