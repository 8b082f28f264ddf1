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

#include "odv/ope.hpp"

#include <cmath>

#include "odv/erp_geometry.hpp"

namespace odv {

namespace {

void validate(const OpeConfig& cfg) {
  require(cfg.pair_count >= 1, "ope: pair count d must be >= 1");
  require(cfg.size.valid(), "ope: invalid frame size");
}

}  // namespace

std::vector<long> ope_frequencies(int pair_count, int width) {
  require(pair_count >= 1, "ope_frequencies: pair count must be >= 1");
  require(width >= 1, "ope_frequencies: width must be >= 1");
  std::vector<long> freqs(pair_count);
  for (int k = 0; k < pair_count; ++k) {
    const double raw = std::pow(10000.0, -2.0 * k / pair_count) * width / kTwoPi;
    freqs[k] = std::max(1L, std::lround(raw));
  }
  return freqs;
}

double horizontal_pe_at(const OpeConfig& cfg, int channel, double u) {
  validate(cfg);
  require(channel >= 0 && channel < 2 * cfg.pair_count,
          "horizontal_pe_at: channel out of range");
  const int k = channel / 2;

  double arg;
  if (cfg.mode == OpeFrequencyMode::integer_cycles) {
    // Reduce u first so the argument is an exact function of the position
    // on the cylinder; seam closure then holds bit-for-bit.
    double pos = std::fmod(u + 0.5, static_cast<double>(cfg.size.width));
    if (pos < 0.0) pos += cfg.size.width;
    if (pos >= cfg.size.width) pos -= cfg.size.width;
    const long omega = ope_frequencies(cfg.pair_count, cfg.size.width)[k];
    arg = kTwoPi * static_cast<double>(omega) * (pos / cfg.size.width);
  } else {
    arg = u * std::pow(10000.0, -2.0 * k / cfg.pair_count);
  }
  return (channel % 2 == 0) ? std::sin(arg) : std::cos(arg);
}

FeatureMap horizontal_pe(const OpeConfig& cfg) {
  validate(cfg);
  const int d = cfg.pair_count;
  FeatureMap out(2 * d, cfg.size);

  const auto freqs = ope_frequencies(d, cfg.size.width);
  for (int k = 0; k < d; ++k) {
    for (int u = 0; u < cfg.size.width; ++u) {
      double s, c;
      if (cfg.mode == OpeFrequencyMode::integer_cycles) {
        const double pos = std::fmod(u + 0.5, static_cast<double>(cfg.size.width));
        const double arg = kTwoPi * static_cast<double>(freqs[k]) * (pos / cfg.size.width);
        s = std::sin(arg);
        c = std::cos(arg);
      } else {
        const double arg = u * std::pow(10000.0, -2.0 * k / d);
        s = std::sin(arg);
        c = std::cos(arg);
      }
      for (int v = 0; v < cfg.size.height; ++v) {
        out.at(2 * k, v, u) = s;
        out.at(2 * k + 1, v, u) = c;
      }
    }
  }
  return out;
}

FeatureMap vertical_pe(FrameSize size) {
  require(size.valid(), "vertical_pe: invalid frame size");
  const WeightMap lat = latitude_weight_map(size);
  return FeatureMap::from_frame(lat);
}

FeatureMap ope_map(const OpeConfig& cfg) {
  validate(cfg);
  const FeatureMap horizontal = horizontal_pe(cfg);
  const FeatureMap vertical = vertical_pe(cfg.size);

  FeatureMap out(horizontal.channels() + 1, cfg.size);
  for (int c = 0; c < horizontal.channels(); ++c) {
    auto src = horizontal.channel(c);
    auto dst = out.channel(c);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  auto src = vertical.channel(0);
  auto dst = out.channel(horizontal.channels());
  std::copy(src.begin(), src.end(), dst.begin());
  return out;
}

}  // namespace odv
