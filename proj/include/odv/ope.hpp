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

#include <vector>

#include "odv/core.hpp"

namespace odv {

/// How horizontal encoding frequencies are derived from the geometric
/// 1/10000^(2k/d) ladder.
///   integer_cycles: frequencies quantized to whole cycles per revolution,
///     so every channel closes exactly across the wrap seam (default).
///   literal: the transformer form sin(u / 10000^(2k/d)) on the raw column
///     coordinate; not periodic in u, kept for comparison.
enum class OpeFrequencyMode { integer_cycles, literal };

struct OpeConfig {
  int pair_count = 1;  // d: number of (sin, cos) channel pairs
  FrameSize size{};
  OpeFrequencyMode mode = OpeFrequencyMode::integer_cycles;
};

/// Integer cycles-per-revolution for each of the d pairs:
/// max(1, round(10000^(-2k/d) * W / (2*pi))).
std::vector<long> ope_frequencies(int pair_count, int width);

/// Value of horizontal channel `channel` (2k = sin, 2k+1 = cos of pair k) at
/// continuous column coordinate u. In integer_cycles mode the value is an
/// exact function of (u + 0.5) mod W, so u and u + W agree bit-for-bit.
double horizontal_pe_at(const OpeConfig& cfg, int channel, double u);

/// 2d-channel map of the horizontal encoding; rows are identical.
FeatureMap horizontal_pe(const OpeConfig& cfg);

/// Single cosine-of-latitude channel; equals latitude_weight_map row-for-row.
FeatureMap vertical_pe(FrameSize size);

/// Concatenation [horizontal (2d channels), vertical (1 channel)].
FeatureMap ope_map(const OpeConfig& cfg);

}  // namespace odv
