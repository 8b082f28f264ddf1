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

#include <utility>
#include <vector>

#include "odv/core.hpp"

namespace odv {

/// Channel-tripled features split along the temporal axis into previous /
/// current / next subsequences of equal length and shape.
struct InterlacedSequences {
  std::vector<FeatureMap> prev;
  std::vector<FeatureMap> curr;
  std::vector<FeatureMap> next;

  [[nodiscard]] std::size_t length() const { return curr.size(); }
};

struct ImfrConfig {
  double alpha1 = 0.01;  // fusion weight on next target's previous stream
  double beta1 = 0.01;   // fusion weight on previous target's next stream
  bool normalize = true;
};

/// Channels [0,C) -> prev, [C,2C) -> curr, [2C,3C) -> next, per frame.
/// Lossless partition; channel count must be divisible by 3.
InterlacedSequences split_interlaced(const std::vector<FeatureMap>& seq);

/// Replication padding realized as clamped indexing: out-of-range frame
/// indices resolve to the first / last frame. Lengths stay unchanged.
const FeatureMap& clamped_at(const std::vector<FeatureMap>& seq, long i);

/// 0.5 * sigmoid(raw); all outputs in (0, 0.5).
FeatureMap constrain_weights(const FeatureMap& raw);

/// Per-pixel convex combination
///   (1 - wP - wN) * curr + wP * prev + wN * next,
/// with wP, wN in [0, 0.5].
FeatureMap mfr_combine(const FeatureMap& prev, const FeatureMap& curr,
                       const FeatureMap& next, const FeatureMap& wp,
                       const FeatureMap& wn);

/// Temporal smoothing across the three streams:
///   raw = alpha1 * prev_next + curr + beta1 * next_prev,
/// divided by (1 + alpha1 + beta1) when cfg.normalize so constants pass
/// through unchanged.
FeatureMap fuse(const FeatureMap& prev_next, const FeatureMap& curr,
                const FeatureMap& next_prev, const ImfrConfig& cfg);

/// Full schedule: split -> constrain raw weights -> combine per frame ->
/// fuse frame i with prev[i+1] and next[i-1] (clamped at the ends).
/// raw_weights supplies one (wP, wN) pre-activation pair per frame.
std::vector<FeatureMap> imfr_pipeline(
    const std::vector<FeatureMap>& seq,
    const std::vector<std::pair<FeatureMap, FeatureMap>>& raw_weights,
    const ImfrConfig& cfg);

}  // namespace odv
