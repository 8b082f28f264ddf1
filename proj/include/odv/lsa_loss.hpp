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

#include "odv/core.hpp"

namespace odv {

struct LossConfig {
  double epsilon = 1e-3;  // Charbonnier smoothing constant
  double alpha2 = 0.1;    // latitude-term weight
  double beta2 = 0.1;     // saliency-term weight
};

struct LossBreakdown {
  double charbonnier = 0.0;
  double latitude_term = 0.0;
  double saliency_term = 0.0;
  double total = 0.0;
};

/// Per-pixel Charbonnier mean: mean over pixels of
/// sqrt((hr - sr)^2 + epsilon^2). `per_pixel = false` switches to the
/// global-norm reading sqrt(sum((hr - sr)^2) + epsilon^2).
double charbonnier(const Frame& hr, const Frame& sr, double epsilon,
                   bool per_pixel = true);

/// Mean over pixels of w * |hr - sr|.
double weighted_l1(const Frame& hr, const Frame& sr, const WeightMap& w);

/// charbonnier + alpha2 * weighted_l1(w_lat) + beta2 * weighted_l1(w_sal),
/// all terms matrix-averaged so they share one scale.
LossBreakdown lsa_total(const Frame& hr, const Frame& sr, const WeightMap& w_lat,
                        const WeightMap& w_sal, const LossConfig& cfg);

/// Analytic per-pixel d(total)/d(sr):
///   [ (sr-hr)/sqrt((hr-sr)^2+eps^2)
///     + (alpha2*w_lat + beta2*w_sal) * sign(sr-hr) ] / N
/// with sign(0) = 0.
Frame lsa_gradient(const Frame& hr, const Frame& sr, const WeightMap& w_lat,
                   const WeightMap& w_sal, const LossConfig& cfg);

}  // namespace odv
