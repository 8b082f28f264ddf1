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

#include "odv/lsa_loss.hpp"

#include <cmath>

namespace odv {

namespace {

void require_same_size(const Frame& a, const Frame& b, const char* what) {
  require(a.size() == b.size() && !a.empty(), what);
}

double sign(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return 0.0;
}

}  // namespace

double charbonnier(const Frame& hr, const Frame& sr, double epsilon, bool per_pixel) {
  require_same_size(hr, sr, "charbonnier: shape mismatch");
  require(epsilon > 0.0, "charbonnier: epsilon must be positive");

  auto a = hr.values(), b = sr.values();
  const double eps2 = epsilon * epsilon;
  std::vector<double> terms(a.size());
  if (per_pixel) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      terms[i] = std::sqrt(d * d + eps2);
    }
    return mean(terms);
  }
  // Global-norm variant: one sqrt over the whole squared error norm.
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    terms[i] = d * d;
  }
  return std::sqrt(pairwise_sum(terms) + eps2);
}

double weighted_l1(const Frame& hr, const Frame& sr, const WeightMap& w) {
  require_same_size(hr, sr, "weighted_l1: hr/sr shape mismatch");
  require_same_size(hr, w, "weighted_l1: weight map shape mismatch");

  auto a = hr.values(), b = sr.values(), ws = w.values();
  std::vector<double> terms(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    terms[i] = ws[i] * std::abs(a[i] - b[i]);
  return mean(terms);
}

LossBreakdown lsa_total(const Frame& hr, const Frame& sr, const WeightMap& w_lat,
                        const WeightMap& w_sal, const LossConfig& cfg) {
  require(cfg.alpha2 >= 0.0 && cfg.beta2 >= 0.0,
          "lsa_total: alpha2 and beta2 must be non-negative");
  LossBreakdown out;
  out.charbonnier = charbonnier(hr, sr, cfg.epsilon);
  out.latitude_term = weighted_l1(hr, sr, w_lat);
  out.saliency_term = weighted_l1(hr, sr, w_sal);
  out.total = out.charbonnier + cfg.alpha2 * out.latitude_term +
              cfg.beta2 * out.saliency_term;
  return out;
}

Frame lsa_gradient(const Frame& hr, const Frame& sr, const WeightMap& w_lat,
                   const WeightMap& w_sal, const LossConfig& cfg) {
  require_same_size(hr, sr, "lsa_gradient: hr/sr shape mismatch");
  require_same_size(hr, w_lat, "lsa_gradient: latitude map shape mismatch");
  require_same_size(hr, w_sal, "lsa_gradient: saliency map shape mismatch");
  require(cfg.epsilon > 0.0, "lsa_gradient: epsilon must be positive");

  const double n = static_cast<double>(hr.size().pixel_count());
  const double eps2 = cfg.epsilon * cfg.epsilon;
  Frame out(hr.size());
  auto a = hr.values(), b = sr.values();
  auto lat = w_lat.values(), sal = w_sal.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double d = b[i] - a[i];  // sr - hr
    const double charb = d / std::sqrt(d * d + eps2);
    const double l1 = (cfg.alpha2 * lat[i] + cfg.beta2 * sal[i]) * sign(d);
    dst[i] = (charb + l1) / n;
  }
  return out;
}

}  // namespace odv
