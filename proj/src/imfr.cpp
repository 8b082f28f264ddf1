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

#include "odv/imfr.hpp"

#include <algorithm>
#include <cmath>

namespace odv {

namespace {

void require_same_shape(const FeatureMap& a, const FeatureMap& b, const char* what) {
  require(a.channels() == b.channels() && a.size() == b.size(), what);
}

}  // namespace

InterlacedSequences split_interlaced(const std::vector<FeatureMap>& seq) {
  require(!seq.empty(), "split_interlaced: empty sequence");
  const int total = seq.front().channels();
  require(total % 3 == 0, "split_interlaced: channel count not divisible by 3");
  const int c = total / 3;
  const FrameSize size = seq.front().size();

  InterlacedSequences out;
  out.prev.reserve(seq.size());
  out.curr.reserve(seq.size());
  out.next.reserve(seq.size());
  for (const FeatureMap& frame : seq) {
    require(frame.channels() == total && frame.size() == size,
            "split_interlaced: frames must share channel count and shape");
    FeatureMap p(c, size), q(c, size), n(c, size);
    for (int ch = 0; ch < c; ++ch) {
      auto copy_channel = [&](const FeatureMap& src_map, int src_c, FeatureMap& dst) {
        auto src = src_map.channel(src_c);
        auto dst_span = dst.channel(ch);
        std::copy(src.begin(), src.end(), dst_span.begin());
      };
      copy_channel(frame, ch, p);
      copy_channel(frame, c + ch, q);
      copy_channel(frame, 2 * c + ch, n);
    }
    out.prev.push_back(std::move(p));
    out.curr.push_back(std::move(q));
    out.next.push_back(std::move(n));
  }
  return out;
}

const FeatureMap& clamped_at(const std::vector<FeatureMap>& seq, long i) {
  require(!seq.empty(), "clamped_at: empty sequence");
  const long last = static_cast<long>(seq.size()) - 1;
  return seq[static_cast<std::size_t>(std::clamp(i, 0L, last))];
}

FeatureMap constrain_weights(const FeatureMap& raw) {
  FeatureMap out(raw.channels(), raw.size());
  auto src = raw.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double x = src[i];
    const double sig = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                                : std::exp(x) / (1.0 + std::exp(x));
    dst[i] = 0.5 * sig;
  }
  return out;
}

FeatureMap mfr_combine(const FeatureMap& prev, const FeatureMap& curr,
                       const FeatureMap& next, const FeatureMap& wp,
                       const FeatureMap& wn) {
  require_same_shape(prev, curr, "mfr_combine: prev/curr shape mismatch");
  require_same_shape(next, curr, "mfr_combine: next/curr shape mismatch");
  require_same_shape(wp, curr, "mfr_combine: wP shape mismatch");
  require_same_shape(wn, curr, "mfr_combine: wN shape mismatch");
  for (double w : wp.values())
    require(w >= 0.0 && w <= 0.5, "mfr_combine: wP outside [0, 0.5]");
  for (double w : wn.values())
    require(w >= 0.0 && w <= 0.5, "mfr_combine: wN outside [0, 0.5]");

  FeatureMap out(curr.channels(), curr.size());
  auto p = prev.values(), q = curr.values(), n = next.values();
  auto a = wp.values(), b = wn.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = (1.0 - a[i] - b[i]) * q[i] + a[i] * p[i] + b[i] * n[i];
  return out;
}

FeatureMap fuse(const FeatureMap& prev_next, const FeatureMap& curr,
                const FeatureMap& next_prev, const ImfrConfig& cfg) {
  require(cfg.alpha1 >= 0.0 && cfg.beta1 >= 0.0,
          "fuse: alpha1 and beta1 must be non-negative");
  require_same_shape(prev_next, curr, "fuse: prev/curr shape mismatch");
  require_same_shape(next_prev, curr, "fuse: next/curr shape mismatch");

  const double denom = cfg.normalize ? 1.0 + cfg.alpha1 + cfg.beta1 : 1.0;
  FeatureMap out(curr.channels(), curr.size());
  auto p = prev_next.values(), q = curr.values(), n = next_prev.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = (cfg.alpha1 * p[i] + q[i] + cfg.beta1 * n[i]) / denom;
  return out;
}

std::vector<FeatureMap> imfr_pipeline(
    const std::vector<FeatureMap>& seq,
    const std::vector<std::pair<FeatureMap, FeatureMap>>& raw_weights,
    const ImfrConfig& cfg) {
  require(raw_weights.size() == seq.size(),
          "imfr_pipeline: one raw weight pair per frame required");

  const InterlacedSequences streams = split_interlaced(seq);
  const long n = static_cast<long>(streams.length());

  std::vector<FeatureMap> combined;
  combined.reserve(n);
  for (long i = 0; i < n; ++i) {
    const FeatureMap wp = constrain_weights(raw_weights[i].first);
    const FeatureMap wn = constrain_weights(raw_weights[i].second);
    combined.push_back(
        mfr_combine(streams.prev[i], streams.curr[i], streams.next[i], wp, wn));
  }

  std::vector<FeatureMap> out;
  out.reserve(n);
  for (long i = 0; i < n; ++i)
    out.push_back(fuse(clamped_at(streams.prev, i + 1), combined[i],
                       clamped_at(streams.next, i - 1), cfg));
  return out;
}

}  // namespace odv
