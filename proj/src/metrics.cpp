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

#include "odv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "odv/kernels.hpp"

namespace odv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_pair(const Frame& x, const Frame& y, const char* what) {
  require(!x.empty() && x.size() == y.size(), what);
}

std::vector<double> squared_diff(const Frame& x, const Frame& y) {
  auto a = x.values(), b = y.values();
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double e = a[i] - b[i];
    d[i] = e * e;
  }
  return d;
}

double mse_to_db(double mse, double peak) {
  if (mse <= 0.0) return kInf;
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace

double psnr(const Frame& x, const Frame& y, double peak) {
  require_pair(x, y, "psnr: shape mismatch");
  require(peak > 0.0, "psnr: peak must be positive");
  return mse_to_db(mean(squared_diff(x, y)), peak);
}

namespace {

constexpr int kWindow = 11;
constexpr int kHalf = kWindow / 2;
constexpr double kSsimC1 = 0.01 * 0.01;  // (K1 * peak)^2
constexpr double kSsimC2 = 0.03 * 0.03;  // (K2 * peak)^2

std::array<double, kWindow> gaussian_window() {
  std::array<double, kWindow> g{};
  constexpr double sigma = 1.5;
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kHalf;
    g[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

// Separable Gaussian filter, horizontal wrap (the ERP seam is continuous on
// the sphere), vertically valid: output is (H-10) x W.
Frame gaussian_valid(const Frame& f) {
  const auto g = gaussian_window();
  const int h = f.height(), w = f.width();
  Frame rows({h, w});
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) {
      double acc = 0.0;
      for (int t = 0; t < kWindow; ++t) acc += g[t] * f.at(v, (u + t - kHalf + w) % w);
      rows.at(v, u) = acc;
    }
  Frame out({h - 2 * kHalf, w});
  for (int v = 0; v < out.height(); ++v)
    for (int u = 0; u < w; ++u) {
      double acc = 0.0;
      for (int t = 0; t < kWindow; ++t) acc += g[t] * rows.at(v + t, u);
      out.at(v, u) = acc;
    }
  return out;
}

Frame hadamard(const Frame& a, const Frame& b) {
  Frame out(a.size());
  auto x = a.values(), y = b.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = x[i] * y[i];
  return out;
}

}  // namespace

Frame ssim_map(const Frame& x, const Frame& y) {
  require_pair(x, y, "ssim: shape mismatch");
  require(std::min(x.height(), x.width()) >= kWindow,
          "ssim: frame smaller than the 11x11 window");

  const Frame mu1 = gaussian_valid(x);
  const Frame mu2 = gaussian_valid(y);
  const Frame xx = gaussian_valid(hadamard(x, x));
  const Frame yy = gaussian_valid(hadamard(y, y));
  const Frame xy = gaussian_valid(hadamard(x, y));

  Frame map(mu1.size());
  for (int v = 0; v < map.height(); ++v) {
    for (int u = 0; u < map.width(); ++u) {
      const double m1 = mu1.at(v, u), m2 = mu2.at(v, u);
      const double s1 = xx.at(v, u) - m1 * m1;
      const double s2 = yy.at(v, u) - m2 * m2;
      const double s12 = xy.at(v, u) - m1 * m2;
      map.at(v, u) = ((2.0 * m1 * m2 + kSsimC1) * (2.0 * s12 + kSsimC2)) /
                     ((m1 * m1 + m2 * m2 + kSsimC1) * (s1 + s2 + kSsimC2));
    }
  }
  return map;
}

double ssim(const Frame& x, const Frame& y) {
  return mean(ssim_map(x, y).values());
}

double weighted_psnr(const Frame& x, const Frame& y, const WeightMap& w, double peak) {
  require_pair(x, y, "weighted_psnr: shape mismatch");
  require(w.size() == x.size(), "weighted_psnr: weight map shape mismatch");
  require(peak > 0.0, "weighted_psnr: peak must be positive");

  const auto d2 = squared_diff(x, y);
  auto ws = w.values();
  std::vector<double> weighted(d2.size());
  for (std::size_t i = 0; i < d2.size(); ++i) weighted[i] = ws[i] * d2[i];
  const double wmse = pairwise_sum(weighted) / pairwise_sum(ws);
  return mse_to_db(wmse, peak);
}

double weighted_ssim(const Frame& x, const Frame& y, const WeightMap& w) {
  require(w.size() == x.size(), "weighted_ssim: weight map shape mismatch");
  const Frame map = ssim_map(x, y);

  // Valid-region pixel (v, u) sits under the window centered at image pixel
  // (v + kHalf, u); weight it by that pixel's weight.
  std::vector<double> weighted(map.size().pixel_count());
  std::vector<double> weights(map.size().pixel_count());
  std::size_t i = 0;
  for (int v = 0; v < map.height(); ++v)
    for (int u = 0; u < map.width(); ++u, ++i) {
      weights[i] = w.at(v + kHalf, u);
      weighted[i] = weights[i] * map.at(v, u);
    }
  return pairwise_sum(weighted) / pairwise_sum(weights);
}

double ws_psnr(const Frame& x, const Frame& y, double peak) {
  require_pair(x, y, "ws_psnr: shape mismatch");
  return weighted_psnr(x, y, latitude_weight_map(x.size()), peak);
}

double ws_ssim(const Frame& x, const Frame& y) {
  require_pair(x, y, "ws_ssim: shape mismatch");
  return weighted_ssim(x, y, latitude_weight_map(x.size()));
}

FlowField block_matching_flow(const Frame& a, const Frame& b, int block, int radius) {
  require_pair(a, b, "block_matching_flow: shape mismatch");
  require(block >= 1, "block_matching_flow: block must be >= 1");
  require(radius >= 0, "block_matching_flow: radius must be >= 0");

  const int h = a.height(), w = a.width();
  FlowField flow(a.size());
  for (int by = 0; by < h; by += block) {
    const int y_end = std::min(by + block, h);
    for (int bx = 0; bx < w; bx += block) {
      const int x_end = std::min(bx + block, w);

      double best_sad = kInf;
      long best_mag = 0;
      int best_du = 0, best_dv = 0;
      for (int dv = -radius; dv <= radius; ++dv) {
        for (int du = -radius; du <= radius; ++du) {
          double sad = 0.0;
          for (int y = by; y < y_end; ++y) {
            const int sy = std::clamp(y + dv, 0, h - 1);
            for (int x = bx; x < x_end; ++x) {
              int sx = (x + du) % w;
              if (sx < 0) sx += w;
              sad += std::abs(b.at(y, x) - a.at(sy, sx));
            }
          }
          const long mag = static_cast<long>(du) * du + static_cast<long>(dv) * dv;
          const bool better =
              sad < best_sad ||
              (sad == best_sad &&
               (mag < best_mag ||
                (mag == best_mag &&
                 (du < best_du || (du == best_du && dv < best_dv)))));
          if (better) {
            best_sad = sad;
            best_mag = mag;
            best_du = du;
            best_dv = dv;
          }
        }
      }
      for (int y = by; y < y_end; ++y)
        for (int x = bx; x < x_end; ++x) {
          flow.du.at(y, x) = best_du;
          flow.dv.at(y, x) = best_dv;
        }
    }
  }
  return flow;
}

double warping_error(const FrameSequence& seq, const std::vector<FlowField>* flows,
                     const std::vector<WeightMap>* masks, int block, int radius) {
  require(seq.size() >= 2, "warping_error: sequence needs at least two frames");
  const std::size_t pairs = seq.size() - 1;
  if (flows) require(flows->size() == pairs, "warping_error: flow count must be n-1");
  if (masks) require(masks->size() == pairs, "warping_error: mask count must be n-1");

  std::vector<double> per_pair(pairs);
  for (std::size_t t = 0; t < pairs; ++t) {
    require(seq[t].size() == seq[t + 1].size(), "warping_error: frame size mismatch");
    const FlowField flow = flows ? (*flows)[t]
                                 : block_matching_flow(seq[t], seq[t + 1], block, radius);
    require(flow.size() == seq[t].size(), "warping_error: flow size mismatch");
    const Frame predicted = warp(seq[t], flow);

    std::vector<double> num(seq[t].size().pixel_count());
    std::vector<double> den;
    auto next = seq[t + 1].values(), pred = predicted.values();
    if (masks) {
      require((*masks)[t].size() == seq[t].size(), "warping_error: mask size mismatch");
      auto m = (*masks)[t].values();
      den.assign(m.begin(), m.end());
      for (std::size_t i = 0; i < num.size(); ++i) {
        const double d = next[i] - pred[i];
        num[i] = m[i] * d * d;
      }
    } else {
      den.assign(num.size(), 1.0);
      for (std::size_t i = 0; i < num.size(); ++i) {
        const double d = next[i] - pred[i];
        num[i] = d * d;
      }
    }
    const double mass = pairwise_sum(den);
    per_pair[t] = mass > 0.0 ? pairwise_sum(num) / mass : 0.0;
  }
  return 1e5 * mean(per_pair);
}

ViewportMetrics viewport_metrics(const Frame& hr, const Frame& sr,
                                 const ViewpointList& vps, double fov,
                                 FrameSize out) {
  require_pair(hr, sr, "viewport_metrics: shape mismatch");
  require(!vps.points.empty(), "viewport_metrics: empty viewpoint list");
  require(vps.top_k >= 1 && vps.top_k <= static_cast<int>(vps.points.size()),
          "viewport_metrics: top_k out of range");

  ViewportMetrics m;
  for (const Viewpoint& vp : vps.points) {
    ViewportSpec spec;
    spec.center = vp.center;
    spec.fov_h = fov;
    spec.fov_v = fov;
    spec.out_size = out;
    const Frame vh = viewport_project(hr, spec);
    const Frame vs = viewport_project(sr, spec);
    m.psnr.push_back(psnr(vh, vs));
    m.ssim.push_back(ssim(vh, vs));
  }
  m.top_k_psnr = mean(std::span<const double>(m.psnr).first(vps.top_k));
  m.top_k_ssim = mean(std::span<const double>(m.ssim).first(vps.top_k));
  return m;
}

MetricReport evaluate_sequences(const FrameSequence& hr, const FrameSequence& sr,
                                const MetricParams& params,
                                const ViewpointList* viewpoints,
                                const std::vector<FlowField>* flows,
                                const std::vector<WeightMap>* masks) {
  require(!hr.empty(), "evaluate_sequences: empty reference sequence");
  require(hr.size() == sr.size(), "evaluate_sequences: sequence length mismatch");

  MetricReport r;
  r.frame_count = static_cast<int>(hr.size());
  r.params = params;
  for (std::size_t t = 0; t < hr.size(); ++t) {
    r.psnr.push_back(psnr(hr[t], sr[t], params.peak));
    r.ssim.push_back(ssim(hr[t], sr[t]));
    r.ws_psnr.push_back(ws_psnr(hr[t], sr[t], params.peak));
    r.ws_ssim.push_back(ws_ssim(hr[t], sr[t]));
  }
  r.psnr_mean = mean(r.psnr);
  r.ssim_mean = mean(r.ssim);
  r.ws_psnr_mean = mean(r.ws_psnr);
  r.ws_ssim_mean = mean(r.ws_ssim);
  if (hr.size() >= 2)
    r.e_warp = warping_error(sr, flows, masks, params.flow_block, params.flow_radius);

  if (viewpoints) {
    ViewportMetrics acc;
    acc.psnr.assign(viewpoints->points.size(), 0.0);
    acc.ssim.assign(viewpoints->points.size(), 0.0);
    std::vector<std::vector<double>> vp_psnr(viewpoints->points.size());
    std::vector<std::vector<double>> vp_ssim(viewpoints->points.size());
    for (std::size_t t = 0; t < hr.size(); ++t) {
      const ViewportMetrics frame_m = viewport_metrics(
          hr[t], sr[t], *viewpoints, params.viewport_fov, params.viewport_size);
      for (std::size_t j = 0; j < frame_m.psnr.size(); ++j) {
        vp_psnr[j].push_back(frame_m.psnr[j]);
        vp_ssim[j].push_back(frame_m.ssim[j]);
      }
    }
    for (std::size_t j = 0; j < vp_psnr.size(); ++j) {
      acc.psnr[j] = mean(vp_psnr[j]);
      acc.ssim[j] = mean(vp_ssim[j]);
    }
    acc.top_k_psnr = mean(std::span<const double>(acc.psnr).first(viewpoints->top_k));
    acc.top_k_ssim = mean(std::span<const double>(acc.ssim).first(viewpoints->top_k));
    r.viewports = std::move(acc);
    r.top_k = viewpoints->top_k;
  }
  return r;
}

}  // namespace odv
