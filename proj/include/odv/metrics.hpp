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

#include <optional>
#include <vector>

#include "odv/core.hpp"
#include "odv/erp_geometry.hpp"

namespace odv {

/// 10*log10(peak^2 / MSE); +infinity when the frames are identical.
double psnr(const Frame& x, const Frame& y, double peak = 1.0);

/// SSIM map: 11x11 Gaussian window, sigma 1.5, K1 = 0.01, K2 = 0.03,
/// peak 1.0. Windows wrap horizontally (ERP seam continuity) and crop to
/// the vertically valid region, so the map is (H-10) x W.
Frame ssim_map(const Frame& x, const Frame& y);

/// Mean of ssim_map. Frames must be at least 11 pixels in each dimension.
double ssim(const Frame& x, const Frame& y);

/// PSNR over a weighted mean square error: WMSE = sum(w * (x-y)^2) / sum(w).
/// Uniform weights reduce to plain psnr.
double weighted_psnr(const Frame& x, const Frame& y, const WeightMap& w,
                     double peak = 1.0);

/// Mean of the SSIM map weighted per pixel; weights are sampled at the
/// window centers of the valid region. Uniform weights reduce to plain ssim.
double weighted_ssim(const Frame& x, const Frame& y, const WeightMap& w);

/// weighted_psnr with the stretching-ratio weights of latitude_weight_map.
double ws_psnr(const Frame& x, const Frame& y, double peak = 1.0);

/// weighted_ssim with the latitude weights.
double ws_ssim(const Frame& x, const Frame& y);

/// Integer block-matching backward flow from a to b: per block, the
/// displacement minimizing SAD( b(p), a(p + d) ) over |du|,|dv| <= radius,
/// horizontal wrap. Ties prefer the smallest |d|^2, then lexicographic
/// (du, dv). The winning displacement is broadcast to the block's pixels.
FlowField block_matching_flow(const Frame& a, const Frame& b, int block = 8,
                              int radius = 4);

/// Flow-compensated temporal error over consecutive pairs:
///   mean_t [ sum_p m_t(p) * (F_{t+1}(p) - warp(F_t, flow_t)(p))^2 / sum_p m_t(p) ]
/// reported scaled by 1e5 (values around 8 on [0,1] video, matching the
/// usual reporting convention). Default masks are all-ones; default flows
/// come from block_matching_flow with the given block/radius.
double warping_error(const FrameSequence& seq,
                     const std::vector<FlowField>* flows = nullptr,
                     const std::vector<WeightMap>* masks = nullptr,
                     int block = 8, int radius = 4);

struct Viewpoint {
  SphericalCoord center{};
  std::optional<double> score;
};

/// Ordered viewpoint centers with the number of leading entries to average.
struct ViewpointList {
  std::vector<Viewpoint> points;
  int top_k = 0;
};

struct ViewportMetrics {
  std::vector<double> psnr;
  std::vector<double> ssim;
  double top_k_psnr = 0.0;
  double top_k_ssim = 0.0;
};

/// Project both frames through identical viewports (square fov, roll 0) and
/// score each; top-k values average the first k list entries.
ViewportMetrics viewport_metrics(const Frame& hr, const Frame& sr,
                                 const ViewpointList& vps, double fov,
                                 FrameSize out);

struct MetricParams {
  double peak = 1.0;
  int flow_block = 8;
  int flow_radius = 4;
  double viewport_fov = kPi / 2.0;       // 90 degrees
  FrameSize viewport_size{480, 480};
};

/// Per-frame and sequence-mean scores for a reference/distorted pair.
struct MetricReport {
  int frame_count = 0;
  std::vector<double> psnr, ssim, ws_psnr, ws_ssim;  // per frame
  double psnr_mean = 0.0, ssim_mean = 0.0, ws_psnr_mean = 0.0, ws_ssim_mean = 0.0;
  std::optional<double> e_warp;  // absent for single-frame sequences
  std::optional<ViewportMetrics> viewports;
  int top_k = 0;
  MetricParams params;
};

/// Full evaluation of an HR/SR sequence pair. Optional external flows/masks
/// feed the warping error; an optional viewpoint list adds the per-viewport
/// section (per-frame viewport scores averaged across frames).
MetricReport evaluate_sequences(const FrameSequence& hr, const FrameSequence& sr,
                                const MetricParams& params = {},
                                const ViewpointList* viewpoints = nullptr,
                                const std::vector<FlowField>* flows = nullptr,
                                const std::vector<WeightMap>* masks = nullptr);

}  // namespace odv
