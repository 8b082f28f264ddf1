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

// Batch CLI for ERP dataset preparation and evaluation. Subcommands map to
// the library surface: weights | ope | degrade | metrics | viewport | seam |
// flow | imfr | loss. Exit codes: 0 success, 1 validation error, 2 I/O
// error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "odv/erp_geometry.hpp"
#include "odv/imfr.hpp"
#include "odv/io/flow_io.hpp"
#include "odv/io/image_io.hpp"
#include "odv/io/manifest.hpp"
#include "odv/io/report.hpp"
#include "odv/kernels.hpp"
#include "odv/lsa_loss.hpp"
#include "odv/metrics.hpp"
#include "odv/ope.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json round6(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::strtod(buf, nullptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw odv::io::IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw odv::io::IoError("write failed: " + path.string());
}

odv::io::LumaCoefficients parse_luma(const std::string& name) {
  if (name == "bt601") return odv::io::LumaCoefficients::bt601;
  if (name == "bt709") return odv::io::LumaCoefficients::bt709;
  odv::fail("unknown luma mode '" + name + "' (expected bt601 or bt709)");
}

odv::Frame load_single_image(const fs::path& path) {
  return odv::io::load_png(path);
}

struct WeightsArgs {
  int height = 0, width = 0;
  std::string saliency;
  std::string out_prefix = "weights";
};

int run_weights(const WeightsArgs& a) {
  const odv::WeightMap lat = odv::latitude_weight_map({a.height, a.width});
  odv::io::save_png16(a.out_prefix + "_wlat.png", lat);
  odv::io::save_tensor(a.out_prefix + "_wlat.odvt", odv::FeatureMap::from_frame(lat));

  ordered_json stats;
  stats["height"] = a.height;
  stats["width"] = a.width;
  ordered_json rows = ordered_json::array();
  for (int v = 0; v < a.height; ++v) rows.push_back(round6(lat.at(v, 0)));
  stats["wlat_rows"] = rows;
  stats["wlat_min"] = round6(lat.at(0, 0));
  stats["wlat_max"] = round6(lat.at(a.height / 2, 0));

  if (!a.saliency.empty()) {
    odv::io::SequenceManifest m;
    m.saliency = {fs::path(a.saliency)};
    if (!fs::exists(a.saliency))
      odv::fail("saliency: missing file " + a.saliency);
    const odv::WeightMap sal = odv::io::load_saliency(m).front();
    odv::require(sal.size() == lat.size(),
                 "saliency map dimensions must match --height/--width");
    odv::io::save_png16(a.out_prefix + "_wsal.png", sal);
    odv::io::save_tensor(a.out_prefix + "_wsal.odvt", odv::FeatureMap::from_frame(sal));
    double lo = 1.0, hi = 0.0;
    for (double x : sal.values()) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    stats["wsal_min"] = round6(lo);
    stats["wsal_max"] = round6(hi);
  }
  std::cout << stats.dump(2) << "\n";
  return 0;
}

struct OpeArgs {
  int d = 4;
  int height = 0, width = 0;
  bool literal = false;
  std::string out = "ope.odvt";
  std::string png_prefix;
};

int run_ope(const OpeArgs& a) {
  odv::OpeConfig cfg;
  cfg.pair_count = a.d;
  cfg.size = {a.height, a.width};
  cfg.mode = a.literal ? odv::OpeFrequencyMode::literal
                       : odv::OpeFrequencyMode::integer_cycles;
  const odv::FeatureMap map = odv::ope_map(cfg);
  odv::io::save_tensor(a.out, map);

  if (!a.png_prefix.empty()) {
    for (int c = 0; c < map.channels(); ++c) {
      odv::Frame plane = map.to_frame(c);
      for (double& x : plane.values()) x = 0.5 * (x + 1.0);  // [-1,1] -> [0,1]
      char name[32];
      std::snprintf(name, sizeof name, "_ch%03d.png", c);
      odv::io::save_png16(a.png_prefix + name, plane);
    }
  }
  std::cout << "wrote " << map.channels() << " channels (" << a.height << "x"
            << a.width << ") to " << a.out << "\n";
  return 0;
}

struct DegradeArgs {
  std::string manifest;
  double scale = 0.25;
  std::string out_dir;
  std::string luma = "bt601";
};

int run_degrade(const DegradeArgs& a) {
  const auto manifest = odv::io::SequenceManifest::load(a.manifest);
  const odv::FrameSequence seq = odv::io::load_sequence(manifest, parse_luma(a.luma));

  fs::create_directories(a.out_dir);
  odv::io::SequenceManifest out = manifest;
  out.frames.clear();
  odv::FrameSize out_size{};
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const odv::Frame lr = odv::bicubic_resize(seq[t], a.scale);
    out_size = lr.size();
    char name[32];
    const bool png = manifest.format == odv::io::SequenceManifest::PixelFormat::png8;
    std::snprintf(name, sizeof name, "frame_%04zu.%s", t, png ? "png" : "raw");
    const fs::path p = fs::path(a.out_dir) / name;
    if (png)
      odv::io::save_png8(p, lr);
    else
      odv::io::save_raw8(p, lr);
    out.frames.push_back(p);
  }
  out.raw_size = out_size;
  out.saliency.clear();
  out.flows.clear();
  out.masks.clear();
  out.save(fs::path(a.out_dir) / "manifest.json");
  std::cout << "wrote " << seq.size() << " frames at " << out_size.height << "x"
            << out_size.width << " to " << a.out_dir << "\n";
  return 0;
}

struct MetricsArgs {
  std::string hr, sr;
  std::string report;
  std::string csv;
  std::string luma = "bt601";
  int block = 8, radius = 4;
  double fov_deg = 90.0;
  int vp_size = 480;
  int k = 0;  // 0: use the list's own k
};

int run_metrics(const MetricsArgs& a) {
  const auto hr_manifest = odv::io::SequenceManifest::load(a.hr);
  const auto sr_manifest = odv::io::SequenceManifest::load(a.sr);
  const auto luma = parse_luma(a.luma);
  const odv::FrameSequence hr = odv::io::load_sequence(hr_manifest, luma);
  const odv::FrameSequence sr = odv::io::load_sequence(sr_manifest, luma);
  odv::require(hr.size() == sr.size(), "hr and sr sequences must have equal length");
  odv::require(hr.front().size() == sr.front().size(),
               "hr and sr frames must have equal dimensions");

  odv::MetricParams params;
  params.flow_block = a.block;
  params.flow_radius = a.radius;
  params.viewport_fov = a.fov_deg * odv::kPi / 180.0;
  params.viewport_size = {a.vp_size, a.vp_size};

  std::optional<odv::ViewpointList> vps;
  if (sr_manifest.viewpoints || hr_manifest.viewpoints) {
    vps = odv::io::load_viewpoints(sr_manifest.viewpoints ? *sr_manifest.viewpoints
                                                          : *hr_manifest.viewpoints);
    if (a.k > 0) {
      odv::require(a.k <= static_cast<int>(vps->points.size()),
                   "--k exceeds the viewpoint list length");
      vps->top_k = a.k;
    }
  }

  std::optional<std::vector<odv::FlowField>> flows;
  if (!sr_manifest.flows.empty()) flows = odv::io::load_flows(sr_manifest);
  std::optional<std::vector<odv::WeightMap>> masks;
  if (!sr_manifest.masks.empty()) masks = odv::io::load_masks(sr_manifest);

  const odv::MetricReport r = odv::evaluate_sequences(
      hr, sr, params, vps ? &*vps : nullptr, flows ? &*flows : nullptr,
      masks ? &*masks : nullptr);

  const std::string json_text = odv::io::format_report(r, odv::io::ReportFormat::json);
  if (!a.report.empty())
    write_text(a.report, json_text);
  else
    std::cout << json_text;
  if (!a.csv.empty())
    write_text(a.csv, odv::io::format_report(r, odv::io::ReportFormat::csv));
  return 0;
}

struct ViewportArgs {
  std::string input;
  double theta_deg = 180.0, phi_deg = 0.0, roll_deg = 0.0;
  double fov_h_deg = 90.0, fov_v_deg = 90.0;
  int height = 480, width = 480;
  std::string out = "viewport.png";
};

int run_viewport(const ViewportArgs& a) {
  const odv::Frame f = load_single_image(a.input);
  odv::ViewportSpec vp;
  vp.center = {a.theta_deg * odv::kPi / 180.0, a.phi_deg * odv::kPi / 180.0};
  vp.fov_h = a.fov_h_deg * odv::kPi / 180.0;
  vp.fov_v = a.fov_v_deg * odv::kPi / 180.0;
  vp.out_size = {a.height, a.width};
  vp.roll = a.roll_deg * odv::kPi / 180.0;
  odv::io::save_png8(a.out, odv::viewport_project(f, vp));
  std::cout << "wrote " << a.out << "\n";
  return 0;
}

struct SeamArgs {
  std::string input;
  double fov_deg = 90.0;
  int size = 480;
  std::string out = "seam.png";
};

int run_seam(const SeamArgs& a) {
  const odv::Frame f = load_single_image(a.input);
  const odv::Frame stitched =
      odv::seam_stitch(f, a.fov_deg * odv::kPi / 180.0, {a.size, a.size});
  odv::io::save_png8(a.out, stitched);

  ordered_json j;
  j["erp_seam_score"] = round6(odv::seam_discontinuity_score(f));
  j["stitched_view_score"] = round6(odv::seam_discontinuity_score(stitched));
  j["output"] = a.out;
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct FlowArgs {
  std::string manifest;
  int block = 8, radius = 4;
  std::string out_dir = ".";
  std::string luma = "bt601";
};

int run_flow(const FlowArgs& a) {
  const auto manifest = odv::io::SequenceManifest::load(a.manifest);
  const odv::FrameSequence seq = odv::io::load_sequence(manifest, parse_luma(a.luma));
  odv::require(seq.size() >= 2, "flow: need at least two frames");

  fs::create_directories(a.out_dir);
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    const odv::FlowField flow =
        odv::block_matching_flow(seq[t], seq[t + 1], a.block, a.radius);
    char name[32];
    std::snprintf(name, sizeof name, "flow_%04zu.odvf", t);
    odv::io::save_flow(fs::path(a.out_dir) / name, flow);
  }
  std::cout << "wrote " << seq.size() - 1 << " flow fields to " << a.out_dir << "\n";
  return 0;
}

struct ImfrArgs {
  std::vector<std::string> features;  // one ODVT per frame, 3C channels
  std::vector<std::string> wp, wn;    // one ODVT per frame each (raw weights)
  double alpha1 = 0.01, beta1 = 0.01;
  bool no_normalize = false;
  std::string out_dir = ".";
};

int run_imfr(const ImfrArgs& a) {
  odv::require(!a.features.empty(), "imfr: at least one feature stack required");
  odv::require(a.wp.size() == a.features.size() && a.wn.size() == a.features.size(),
               "imfr: need one raw wP and wN stack per frame");

  std::vector<odv::FeatureMap> seq;
  std::vector<std::pair<odv::FeatureMap, odv::FeatureMap>> weights;
  for (std::size_t i = 0; i < a.features.size(); ++i) {
    seq.push_back(odv::io::load_tensor(a.features[i]));
    weights.emplace_back(odv::io::load_tensor(a.wp[i]), odv::io::load_tensor(a.wn[i]));
  }

  odv::ImfrConfig cfg;
  cfg.alpha1 = a.alpha1;
  cfg.beta1 = a.beta1;
  cfg.normalize = !a.no_normalize;
  const auto out = odv::imfr_pipeline(seq, weights, cfg);

  fs::create_directories(a.out_dir);
  for (std::size_t i = 0; i < out.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "fused_%04zu.odvt", i);
    odv::io::save_tensor(fs::path(a.out_dir) / name, out[i]);
  }
  std::cout << "wrote " << out.size() << " fused stacks to " << a.out_dir << "\n";
  return 0;
}

struct LossArgs {
  std::string hr, sr;
  std::string saliency;
  double epsilon = 1e-3, alpha2 = 0.1, beta2 = 0.1;
};

int run_loss(const LossArgs& a) {
  const odv::Frame hr = load_single_image(a.hr);
  const odv::Frame sr = load_single_image(a.sr);
  odv::require(hr.size() == sr.size(), "loss: hr and sr dimensions differ");

  const odv::WeightMap lat = odv::latitude_weight_map(hr.size());
  odv::WeightMap sal(hr.size(), 0.0);
  if (!a.saliency.empty()) {
    odv::io::SequenceManifest m;
    m.saliency = {fs::path(a.saliency)};
    if (!fs::exists(a.saliency)) odv::fail("saliency: missing file " + a.saliency);
    sal = odv::io::load_saliency(m).front();
    odv::require(sal.size() == hr.size(), "loss: saliency dimensions differ");
  }

  const odv::LossConfig cfg{a.epsilon, a.alpha2, a.beta2};
  const odv::LossBreakdown b = odv::lsa_total(hr, sr, lat, sal, cfg);
  ordered_json j;
  j["charbonnier"] = round6(b.charbonnier);
  j["l_lat"] = round6(b.latitude_term);
  j["l_sal"] = round6(b.saliency_term);
  j["total"] = round6(b.total);
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odvkit: ERP 360-video geometry, reconstruction kernels, and quality metrics"};
  app.require_subcommand(1);

  WeightsArgs weights_args;
  auto* weights = app.add_subcommand("weights", "Emit the latitude weight map (and a saliency map) as 16-bit PNG + ODVT");
  weights->add_option("--height", weights_args.height, "ERP height")->required();
  weights->add_option("--width", weights_args.width, "ERP width")->required();
  weights->add_option("--saliency", weights_args.saliency, "Saliency PNG to ingest");
  weights->add_option("--out-prefix", weights_args.out_prefix, "Output path prefix");

  OpeArgs ope_args;
  auto* ope = app.add_subcommand("ope", "Emit the omni-positional encoding stack");
  ope->add_option("--d", ope_args.d, "Frequency pair count (half the horizontal dims)");
  ope->add_option("--height", ope_args.height, "Rows")->required();
  ope->add_option("--width", ope_args.width, "Columns")->required();
  ope->add_flag("--literal", ope_args.literal, "Use the non-periodic literal form");
  ope->add_option("--out", ope_args.out, "Output ODVT path");
  ope->add_option("--png-prefix", ope_args.png_prefix, "Also write per-channel PNGs");

  DegradeArgs degrade_args;
  auto* degrade = app.add_subcommand("degrade", "Bicubic-rescale a sequence (dataset preparation)");
  degrade->add_option("--manifest", degrade_args.manifest, "Input manifest JSON")->required();
  degrade->add_option("--scale", degrade_args.scale, "Scale factor (0.25 = x4 down)")->required();
  degrade->add_option("--out-dir", degrade_args.out_dir, "Output directory")->required();
  degrade->add_option("--luma", degrade_args.luma, "bt601 | bt709");

  MetricsArgs metrics_args;
  auto* metrics = app.add_subcommand("metrics", "Full-reference quality report for an HR/SR pair");
  metrics->add_option("--hr", metrics_args.hr, "Reference manifest")->required();
  metrics->add_option("--sr", metrics_args.sr, "Distorted manifest")->required();
  metrics->add_option("--report", metrics_args.report, "JSON report path (default stdout)");
  metrics->add_option("--csv", metrics_args.csv, "CSV report path");
  metrics->add_option("--luma", metrics_args.luma, "bt601 | bt709");
  metrics->add_option("--block", metrics_args.block, "Block-matching block size");
  metrics->add_option("--radius", metrics_args.radius, "Block-matching search radius");
  metrics->add_option("--fov", metrics_args.fov_deg, "Viewport field of view (degrees)");
  metrics->add_option("--vp-size", metrics_args.vp_size, "Viewport raster size");
  metrics->add_option("--k", metrics_args.k, "Top-k viewpoints to average");

  ViewportArgs viewport_args;
  auto* viewport = app.add_subcommand("viewport", "Rectilinear projection of an ERP frame");
  viewport->add_option("--input", viewport_args.input, "ERP PNG")->required();
  viewport->add_option("--theta", viewport_args.theta_deg, "Center longitude (degrees)");
  viewport->add_option("--phi", viewport_args.phi_deg, "Center latitude (degrees)");
  viewport->add_option("--roll", viewport_args.roll_deg, "Roll (degrees)");
  viewport->add_option("--fov-h", viewport_args.fov_h_deg, "Horizontal FOV (degrees)");
  viewport->add_option("--fov-v", viewport_args.fov_v_deg, "Vertical FOV (degrees)");
  viewport->add_option("--height", viewport_args.height, "Output rows");
  viewport->add_option("--width", viewport_args.width, "Output columns");
  viewport->add_option("--out", viewport_args.out, "Output PNG");

  SeamArgs seam_args;
  auto* seam = app.add_subcommand("seam", "Stitch the wrap boundary into a perspective view and score it");
  seam->add_option("--input", seam_args.input, "ERP PNG")->required();
  seam->add_option("--fov", seam_args.fov_deg, "FOV (degrees)");
  seam->add_option("--size", seam_args.size, "Output raster size");
  seam->add_option("--out", seam_args.out, "Output PNG");

  FlowArgs flow_args;
  auto* flow = app.add_subcommand("flow", "Block-matching flow for consecutive frame pairs");
  flow->add_option("--manifest", flow_args.manifest, "Sequence manifest")->required();
  flow->add_option("--block", flow_args.block, "Block size");
  flow->add_option("--radius", flow_args.radius, "Search radius");
  flow->add_option("--out-dir", flow_args.out_dir, "Output directory");
  flow->add_option("--luma", flow_args.luma, "bt601 | bt709");

  ImfrArgs imfr_args;
  auto* imfr = app.add_subcommand("imfr", "Interlaced multi-frame fusion over ODVT stacks");
  imfr->add_option("--features", imfr_args.features, "Per-frame 3C-channel ODVT stacks")->required();
  imfr->add_option("--wp", imfr_args.wp, "Per-frame raw wP ODVT stacks")->required();
  imfr->add_option("--wn", imfr_args.wn, "Per-frame raw wN ODVT stacks")->required();
  imfr->add_option("--alpha1", imfr_args.alpha1, "Fusion weight alpha1");
  imfr->add_option("--beta1", imfr_args.beta1, "Fusion weight beta1");
  imfr->add_flag("--no-normalize", imfr_args.no_normalize, "Skip fusion normalization");
  imfr->add_option("--out-dir", imfr_args.out_dir, "Output directory");

  LossArgs loss_args;
  auto* loss = app.add_subcommand("loss", "Latitude-saliency adaptive loss breakdown");
  loss->add_option("--hr", loss_args.hr, "Reference PNG")->required();
  loss->add_option("--sr", loss_args.sr, "Reconstruction PNG")->required();
  loss->add_option("--saliency", loss_args.saliency, "Saliency PNG");
  loss->add_option("--epsilon", loss_args.epsilon, "Charbonnier constant");
  loss->add_option("--alpha2", loss_args.alpha2, "Latitude term weight");
  loss->add_option("--beta2", loss_args.beta2, "Saliency term weight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // command-line misuse is a validation error
  }

  try {
    if (weights->parsed()) return run_weights(weights_args);
    if (ope->parsed()) return run_ope(ope_args);
    if (degrade->parsed()) return run_degrade(degrade_args);
    if (metrics->parsed()) return run_metrics(metrics_args);
    if (viewport->parsed()) return run_viewport(viewport_args);
    if (seam->parsed()) return run_seam(seam_args);
    if (flow->parsed()) return run_flow(flow_args);
    if (imfr->parsed()) return run_imfr(imfr_args);
    if (loss->parsed()) return run_loss(loss_args);
  } catch (const odv::io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
