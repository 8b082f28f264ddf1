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

#include "odv/io/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "odv/io/image_io.hpp"

namespace odv::io {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Six significant digits; infinities become the string "inf".
ordered_json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::strtod(buf, nullptr);
}

ordered_json number_list(const std::vector<double>& xs) {
  ordered_json arr = ordered_json::array();
  for (double x : xs) arr.push_back(number(x));
  return arr;
}

std::string csv_cell(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string to_json_text(const MetricReport& r) {
  ordered_json j;
  j["schema"] = 1;
  j["frame_count"] = r.frame_count;

  ordered_json params;
  params["peak"] = number(r.params.peak);
  params["flow_block"] = r.params.flow_block;
  params["flow_radius"] = r.params.flow_radius;
  params["viewport_fov"] = number(r.params.viewport_fov);
  params["viewport_height"] = r.params.viewport_size.height;
  params["viewport_width"] = r.params.viewport_size.width;
  j["params"] = params;

  ordered_json frames;
  frames["psnr"] = number_list(r.psnr);
  frames["ssim"] = number_list(r.ssim);
  frames["ws_psnr"] = number_list(r.ws_psnr);
  frames["ws_ssim"] = number_list(r.ws_ssim);
  j["per_frame"] = frames;

  ordered_json means;
  means["psnr"] = number(r.psnr_mean);
  means["ssim"] = number(r.ssim_mean);
  means["ws_psnr"] = number(r.ws_psnr_mean);
  means["ws_ssim"] = number(r.ws_ssim_mean);
  j["mean"] = means;

  j["e_warp"] = r.e_warp ? number(*r.e_warp) : ordered_json(nullptr);

  if (r.viewports) {
    ordered_json vp;
    vp["psnr"] = number_list(r.viewports->psnr);
    vp["ssim"] = number_list(r.viewports->ssim);
    vp["k"] = r.top_k;
    vp["top_k_psnr"] = number(r.viewports->top_k_psnr);
    vp["top_k_ssim"] = number(r.viewports->top_k_ssim);
    j["viewports"] = vp;
  }
  return j.dump(2) + "\n";
}

std::string to_csv_text(const MetricReport& r) {
  std::ostringstream out;
  out << "frame,psnr,ssim,ws_psnr,ws_ssim,e_warp\n";
  for (int t = 0; t < r.frame_count; ++t) {
    out << t << ',' << csv_cell(r.psnr[t]) << ',' << csv_cell(r.ssim[t]) << ','
        << csv_cell(r.ws_psnr[t]) << ',' << csv_cell(r.ws_ssim[t]) << ",\n";
  }
  out << "mean," << csv_cell(r.psnr_mean) << ',' << csv_cell(r.ssim_mean) << ','
      << csv_cell(r.ws_psnr_mean) << ',' << csv_cell(r.ws_ssim_mean) << ','
      << (r.e_warp ? csv_cell(*r.e_warp) : "") << "\n";
  return out.str();
}

}  // namespace

std::string format_report(const MetricReport& r, ReportFormat format) {
  return format == ReportFormat::json ? to_json_text(r) : to_csv_text(r);
}

void write_report(const MetricReport& r, const std::filesystem::path& path,
                  ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_report(r, format);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace odv::io
