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

#include "odv/io/manifest.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "odv/io/flow_io.hpp"

namespace odv::io {

namespace {

using nlohmann::json;

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(path.string() + ": invalid JSON: " + e.what());
  }
  return j;
}

std::vector<std::filesystem::path> resolve_list(const json& j, const char* key,
                                                const std::filesystem::path& base) {
  std::vector<std::filesystem::path> out;
  if (!j.contains(key)) return out;
  require(j.at(key).is_array(), std::string("manifest: ") + key + " must be an array");
  for (const auto& entry : j.at(key)) {
    require(entry.is_string(), std::string("manifest: ") + key + " entries must be strings");
    std::filesystem::path p = entry.get<std::string>();
    out.push_back(p.is_absolute() ? p : base / p);
  }
  return out;
}

void require_exists(const std::vector<std::filesystem::path>& paths, const char* what) {
  for (const auto& p : paths)
    if (!std::filesystem::exists(p))
      fail(std::string(what) + ": missing file " + p.string());
}

}  // namespace

SequenceManifest SequenceManifest::load(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  const std::filesystem::path base = path.has_parent_path()
                                         ? path.parent_path()
                                         : std::filesystem::path(".");

  SequenceManifest m;
  require(j.contains("format") && j.at("format").is_string(),
          "manifest: missing string field 'format'");
  const std::string fmt = j.at("format").get<std::string>();
  if (fmt == "png8") {
    m.format = PixelFormat::png8;
  } else if (fmt == "raw8") {
    m.format = PixelFormat::raw8;
    require(j.contains("height") && j.contains("width"),
            "manifest: raw8 requires explicit height and width");
    m.raw_size = {j.at("height").get<int>(), j.at("width").get<int>()};
    require(m.raw_size.valid(), "manifest: non-positive raw8 dimensions");
  } else {
    fail("manifest: unknown format '" + fmt + "' (expected png8 or raw8)");
  }

  m.frames = resolve_list(j, "frames", base);
  require(!m.frames.empty(), "manifest: 'frames' must list at least one file");
  m.saliency = resolve_list(j, "saliency", base);
  m.flows = resolve_list(j, "flows", base);
  m.masks = resolve_list(j, "masks", base);
  if (j.contains("viewpoints")) {
    require(j.at("viewpoints").is_string(), "manifest: 'viewpoints' must be a path");
    std::filesystem::path p = j.at("viewpoints").get<std::string>();
    m.viewpoints = p.is_absolute() ? p : base / p;
  }

  require_exists(m.frames, "manifest frames");
  require_exists(m.saliency, "manifest saliency");
  require_exists(m.flows, "manifest flows");
  require_exists(m.masks, "manifest masks");
  if (m.viewpoints && !std::filesystem::exists(*m.viewpoints))
    fail("manifest viewpoints: missing file " + m.viewpoints->string());

  if (!m.saliency.empty())
    require(m.saliency.size() == m.frames.size(),
            "manifest: saliency count must match frame count");
  if (!m.flows.empty())
    require(m.flows.size() + 1 == m.frames.size(),
            "manifest: flow count must be frame count - 1");
  if (!m.masks.empty())
    require(m.masks.size() + 1 == m.frames.size(),
            "manifest: mask count must be frame count - 1");
  return m;
}

void SequenceManifest::save(const std::filesystem::path& path) const {
  nlohmann::ordered_json j;
  j["format"] = format == PixelFormat::png8 ? "png8" : "raw8";
  if (format == PixelFormat::raw8) {
    j["height"] = raw_size.height;
    j["width"] = raw_size.width;
  }
  auto names = [](const std::vector<std::filesystem::path>& ps) {
    std::vector<std::string> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(p.filename().string());
    return out;
  };
  j["frames"] = names(frames);
  if (!saliency.empty()) j["saliency"] = names(saliency);
  if (!flows.empty()) j["flows"] = names(flows);
  if (!masks.empty()) j["masks"] = names(masks);
  if (viewpoints) j["viewpoints"] = viewpoints->filename().string();

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

FrameSequence load_sequence(const SequenceManifest& m, LumaCoefficients luma) {
  FrameSequence seq;
  seq.reserve(m.frames.size());
  for (const auto& p : m.frames) {
    Frame f = m.format == SequenceManifest::PixelFormat::png8
                  ? load_png(p, luma)
                  : load_raw8(p, m.raw_size);
    if (!seq.empty())
      require(f.size() == seq.front().size(),
              "sequence: frame dimension mismatch at " + p.string());
    seq.push_back(std::move(f));
  }
  return seq;
}

std::vector<WeightMap> load_saliency(const SequenceManifest& m) {
  std::vector<WeightMap> maps;
  maps.reserve(m.saliency.size());
  for (const auto& p : m.saliency) {
    WeightMap w = load_png(p);
    double max_value = 0.0;
    for (double& x : w.values()) {
      if (x < 0.0) x = 0.0;
      max_value = std::max(max_value, x);
    }
    if (max_value > 1.0)
      for (double& x : w.values()) x /= max_value;
    maps.push_back(std::move(w));
  }
  return maps;
}

std::vector<FlowField> load_flows(const SequenceManifest& m) {
  std::vector<FlowField> flows;
  flows.reserve(m.flows.size());
  for (const auto& p : m.flows) flows.push_back(load_flow(p));
  return flows;
}

std::vector<WeightMap> load_masks(const SequenceManifest& m) {
  std::vector<WeightMap> masks;
  masks.reserve(m.masks.size());
  for (const auto& p : m.masks) masks.push_back(load_png(p));
  return masks;
}

ViewpointList load_viewpoints(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  ViewpointList list;
  require(j.contains("points") && j.at("points").is_array() && !j.at("points").empty(),
          "viewpoints: 'points' must be a non-empty array");
  for (const auto& p : j.at("points")) {
    Viewpoint vp;
    require(p.contains("longitude") && p.contains("latitude"),
            "viewpoints: each point needs 'longitude' and 'latitude' in radians");
    vp.center.longitude = p.at("longitude").get<double>();
    vp.center.latitude = p.at("latitude").get<double>();
    require(std::abs(vp.center.latitude) <= kPi / 2.0 + 1e-12,
            "viewpoints: latitude outside [-pi/2, pi/2]");
    if (p.contains("score")) vp.score = p.at("score").get<double>();
    list.points.push_back(vp);
  }
  list.top_k = j.value("k", static_cast<int>(list.points.size()));
  require(list.top_k >= 1 && list.top_k <= static_cast<int>(list.points.size()),
          "viewpoints: k out of range");
  return list;
}

}  // namespace odv::io
