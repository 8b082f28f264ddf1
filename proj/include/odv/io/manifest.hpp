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

#include <filesystem>
#include <optional>
#include <vector>

#include "odv/io/image_io.hpp"
#include "odv/metrics.hpp"

namespace odv::io {

/// JSON sequence description. Frame paths are resolved relative to the
/// manifest's directory; loading validates existence up front and uniform
/// dimensions after decode.
struct SequenceManifest {
  enum class PixelFormat { png8, raw8 };

  PixelFormat format = PixelFormat::png8;
  FrameSize raw_size{};  // required for raw8
  std::vector<std::filesystem::path> frames;
  std::vector<std::filesystem::path> saliency;  // optional, one per frame
  std::vector<std::filesystem::path> flows;     // optional, one per pair
  std::vector<std::filesystem::path> masks;     // optional, one per pair
  std::optional<std::filesystem::path> viewpoints;

  static SequenceManifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

FrameSequence load_sequence(const SequenceManifest& m,
                            LumaCoefficients luma = LumaCoefficients::bt601);

/// Saliency maps normalized into [0, 1]: negatives clamp to zero and values
/// divide by the maximum when it exceeds 1.
std::vector<WeightMap> load_saliency(const SequenceManifest& m);

std::vector<FlowField> load_flows(const SequenceManifest& m);
std::vector<WeightMap> load_masks(const SequenceManifest& m);

/// Viewpoint list JSON: {"k": int, "points": [{"longitude": rad,
/// "latitude": rad, "score": optional}, ...]}.
ViewpointList load_viewpoints(const std::filesystem::path& path);

}  // namespace odv::io
