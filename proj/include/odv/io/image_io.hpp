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
#include <stdexcept>

#include "odv/core.hpp"

namespace odv::io {

/// Filesystem / decode failures; the CLI maps these to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// RGB -> luma coefficients applied on normalized values.
enum class LumaCoefficients { bt601, bt709 };

/// Decode a PNG (8/16-bit gray, 8-bit RGB; alpha stripped, palette expanded)
/// to normalized luma in [0, 1]. 8-bit samples divide by 255, 16-bit by
/// 65535; RGB converts with the selected coefficients (BT.601 default:
/// Y = 0.299 R + 0.587 G + 0.114 B).
Frame load_png(const std::filesystem::path& path,
               LumaCoefficients luma = LumaCoefficients::bt601);

/// Raw 8-bit planar frame of known dimensions, values / 255.
Frame load_raw8(const std::filesystem::path& path, FrameSize size);

/// 8-bit grayscale PNG; values clamped to [0, 1] and scaled by 255.
void save_png8(const std::filesystem::path& path, const Frame& f);

/// 16-bit grayscale PNG; values clamped to [0, 1] and scaled by 65535.
void save_png16(const std::filesystem::path& path, const Frame& f);

void save_raw8(const std::filesystem::path& path, const Frame& f);

/// Float tensor stack ("ODVT"): magic, u32 channels/height/width (LE),
/// then channel-major float32 LE planes. Lossless for float32 payloads;
/// used for feature maps, encodings, and weight sidecars.
FeatureMap load_tensor(const std::filesystem::path& path);
void save_tensor(const std::filesystem::path& path, const FeatureMap& t);

}  // namespace odv::io
