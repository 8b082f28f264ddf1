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

#include "odv/core.hpp"

namespace odv::io {

/// Binary flow field: magic "ODVF", u32 height, u32 width (little endian),
/// then height*width little-endian float32 (du, dv) pairs, row-major.
/// Payload is exactly 8*H*W bytes after the 12-byte header; float32 values
/// round-trip exactly.
FlowField load_flow(const std::filesystem::path& path);
void save_flow(const std::filesystem::path& path, const FlowField& flow);

}  // namespace odv::io
