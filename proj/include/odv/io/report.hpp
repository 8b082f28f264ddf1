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
#include <string>

#include "odv/metrics.hpp"

namespace odv::io {

enum class ReportFormat { json, csv };

/// Serialize a metric report with deterministic field order, floats at six
/// significant digits, and infinite PSNR as the literal string "inf".
/// JSON reports carry "schema": 1.
std::string format_report(const MetricReport& r, ReportFormat format);

void write_report(const MetricReport& r, const std::filesystem::path& path,
                  ReportFormat format);

}  // namespace odv::io
