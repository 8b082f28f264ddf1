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

#include "odv/io/flow_io.hpp"

#include <cstring>
#include <fstream>
#include <vector>

#include "odv/io/image_io.hpp"

namespace odv::io {

namespace {

constexpr char kFlowMagic[4] = {'O', 'D', 'V', 'F'};

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {
      static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff),
      static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

FlowField load_flow(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kFlowMagic, 4) != 0)
    throw IoError(path.string() + ": not an ODVF flow file");
  const std::uint32_t h = read_u32(in), w = read_u32(in);
  if (!in || h == 0 || w == 0) throw IoError(path.string() + ": bad flow header");

  FlowField flow(FrameSize{static_cast<int>(h), static_cast<int>(w)});
  std::vector<float> buf(2 * flow.size().pixel_count());
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(float)))
    throw IoError(path.string() + ": truncated flow payload");

  std::size_t i = 0;
  for (int v = 0; v < flow.size().height; ++v)
    for (int u = 0; u < flow.size().width; ++u) {
      flow.du.at(v, u) = buf[i++];
      flow.dv.at(v, u) = buf[i++];
    }
  return flow;
}

void save_flow(const std::filesystem::path& path, const FlowField& flow) {
  require(flow.size().valid(), "save_flow: empty flow field");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kFlowMagic, 4);
  write_u32(out, static_cast<std::uint32_t>(flow.size().height));
  write_u32(out, static_cast<std::uint32_t>(flow.size().width));

  std::vector<float> buf;
  buf.reserve(2 * flow.size().pixel_count());
  for (int v = 0; v < flow.size().height; ++v)
    for (int u = 0; u < flow.size().width; ++u) {
      buf.push_back(static_cast<float>(flow.du.at(v, u)));
      buf.push_back(static_cast<float>(flow.dv.at(v, u)));
    }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace odv::io
