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

#include "odv/io/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace odv::io {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path.string());
  return f;
}

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  throw IoError(std::string("libpng: ") + msg);
}

void png_warn_fn(png_structp, png_const_charp) {}

}  // namespace

Frame load_png(const std::filesystem::path& path, LumaCoefficients luma) {
  FilePtr file = open_file(path, "rb");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           png_error_fn, png_warn_fn);
  if (!png) throw IoError("libpng: read struct allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng: info struct allocation failed");
  }

  Frame out;
  try {
    png_init_io(png, file.get());
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    if (depth == 16) png_set_swap(png);  // libpng delivers big-endian words
    png_read_update_info(png, info);

    depth = png_get_bit_depth(png, info);
    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3)
      throw IoError(path.string() + ": unsupported channel layout");
    if (channels == 3 && depth != 8)
      throw IoError(path.string() + ": 16-bit RGB input is not supported");

    const std::size_t stride = png_get_rowbytes(png, info);
    std::vector<unsigned char> rowbuf(stride);
    out = Frame({static_cast<int>(h), static_cast<int>(w)});

    const double kr = luma == LumaCoefficients::bt601 ? 0.299 : 0.2126;
    const double kg = luma == LumaCoefficients::bt601 ? 0.587 : 0.7152;
    const double kb = luma == LumaCoefficients::bt601 ? 0.114 : 0.0722;

    for (png_uint_32 v = 0; v < h; ++v) {
      png_read_row(png, rowbuf.data(), nullptr);
      for (png_uint_32 u = 0; u < w; ++u) {
        double value;
        if (channels == 3) {
          const unsigned char* p = rowbuf.data() + 3 * u;
          value = kr * (p[0] / 255.0) + kg * (p[1] / 255.0) + kb * (p[2] / 255.0);
        } else if (depth == 16) {
          std::uint16_t s;
          std::memcpy(&s, rowbuf.data() + 2 * u, 2);
          value = s / 65535.0;
        } else {
          value = rowbuf[u] / 255.0;
        }
        out.at(static_cast<int>(v), static_cast<int>(u)) = value;
      }
    }
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

namespace {

void save_png_gray(const std::filesystem::path& path, const Frame& f, int depth) {
  require(!f.empty(), "save_png: empty frame");
  FilePtr file = open_file(path, "wb");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            png_error_fn, png_warn_fn);
  if (!png) throw IoError("libpng: write struct allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: info struct allocation failed");
  }

  try {
    png_init_io(png, file.get());
    png_set_IHDR(png, info, f.width(), f.height(), depth, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (depth == 16) png_set_swap(png);

    const double peak = depth == 16 ? 65535.0 : 255.0;
    std::vector<unsigned char> row(static_cast<std::size_t>(f.width()) * (depth / 8));
    for (int v = 0; v < f.height(); ++v) {
      for (int u = 0; u < f.width(); ++u) {
        const double clamped = std::clamp(f.at(v, u), 0.0, 1.0);
        const long q = std::lround(clamped * peak);
        if (depth == 16) {
          const std::uint16_t s = static_cast<std::uint16_t>(q);
          std::memcpy(row.data() + 2 * u, &s, 2);
        } else {
          row[u] = static_cast<unsigned char>(q);
        }
      }
      png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void save_png8(const std::filesystem::path& path, const Frame& f) {
  save_png_gray(path, f, 8);
}

void save_png16(const std::filesystem::path& path, const Frame& f) {
  save_png_gray(path, f, 16);
}

Frame load_raw8(const std::filesystem::path& path, FrameSize size) {
  require(size.valid(), "load_raw8: invalid frame size");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> buf(size.pixel_count());
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size()))
    throw IoError(path.string() + ": truncated raw8 payload");
  char extra;
  if (in.read(&extra, 1), in.gcount() != 0)
    throw IoError(path.string() + ": raw8 payload larger than height*width");

  Frame out(size);
  auto dst = out.values();
  for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i] / 255.0;
  return out;
}

void save_raw8(const std::filesystem::path& path, const Frame& f) {
  require(!f.empty(), "save_raw8: empty frame");
  std::ofstream outf(path, std::ios::binary | std::ios::trunc);
  if (!outf) throw IoError("cannot open " + path.string() + " for writing");
  std::vector<unsigned char> buf(f.size().pixel_count());
  auto src = f.values();
  for (std::size_t i = 0; i < buf.size(); ++i)
    buf[i] = static_cast<unsigned char>(std::lround(std::clamp(src[i], 0.0, 1.0) * 255.0));
  outf.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(buf.size()));
  if (!outf) throw IoError("write failed: " + path.string());
}

namespace {

constexpr char kTensorMagic[4] = {'O', 'D', 'V', 'T'};

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

FeatureMap load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kTensorMagic, 4) != 0)
    throw IoError(path.string() + ": not an ODVT tensor file");
  const std::uint32_t c = read_u32(in), h = read_u32(in), w = read_u32(in);
  if (!in || c == 0 || h == 0 || w == 0)
    throw IoError(path.string() + ": bad tensor header");

  FeatureMap t(static_cast<int>(c), {static_cast<int>(h), static_cast<int>(w)});
  std::vector<float> buf(t.values().size());
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(float)))
    throw IoError(path.string() + ": truncated tensor payload");
  auto dst = t.values();
  for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i];
  return t;
}

void save_tensor(const std::filesystem::path& path, const FeatureMap& t) {
  require(!t.empty(), "save_tensor: empty tensor");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(kTensorMagic, 4);
  write_u32(out, static_cast<std::uint32_t>(t.channels()));
  write_u32(out, static_cast<std::uint32_t>(t.height()));
  write_u32(out, static_cast<std::uint32_t>(t.width()));
  std::vector<float> buf(t.values().size());
  auto src = t.values();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = static_cast<float>(src[i]);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace odv::io
