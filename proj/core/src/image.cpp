// Copyright 2026 The Puppet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "puppet/image.hpp"

#include <fstream>
#include <string>

#include "puppet/errors.hpp"

namespace puppet {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedImage, what);
}

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  bool done() const { return pos >= bytes.size(); }
  std::uint8_t peek() const { return bytes[pos]; }

  static bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  }

  // Whitespace and '#'-to-end-of-line comments between header tokens.
  void skip_separators() {
    while (!done()) {
      if (is_space(peek())) {
        ++pos;
      } else if (peek() == '#') {
        while (!done() && peek() != '\n') ++pos;
      } else {
        return;
      }
    }
  }

  std::int64_t read_header_int() {
    skip_separators();
    if (done() || peek() < '0' || peek() > '9') malformed("bad PGM header");
    std::int64_t value = 0;
    while (!done() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000'000) malformed("PGM header value out of range");
      ++pos;
    }
    return value;
  }
};

}  // namespace

GrayImage GrayImage::filled(std::int32_t width, std::int32_t height,
                            std::uint8_t value) {
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, value);
  return img;
}

GrayImage parse_pgm(std::span<const std::uint8_t> bytes) {
  Cursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    malformed("not a P5 PGM");
  }
  cur.pos = 2;

  const std::int64_t width = cur.read_header_int();
  const std::int64_t height = cur.read_header_int();
  const std::int64_t maxval = cur.read_header_int();
  if (width <= 0 || height <= 0) malformed("bad PGM dimensions");
  if (maxval < 1 || maxval > 255) malformed("only 8-bit PGM supported");

  // Exactly one whitespace byte separates the header from the raster.
  if (cur.done() || !Cursor::is_space(cur.peek())) malformed("bad PGM header");
  ++cur.pos;

  const std::size_t count =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - cur.pos < count) malformed("truncated PGM raster");

  GrayImage img;
  img.width = static_cast<std::int32_t>(width);
  img.height = static_cast<std::int32_t>(height);
  img.pixels.assign(bytes.begin() + cur.pos, bytes.begin() + cur.pos + count);
  return img;
}

std::vector<std::uint8_t> serialize_pgm(const GrayImage& image) {
  std::string header = "P5\n" + std::to_string(image.width) + ' ' +
                       std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + image.pixels.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return parse_pgm(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  const auto bytes = serialize_pgm(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "short write to " + path.string());
  }
}

}  // namespace puppet
