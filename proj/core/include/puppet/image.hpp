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

#ifndef PUPPET_IMAGE_HPP_
#define PUPPET_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace puppet {

// 8-bit grayscale image, row-major.
struct GrayImage {
  std::int32_t width = 0;
  std::int32_t height = 0;
  std::vector<std::uint8_t> pixels;

  static GrayImage filled(std::int32_t width, std::int32_t height,
                          std::uint8_t value);

  std::uint8_t at(std::int32_t x, std::int32_t y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(std::int32_t x, std::int32_t y) {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }

  bool operator==(const GrayImage&) const = default;
};

// Binary PGM (P5, maxval <= 255). Throws Error{kMalformedImage} on bad
// input and Error{kIoFailure} on filesystem trouble.
GrayImage parse_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_pgm(const GrayImage& image);
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace puppet

#endif  // PUPPET_IMAGE_HPP_
