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

#include "puppet/phash.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "puppet/errors.hpp"

namespace puppet {

namespace {

constexpr int kDctSize = 32;
constexpr int kBlurRadius = 3;  // 7x7 kernel

// 7x7 box sums with replicated edges. Separable integer passes, so the
// result is exact and independent of accumulation order. The uniform 1/49
// normalization is omitted; every later stage is scale-invariant up to the
// final median comparison.
std::vector<std::uint32_t> box_blur_sums(const GrayImage& img) {
  const int w = img.width;
  const int h = img.height;
  std::vector<std::uint32_t> hsum(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint32_t s = 0;
      for (int dx = -kBlurRadius; dx <= kBlurRadius; ++dx) {
        const int sx = std::clamp(x + dx, 0, w - 1);
        s += img.at(sx, y);
      }
      hsum[static_cast<std::size_t>(y) * w + x] = s;
    }
  }
  std::vector<std::uint32_t> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint32_t s = 0;
      for (int dy = -kBlurRadius; dy <= kBlurRadius; ++dy) {
        const int sy = std::clamp(y + dy, 0, h - 1);
        s += hsum[static_cast<std::size_t>(sy) * w + x];
      }
      out[static_cast<std::size_t>(y) * w + x] = s;
    }
  }
  return out;
}

// Area-average resize to 32x32 in exact integer arithmetic: overlaps are
// measured on a 32x-scaled grid so every weight is integral, and the
// uniform total weight w*h is again left undivided.
std::array<std::int64_t, kDctSize * kDctSize> area_resize(
    const std::vector<std::uint32_t>& src, int w, int h) {
  std::array<std::int64_t, kDctSize * kDctSize> out{};
  for (int oy = 0; oy < kDctSize; ++oy) {
    // Source span [oy*h, (oy+1)*h) in 1/32 rows; pixel py spans
    // [py*32, (py+1)*32).
    const std::int64_t y0 = static_cast<std::int64_t>(oy) * h;
    const std::int64_t y1 = y0 + h;
    const int py_first = static_cast<int>(y0 / kDctSize);
    for (int ox = 0; ox < kDctSize; ++ox) {
      const std::int64_t x0 = static_cast<std::int64_t>(ox) * w;
      const std::int64_t x1 = x0 + w;
      const int px_first = static_cast<int>(x0 / kDctSize);
      std::int64_t acc = 0;
      for (int py = py_first; static_cast<std::int64_t>(py) * kDctSize < y1;
           ++py) {
        const std::int64_t oy_lap =
            std::min<std::int64_t>(y1, static_cast<std::int64_t>(py + 1) * kDctSize) -
            std::max<std::int64_t>(y0, static_cast<std::int64_t>(py) * kDctSize);
        if (oy_lap <= 0) continue;
        for (int px = px_first; static_cast<std::int64_t>(px) * kDctSize < x1;
             ++px) {
          const std::int64_t ox_lap =
              std::min<std::int64_t>(x1, static_cast<std::int64_t>(px + 1) * kDctSize) -
              std::max<std::int64_t>(x0, static_cast<std::int64_t>(px) * kDctSize);
          if (ox_lap <= 0) continue;
          acc += oy_lap * ox_lap *
                 static_cast<std::int64_t>(src[static_cast<std::size_t>(py) * w + px]);
        }
      }
      out[static_cast<std::size_t>(oy) * kDctSize + ox] = acc;
    }
  }
  return out;
}

struct DctTable {
  // basis[u][x] = a(u) * cos((2x+1) u pi / 64), orthonormal.
  double basis[kDctSize][kDctSize];

  DctTable() {
    const double norm0 = std::sqrt(1.0 / kDctSize);
    const double norm = std::sqrt(2.0 / kDctSize);
    for (int u = 0; u < kDctSize; ++u) {
      for (int x = 0; x < kDctSize; ++x) {
        basis[u][x] = (u == 0 ? norm0 : norm) *
                      std::cos((2 * x + 1) * u * std::numbers::pi /
                               (2.0 * kDctSize));
      }
    }
  }
};

const DctTable& dct_table() {
  static const DctTable table;
  return table;
}

}  // namespace

std::string hash_to_hex(PerceptualHash hash) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash.bits));
  return buf;
}

PerceptualHash hash_from_hex(std::string_view text) {
  if (text.size() != 16) {
    throw Error(ErrorCode::kMalformedIndex, "hash must be 16 hex digits");
  }
  std::uint64_t bits = 0;
  for (char c : text) {
    bits <<= 4;
    if (c >= '0' && c <= '9') {
      bits |= static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      bits |= static_cast<std::uint64_t>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      bits |= static_cast<std::uint64_t>(c - 'A' + 10);
    } else {
      throw Error(ErrorCode::kMalformedIndex, "bad hash digit");
    }
  }
  return PerceptualHash{bits};
}

PerceptualHash phash(const GrayImage& image) {
  if (image.width < 8 || image.height < 8) {
    throw Error(ErrorCode::kImageTooSmall,
                "phash needs at least 8x8 pixels, got " +
                    std::to_string(image.width) + "x" +
                    std::to_string(image.height));
  }

  const auto blurred = box_blur_sums(image);
  const auto small = area_resize(blurred, image.width, image.height);

  // Separable DCT-II, rows then columns, ascending inner loops.
  const DctTable& t = dct_table();
  double rows[kDctSize][kDctSize];
  for (int y = 0; y < kDctSize; ++y) {
    for (int v = 0; v < kDctSize; ++v) {
      double acc = 0.0;
      for (int x = 0; x < kDctSize; ++x) {
        acc += t.basis[v][x] *
               static_cast<double>(small[static_cast<std::size_t>(y) * kDctSize + x]);
      }
      rows[y][v] = acc;
    }
  }

  // Low-frequency 8x8 block at rows 1..8, cols 1..8 (DC row/col skipped).
  double coeffs[64];
  for (int u = 1; u <= 8; ++u) {
    for (int v = 1; v <= 8; ++v) {
      double acc = 0.0;
      for (int y = 0; y < kDctSize; ++y) {
        acc += t.basis[u][y] * rows[y][v];
      }
      coeffs[(u - 1) * 8 + (v - 1)] = acc;
    }
  }

  double sorted[64];
  std::copy(std::begin(coeffs), std::end(coeffs), std::begin(sorted));
  std::sort(std::begin(sorted), std::end(sorted));
  const double median = (sorted[31] + sorted[32]) / 2.0;

  PerceptualHash hash;
  for (int k = 0; k < 64; ++k) {
    if (coeffs[k] > median) hash.bits |= (std::uint64_t{1} << k);
  }
  return hash;
}

}  // namespace puppet
