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

#ifndef PUPPET_PHASH_HPP_
#define PUPPET_PHASH_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "puppet/image.hpp"

namespace puppet {

// 64-bit DCT fingerprint of a screenshot. Visually similar images have a
// small hamming distance between their hashes.
struct PerceptualHash {
  std::uint64_t bits = 0;

  auto operator<=>(const PerceptualHash&) const = default;
};

// 16 lowercase hex digits.
std::string hash_to_hex(PerceptualHash hash);
PerceptualHash hash_from_hex(std::string_view text);

inline int hamming(PerceptualHash a, PerceptualHash b) {
  return std::popcount(a.bits ^ b.bits);
}

// DCT perceptual hash. Pipeline, fixed for bit-reproducibility:
//   1. 7x7 box blur (replicated edges, exact integer sums, undivided);
//   2. area-average resize to 32x32 (exact integer accumulation, the
//      uniform scale factor is never divided out -- it cannot change any
//      later comparison);
//   3. orthonormal 2-D DCT-II;
//   4. the 8x8 coefficient block at rows 1..8, cols 1..8 (row/col 0
//      skipped); median = mean of the 32nd and 33rd order statistics;
//   5. bit r*8+c (LSB first) set iff the coefficient is strictly greater
//      than the median, so an exact-median coefficient maps to 0.
// Deterministic: bit-identical across runs and worker counts.
// Throws Error{kImageTooSmall} for images under 8x8.
PerceptualHash phash(const GrayImage& image);

}  // namespace puppet

#endif  // PUPPET_PHASH_HPP_
