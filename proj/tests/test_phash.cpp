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

#include <future>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers/naive_phash.hpp"
#include "puppet/errors.hpp"
#include "puppet/image.hpp"

namespace puppet {
namespace {

// Block-structured texture resembling a rendered UI: random gray panels
// with occasional stripes.
GrayImage block_texture(std::mt19937& rng, int w, int h, int block = 40) {
  GrayImage img = GrayImage::filled(w, h, 0);
  std::uniform_int_distribution<int> gray(10, 245);
  std::uniform_int_distribution<int> stripe(0, 3);
  for (int by = 0; by < h; by += block) {
    for (int bx = 0; bx < w; bx += block) {
      const int base = gray(rng);
      const int kind = stripe(rng);
      for (int y = by; y < std::min(h, by + block); ++y) {
        for (int x = bx; x < std::min(w, bx + block); ++x) {
          int v = base;
          if (kind == 1) v += (y / 6) % 2 ? 25 : -25;
          if (kind == 2) v += (x / 6) % 2 ? 25 : -25;
          img.at(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
        }
      }
    }
  }
  return img;
}

TEST_CASE("constant image hashes to zero") {
  const GrayImage flat = GrayImage::filled(64, 64, 128);
  CHECK(phash(flat).bits == 0);
  CHECK(hash_to_hex(phash(flat)) == "0000000000000000");
}

TEST_CASE("images smaller than 8x8 are rejected") {
  try {
    phash(GrayImage::filled(7, 20, 0));
    FAIL("expected ImageTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kImageTooSmall);
  }
  CHECK_NOTHROW(phash(GrayImage::filled(8, 8, 0)));
}

TEST_CASE("hashing is deterministic, also across threads") {
  std::mt19937 rng(555);
  const GrayImage img = block_texture(rng, 320, 480);
  const PerceptualHash reference = phash(img);
  std::vector<std::future<PerceptualHash>> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(std::async(std::launch::async, [&img] { return phash(img); }));
  }
  for (auto& job : jobs) {
    CHECK(job.get() == reference);
  }
}

TEST_CASE("hex form round-trips") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const PerceptualHash h{rng()};
    CHECK(hash_from_hex(hash_to_hex(h)) == h);
  }
  CHECK(hash_from_hex("00000000000000ff").bits == 0xff);
  CHECK_THROWS_AS(hash_from_hex("xyz"), Error);
  CHECK_THROWS_AS(hash_from_hex("00000000000000f"), Error);   // 15 digits
  CHECK_THROWS_AS(hash_from_hex("00000000000000fg"), Error);  // bad digit
}

TEST_CASE("hamming basics and metric properties") {
  const PerceptualHash h{0xdeadbeefcafef00dULL};
  CHECK(hamming(h, h) == 0);
  CHECK(hamming(PerceptualHash{0}, PerceptualHash{~0ULL}) == 64);
  CHECK(hamming(PerceptualHash{0b1011}, PerceptualHash{0b0010}) == 2);

  std::mt19937_64 rng(42);
  for (int i = 0; i < 100000; ++i) {
    const PerceptualHash a{rng()}, b{rng()}, c{rng()};
    const int ab = hamming(a, b);
    const int bc = hamming(b, c);
    const int ac = hamming(a, c);
    CHECK(ab == hamming(b, a));
    CHECK(ac <= ab + bc);
    if (a == b) CHECK(ab == 0);
    if (ab == 0) CHECK(a == b);
  }
}

TEST_CASE("pipeline agrees with the independent oracle implementation") {
  std::mt19937 rng(2718);
  // Sizes deliberately include non-multiples of 32 and extreme aspect
  // ratios; textures include pure noise.
  const std::pair<int, int> sizes[] = {
      {320, 480}, {97, 61}, {32, 32}, {33, 31}, {288, 480}, {640, 100}};
  for (const auto& [w, h] : sizes) {
    const GrayImage structured = block_texture(rng, w, h);
    CHECK(phash(structured) == testing::naive_phash(structured));

    GrayImage noisy = GrayImage::filled(w, h, 0);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& px : noisy.pixels) px = static_cast<std::uint8_t>(byte(rng));
    CHECK(phash(noisy) == testing::naive_phash(noisy));
  }
}

TEST_CASE("downscaled copies stay within the operating threshold") {
  std::mt19937 rng(31415);
  for (int i = 0; i < 10; ++i) {
    const GrayImage img = block_texture(rng, 320, 480);
    const GrayImage three_quarters = testing::downscale(img, 240, 360);
    const GrayImage half = testing::downscale(img, 160, 240);
    CHECK(hamming(phash(img), phash(three_quarters)) <= 10);
    CHECK(hamming(phash(img), phash(half)) <= 10);
  }
}

TEST_CASE("mild pixel noise stays within the operating threshold") {
  std::mt19937 rng(999);
  std::uniform_int_distribution<int> jitter(-8, 8);
  for (int i = 0; i < 10; ++i) {
    const GrayImage img = block_texture(rng, 320, 480);
    GrayImage noisy = img;
    for (auto& px : noisy.pixels) {
      px = static_cast<std::uint8_t>(std::clamp(px + jitter(rng), 0, 255));
    }
    CHECK(hamming(phash(img), phash(noisy)) <= 10);
  }
}

TEST_CASE("PGM serialization round-trips") {
  std::mt19937 rng(7);
  const GrayImage img = block_texture(rng, 33, 21, 8);
  CHECK(parse_pgm(serialize_pgm(img)) == img);
}

TEST_CASE("PGM parser handles comments and rejects bad input") {
  const std::string with_comments =
      "P5 # magic\n# a comment line\n 4 \n# another\n2\n255\nabcdefgh";
  const GrayImage img = parse_pgm(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(with_comments.data()),
      with_comments.size()));
  CHECK(img.width == 4);
  CHECK(img.height == 2);
  CHECK(img.at(0, 0) == 'a');
  CHECK(img.at(3, 1) == 'h');

  auto expect_malformed = [](const std::string& text) {
    try {
      parse_pgm(std::span<const std::uint8_t>(
          reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
      FAIL("expected MalformedImage for: ", text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kMalformedImage);
    }
  };
  expect_malformed("P6\n2 2\n255\nabcd");       // wrong magic
  expect_malformed("P5\n2 2\n65535\nabcdefgh"); // 16-bit
  expect_malformed("P5\n2 2\n255\nabc");        // truncated raster
  expect_malformed("P5\n0 2\n255\n");           // zero dimension
}

}  // namespace
}  // namespace puppet
