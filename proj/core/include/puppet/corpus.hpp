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

#ifndef PUPPET_CORPUS_HPP_
#define PUPPET_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "puppet/image.hpp"
#include "puppet/phash.hpp"
#include "puppet/view.hpp"

namespace puppet {

// SplitMix64. Pinned as the corpus generator so outputs are bit-identical
// across platforms and toolchains.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-enough draw in [0,n); modulo bias is irrelevant here, only
  // reproducibility is.
  std::uint64_t bounded(std::uint64_t n) { return next() % n; }

  // Inclusive integer range.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    bounded(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct Perturbation {
  std::int32_t max_shift_px = 8;
  double max_resize_frac = 0.08;
  std::int32_t noise_amplitude = 5;  // peak-to-peak pixel jitter
};

struct DepthRange {
  std::int32_t min = 3;
  std::int32_t max = 4;
};

// Deterministic synthetic stand-in for an app corpus: families of
// UI-similar variants with hierarchies, rendered screenshots and ground
// truth labels. Fully determined by the seed.
struct CorpusSpec {
  std::uint64_t seed = 1;
  std::size_t n_families = 4;
  std::size_t variants_per_family = 3;  // on top of the per-family base
  Perturbation perturbation;
  DepthRange hierarchy_depth;
  ScreenSize screen{320, 480};
};

struct CorpusApp {
  std::string app_id;
  std::size_t family = 0;
  std::size_t variant = 0;  // 0 is the base
  PerceptualHash hash;
};

struct CorpusManifest {
  std::vector<CorpusApp> apps;
  // Measured over all screenshot hash pairs during generation.
  int max_intra_distance = 0;
  int min_inter_distance = 64;
  int max_inter_distance = 0;
};

// Renders the hierarchy as filled rectangles with a per-view texture
// derived from the view's hash code, so visual similarity tracks layout
// similarity.
GrayImage render_hierarchy(const ViewHierarchy& hierarchy);

// Adds deterministic pixel jitter of the given peak amplitude.
void add_pixel_noise(GrayImage& image, std::int32_t amplitude,
                     std::uint64_t seed);

// Emits `<out>/<app_id>/screen.pgm` and `<out>/<app_id>/view.hier` per
// app, plus `<out>/labels.csv` mapping app_id to family. Generation
// enforces the corpus contract: intra-family hash distances <= 8 and
// inter-family distances within [24, 40], so DBSCAN sweeps show a plateau
// of n_families clusters below 24 and a full collapse by 40.
// Throws Error{kIoFailure} when the corpus cannot be written or the
// distance constraints cannot be met.
CorpusManifest generate_corpus(const CorpusSpec& spec,
                               const std::filesystem::path& out_dir);

struct SessionFiles {
  std::filesystem::path events;     // event-log CSV
  std::filesystem::path dumps_dir;  // timestamped .hier dumps
};

// Synthesizes a recording session for one corpus app: a tap sequence
// (Down/Up pairs on consuming views) plus the matching dump directory.
// Deterministic per spec seed. Throws Error{kUnknownFamily} for indices
// outside the spec.
SessionFiles generate_session(const CorpusSpec& spec, std::size_t family,
                              std::size_t variant,
                              const std::filesystem::path& out_dir);

// In-memory variant of the generator used by tests and generate_session;
// variant 0 is the family base.
ViewHierarchy corpus_hierarchy(const CorpusSpec& spec, std::size_t family,
                               std::size_t variant);
GrayImage corpus_screenshot(const CorpusSpec& spec, std::size_t family,
                            std::size_t variant);

}  // namespace puppet

#endif  // PUPPET_CORPUS_HPP_
