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

#ifndef PUPPET_INDEX_HPP_
#define PUPPET_INDEX_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "puppet/image.hpp"
#include "puppet/mvp_tree.hpp"
#include "puppet/phash.hpp"

namespace puppet {

struct IndexEntry {
  std::string app_id;
  std::string screenshot_id;
  PerceptualHash hash;

  bool operator==(const IndexEntry&) const = default;
};

// Apps -> screenshots -> hashes, with an MVP tree for k-NN lookups. The
// entry list is the ground truth; the tree is a derived accelerator and is
// rebuilt when an index file is loaded.
class SimilarityIndex {
 public:
  SimilarityIndex() = default;

  static SimilarityIndex build(std::vector<IndexEntry> entries);

  const std::vector<IndexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  struct Hit {
    int distance = 0;
    std::size_t entry_index = 0;

    bool operator==(const Hit&) const = default;
  };

  // k nearest entries, ascending (distance, entry insertion order).
  // Throws Error{kEmptyIndex} on an empty index.
  std::vector<Hit> knn(PerceptualHash query, std::size_t k) const;

  struct AppMatch {
    std::string app_id;
    int distance = 0;
    std::size_t entry_index = 0;      // matched indexed screenshot
    std::size_t screenshot_index = 0; // query screenshot that matched
  };

  // App owning the globally minimal (query screenshot, entry) hamming
  // distance. Ties go to the earlier query screenshot, then the earlier
  // entry. Entries of exclude_app_id are skipped so an indexed app can
  // look up its own best neighbor. Throws Error{kNoScreenshots} and
  // Error{kEmptyIndex} (also when exclusion leaves no candidates).
  AppMatch find_similar_app(std::span<const GrayImage> screenshots,
                            std::string_view exclude_app_id = {}) const;
  AppMatch find_similar_hashes(std::span<const PerceptualHash> hashes,
                               std::string_view exclude_app_id = {}) const;

  // `PHIDX 1` header, then one `app_id<TAB>screenshot_id<TAB>hash_hex16`
  // line per entry. Throws Error{kUnsupportedVersion} or
  // Error{kMalformedIndex}.
  std::string serialize() const;
  static SimilarityIndex parse(std::string_view text);

 private:
  std::vector<IndexEntry> entries_;
  MvpTree tree_;
};

// Hashes every `<root>/<app_id>/<screenshot_id>.pgm`, app ids and
// screenshot ids in lexicographic order. Hashing is partitioned across
// `workers` threads; the result is identical for any worker count.
std::vector<IndexEntry> hash_corpus_dir(const std::filesystem::path& root,
                                        int workers = 1);

}  // namespace puppet

#endif  // PUPPET_INDEX_HPP_
