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

#include "puppet/index.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

#include "puppet/errors.hpp"
#include "puppet/parallel.hpp"
#include "text_util.hpp"

namespace puppet {

namespace {

constexpr std::string_view kIndexMagic = "PHIDX";
constexpr int kIndexVersion = 1;

std::string encode_id(std::string_view id) {
  // Tabs, newlines and other control bytes would break the line format.
  return detail::percent_encode(id, "\t");
}

std::vector<PerceptualHash> hashes_of(const std::vector<IndexEntry>& entries) {
  std::vector<PerceptualHash> hashes;
  hashes.reserve(entries.size());
  for (const IndexEntry& e : entries) hashes.push_back(e.hash);
  return hashes;
}

}  // namespace

SimilarityIndex SimilarityIndex::build(std::vector<IndexEntry> entries) {
  SimilarityIndex index;
  index.entries_ = std::move(entries);
  index.tree_ = MvpTree(hashes_of(index.entries_));
  return index;
}

std::vector<SimilarityIndex::Hit> SimilarityIndex::knn(PerceptualHash query,
                                                       std::size_t k) const {
  if (entries_.empty()) {
    throw Error(ErrorCode::kEmptyIndex, "index has no entries");
  }
  std::vector<Hit> hits;
  for (const MvpTree::Neighbor& n : tree_.knn(query, k)) {
    hits.push_back({n.distance, n.index});
  }
  return hits;
}

SimilarityIndex::AppMatch SimilarityIndex::find_similar_hashes(
    std::span<const PerceptualHash> hashes,
    std::string_view exclude_app_id) const {
  if (entries_.empty()) {
    throw Error(ErrorCode::kEmptyIndex, "index has no entries");
  }
  if (hashes.empty()) {
    throw Error(ErrorCode::kNoScreenshots, "no query screenshots");
  }

  std::size_t excluded = 0;
  for (const IndexEntry& e : entries_) {
    if (!exclude_app_id.empty() && e.app_id == exclude_app_id) ++excluded;
  }
  if (excluded == entries_.size()) {
    throw Error(ErrorCode::kEmptyIndex, "every entry belongs to the source app");
  }

  // Asking for excluded+1 neighbors guarantees at least one foreign hit.
  const std::size_t k = excluded + 1;
  std::optional<std::tuple<int, std::size_t, std::size_t>> best;
  for (std::size_t qi = 0; qi < hashes.size(); ++qi) {
    for (const MvpTree::Neighbor& n : tree_.knn(hashes[qi], k)) {
      if (!exclude_app_id.empty() &&
          entries_[n.index].app_id == exclude_app_id) {
        continue;
      }
      const std::tuple<int, std::size_t, std::size_t> cand{n.distance, qi,
                                                           n.index};
      if (!best || cand < *best) best = cand;
      break;  // neighbors are sorted, the first foreign hit is this query's best
    }
  }

  const auto [distance, qi, entry_index] = *best;
  return AppMatch{entries_[entry_index].app_id, distance, entry_index, qi};
}

SimilarityIndex::AppMatch SimilarityIndex::find_similar_app(
    std::span<const GrayImage> screenshots,
    std::string_view exclude_app_id) const {
  std::vector<PerceptualHash> hashes;
  hashes.reserve(screenshots.size());
  for (const GrayImage& img : screenshots) hashes.push_back(phash(img));
  return find_similar_hashes(hashes, exclude_app_id);
}

std::string SimilarityIndex::serialize() const {
  std::string out = "PHIDX 1\n";
  for (const IndexEntry& e : entries_) {
    out += encode_id(e.app_id);
    out += '\t';
    out += encode_id(e.screenshot_id);
    out += '\t';
    out += hash_to_hex(e.hash);
    out += '\n';
  }
  return out;
}

SimilarityIndex SimilarityIndex::parse(std::string_view text) {
  std::vector<IndexEntry> entries;
  bool saw_header = false;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    if (!saw_header) {
      const auto tokens = detail::split(line, ' ');
      int version = -1;
      if (tokens.size() != 2 || tokens[0] != kIndexMagic ||
          !detail::parse_int(tokens[1], version)) {
        throw Error(ErrorCode::kMalformedIndex,
                    "expected index header at line " + std::to_string(line_no),
                    line_no);
      }
      if (version != kIndexVersion) {
        throw Error(ErrorCode::kUnsupportedVersion,
                    "index version " + std::to_string(version));
      }
      saw_header = true;
      return;
    }
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kMalformedIndex,
                  "expected 3 tab-separated fields at line " +
                      std::to_string(line_no),
                  line_no);
    }
    IndexEntry entry;
    if (!detail::percent_decode(fields[0], entry.app_id) ||
        !detail::percent_decode(fields[1], entry.screenshot_id)) {
      throw Error(ErrorCode::kMalformedIndex,
                  "bad escape at line " + std::to_string(line_no), line_no);
    }
    entry.hash = hash_from_hex(fields[2]);
    entries.push_back(std::move(entry));
  });
  if (!saw_header) {
    throw Error(ErrorCode::kMalformedIndex, "missing index header");
  }
  return build(std::move(entries));
}

std::vector<IndexEntry> hash_corpus_dir(const std::filesystem::path& root,
                                        int workers) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCode::kIoFailure, "not a directory: " + root.string());
  }

  std::vector<fs::path> app_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) app_dirs.push_back(entry.path());
  }
  std::sort(app_dirs.begin(), app_dirs.end());

  std::vector<IndexEntry> entries;
  std::vector<fs::path> files;
  for (const fs::path& app_dir : app_dirs) {
    std::vector<fs::path> shots;
    for (const auto& entry : fs::directory_iterator(app_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
        shots.push_back(entry.path());
      }
    }
    std::sort(shots.begin(), shots.end());
    for (const fs::path& shot : shots) {
      entries.push_back(
          {app_dir.filename().string(), shot.stem().string(), {}});
      files.push_back(shot);
    }
  }

  parallel_for(files.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      entries[i].hash = phash(read_pgm(files[i]));
    }
  });
  return entries;
}

}  // namespace puppet
