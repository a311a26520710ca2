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

#include "puppet/mvp_tree.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace puppet {

namespace {

// Distance range of a child's point set to one vantage point.
struct Band {
  int min = 0;
  int max = 0;

  // Smallest distance any point in the band can have to the query, by the
  // triangle inequality.
  int lower_bound(int query_to_vp) const {
    if (query_to_vp < min) return min - query_to_vp;
    if (query_to_vp > max) return query_to_vp - max;
    return 0;
  }
};

}  // namespace

struct MvpTree::Node {
  // Leaf when children are all null.
  std::vector<std::size_t> items;  // leaf payload

  std::size_t vp1 = 0;
  std::size_t vp2 = 0;
  bool internal = false;
  std::array<std::unique_ptr<Node>, 4> children;
  std::array<Band, 4> band1;  // child ranges to vp1
  std::array<Band, 4> band2;  // child ranges to vp2
};

MvpTree::MvpTree() = default;
MvpTree::MvpTree(MvpTree&&) noexcept = default;
MvpTree& MvpTree::operator=(MvpTree&&) noexcept = default;
MvpTree::~MvpTree() = default;

MvpTree::MvpTree(std::span<const PerceptualHash> points)
    : points_(points.begin(), points.end()) {
  std::vector<std::size_t> indices(points_.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  if (!indices.empty()) root_ = build(std::move(indices));
}

std::unique_ptr<MvpTree::Node> MvpTree::build(std::vector<std::size_t> indices) {
  auto node = std::make_unique<Node>();
  if (indices.size() <= kLeafCapacity) {
    node->items = std::move(indices);
    return node;
  }

  node->internal = true;
  node->vp1 = indices[0];
  // Farthest from vp1; first occurrence wins ties, which is the lowest
  // insertion index because subsets keep their original order.
  int far = -1;
  std::size_t far_pos = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    const int d = hamming(points_[node->vp1], points_[indices[i]]);
    if (d > far) {
      far = d;
      far_pos = i;
    }
  }
  node->vp2 = indices[far_pos];

  std::vector<std::size_t> rest;
  rest.reserve(indices.size() - 2);
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (i != far_pos) rest.push_back(indices[i]);
  }

  auto lower_median = [](std::vector<int> values) {
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
  };

  std::vector<int> d1(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    d1[i] = hamming(points_[node->vp1], points_[rest[i]]);
  }
  const int m1 = lower_median(d1);

  std::array<std::vector<std::size_t>, 4> parts;
  for (int half = 0; half < 2; ++half) {
    std::vector<std::size_t> group;
    std::vector<int> d2;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if ((d1[i] <= m1) == (half == 0)) {
        group.push_back(rest[i]);
        d2.push_back(hamming(points_[node->vp2], points_[rest[i]]));
      }
    }
    if (group.empty()) continue;
    const int m2 = lower_median(d2);
    for (std::size_t i = 0; i < group.size(); ++i) {
      parts[half * 2 + (d2[i] <= m2 ? 0 : 1)].push_back(group[i]);
    }
  }

  for (int c = 0; c < 4; ++c) {
    if (parts[c].empty()) continue;
    Band b1{std::numeric_limits<int>::max(), 0};
    Band b2{std::numeric_limits<int>::max(), 0};
    for (std::size_t idx : parts[c]) {
      const int dv1 = hamming(points_[node->vp1], points_[idx]);
      const int dv2 = hamming(points_[node->vp2], points_[idx]);
      b1.min = std::min(b1.min, dv1);
      b1.max = std::max(b1.max, dv1);
      b2.min = std::min(b2.min, dv2);
      b2.max = std::max(b2.max, dv2);
    }
    node->band1[c] = b1;
    node->band2[c] = b2;
    node->children[c] = build(std::move(parts[c]));
  }
  return node;
}

std::vector<MvpTree::Neighbor> MvpTree::knn(PerceptualHash query,
                                            std::size_t k) const {
  if (k == 0) throw std::invalid_argument("knn requires k >= 1");
  std::vector<Neighbor> result;
  if (points_.empty()) return result;

  // Best candidates ordered by (distance, insertion index); identical to a
  // linear scan because a subtree is pruned only when its lower bound is
  // strictly worse than the current k-th candidate.
  std::set<std::pair<int, std::size_t>> best;

  auto consider = [&](std::size_t index) {
    const std::pair<int, std::size_t> cand{hamming(query, points_[index]),
                                           index};
    if (best.size() < k) {
      best.insert(cand);
    } else if (cand < *best.rbegin()) {
      best.insert(cand);
      best.erase(std::prev(best.end()));
    }
  };

  auto visit = [&](auto&& self, const Node& node) -> void {
    if (!node.internal) {
      for (std::size_t idx : node.items) consider(idx);
      return;
    }
    consider(node.vp1);
    consider(node.vp2);
    const int dq1 = hamming(query, points_[node.vp1]);
    const int dq2 = hamming(query, points_[node.vp2]);
    for (int c = 0; c < 4; ++c) {
      if (!node.children[c]) continue;
      const int lb = std::max(node.band1[c].lower_bound(dq1),
                              node.band2[c].lower_bound(dq2));
      if (best.size() == k && lb > best.rbegin()->first) continue;
      self(self, *node.children[c]);
    }
  };
  visit(visit, *root_);

  result.reserve(best.size());
  for (const auto& [distance, index] : best) {
    result.push_back({distance, index});
  }
  return result;
}

}  // namespace puppet
