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

// Independent reference implementations the production code is checked
// against. These deliberately use different structure (collect-then-sort,
// explicit work lists, union-find) from the library so a shared bug is
// unlikely.

#ifndef PUPPET_TESTS_ORACLES_HPP_
#define PUPPET_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "puppet/dispatch.hpp"
#include "puppet/phash.hpp"
#include "puppet/view.hpp"

namespace puppet::testing {

// ---- deepest-rightmost target ----------------------------------------

struct TargetCandidate {
  std::size_t depth = 0;
  std::vector<std::size_t> index_path;
  ViewPath view_path;
};

inline std::size_t class_ordinal_of(const ViewNode& parent,
                                    std::size_t child_index) {
  std::size_t ordinal = 0;
  for (std::size_t j = 0; j < child_index; ++j) {
    if (parent.children[j].class_name ==
        parent.children[child_index].class_name) {
      ++ordinal;
    }
  }
  return ordinal;
}

// Enumerates every node that contains the point and picks the maximum of
// (depth, index path) with the index path compared lexicographically.
inline std::optional<ViewPath> brute_force_target(const ViewHierarchy& h,
                                                  std::int32_t x,
                                                  std::int32_t y) {
  std::vector<TargetCandidate> candidates;

  auto walk = [&](auto&& self, const ViewNode& n, std::size_t depth,
                  std::vector<std::size_t> idx_path) -> void {
    if (n.bounds.contains(x, y)) {
      candidates.push_back({depth, idx_path, {}});
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      auto child_idx = idx_path;
      child_idx.push_back(i);
      self(self, n.children[i], depth + 1, std::move(child_idx));
    }
  };
  walk(walk, h.root, 0, {});
  if (candidates.empty()) return std::nullopt;

  const auto best = std::max_element(
      candidates.begin(), candidates.end(),
      [](const TargetCandidate& a, const TargetCandidate& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.index_path < b.index_path;
      });

  ViewPath path;
  const ViewNode* cursor = &h.root;
  path.push_back({cursor->class_name, 0});
  for (std::size_t idx : best->index_path) {
    path.push_back(
        {cursor->children[idx].class_name, class_ordinal_of(*cursor, idx)});
    cursor = &cursor->children[idx];
  }
  return path;
}

// ---- reference touch dispatcher ---------------------------------------

// Materializes the full dispatch check order (children reversed, each node
// checked after its children, child subtrees entered only when containing
// the point), then takes the first node in that order that both contains
// the point and has a consuming policy.
inline ConsumptionResult reference_dispatch(const ViewHierarchy& h,
                                            std::int32_t x, std::int32_t y) {
  struct Visit {
    const ViewNode* node;
    ViewPath path;
  };
  std::vector<Visit> check_order;

  auto expand = [&](auto&& self, const ViewNode& n,
                    const ViewPath& path_to_n) -> void {
    for (std::size_t i = n.children.size(); i-- > 0;) {
      const ViewNode& child = n.children[i];
      if (!child.bounds.contains(x, y)) continue;
      ViewPath child_path = path_to_n;
      child_path.push_back({child.class_name, class_ordinal_of(n, i)});
      self(self, child, child_path);
    }
    check_order.push_back({&n, path_to_n});
  };
  expand(expand, h.root, {{h.root.class_name, 0}});

  for (const Visit& v : check_order) {
    if (!v.node->bounds.contains(x, y)) continue;
    if (v.node->policy == ConsumePolicy::kPass) continue;
    ConsumptionResult result;
    result.view = ViewConsumer{
        v.path, v.node->policy == ConsumePolicy::kConsumeByListener
                    ? ConsumeVia::kListener
                    : ConsumeVia::kSelf};
    return result;
  }
  return ConsumptionResult{};
}

// ---- eps-graph connected components ------------------------------------

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Connected components of the graph joining hash pairs at distance <= eps;
// components of size 1 are noise. Sorted like ClusterSet for comparison.
struct Components {
  std::vector<std::vector<std::size_t>> clusters;  // members ascending
  std::vector<std::size_t> noise;
};

inline Components eps_graph_components(std::span<const PerceptualHash> hashes,
                                       int eps) {
  UnionFind uf(hashes.size());
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    for (std::size_t j = i + 1; j < hashes.size(); ++j) {
      if (hamming(hashes[i], hashes[j]) <= eps) uf.unite(i, j);
    }
  }
  std::vector<std::vector<std::size_t>> by_root(hashes.size());
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    by_root[uf.find(i)].push_back(i);
  }
  Components out;
  // Order components by their lowest member, matching dbscan's ascending
  // seed visitation.
  std::vector<std::vector<std::size_t>> nonempty;
  for (auto& group : by_root) {
    if (!group.empty()) nonempty.push_back(std::move(group));
  }
  std::sort(nonempty.begin(), nonempty.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (auto& group : nonempty) {
    if (group.size() == 1) {
      out.noise.push_back(group.front());
    } else {
      out.clusters.push_back(std::move(group));
    }
  }
  std::sort(out.noise.begin(), out.noise.end());
  return out;
}

// ---- exhaustive k-NN ----------------------------------------------------

struct ScanHit {
  int distance = 0;
  std::size_t index = 0;

  bool operator==(const ScanHit&) const = default;
};

inline std::vector<ScanHit> linear_scan_knn(
    std::span<const PerceptualHash> points, PerceptualHash query,
    std::size_t k) {
  std::vector<ScanHit> all(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    all[i] = {hamming(points[i], query), i};
  }
  std::sort(all.begin(), all.end(), [](const ScanHit& a, const ScanHit& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.index < b.index;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace puppet::testing

#endif  // PUPPET_TESTS_ORACLES_HPP_
