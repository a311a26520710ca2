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

#ifndef PUPPET_MVP_TREE_HPP_
#define PUPPET_MVP_TREE_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "puppet/phash.hpp"

namespace puppet {

// Multi-vantage-point tree over 64-bit hashes under hamming distance.
// Exact: k-NN results are identical, including tie order, to a linear scan
// ordered by (distance, insertion index). Pruning uses the triangle
// inequality only. Two vantage points per internal node, fan-out 4, leaf
// capacity 16; vantage points are the node set's first point and the point
// farthest from it (first such on ties). Parameters affect only speed.
class MvpTree {
 public:
  struct Neighbor {
    int distance = 0;
    std::size_t index = 0;  // insertion index of the point

    bool operator==(const Neighbor&) const = default;
  };

  static constexpr std::size_t kLeafCapacity = 16;

  MvpTree();
  explicit MvpTree(std::span<const PerceptualHash> points);

  MvpTree(MvpTree&&) noexcept;
  MvpTree& operator=(MvpTree&&) noexcept;
  ~MvpTree();

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  // k nearest points, ascending (distance, index); fewer than k when the
  // tree holds fewer points. k must be >= 1.
  std::vector<Neighbor> knn(PerceptualHash query, std::size_t k) const;

 private:
  struct Node;

  std::unique_ptr<Node> build(std::vector<std::size_t> indices);

  std::vector<PerceptualHash> points_;
  std::unique_ptr<Node> root_;
};

}  // namespace puppet

#endif  // PUPPET_MVP_TREE_HPP_
