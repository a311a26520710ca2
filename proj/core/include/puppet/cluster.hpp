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

#ifndef PUPPET_CLUSTER_HPP_
#define PUPPET_CLUSTER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "puppet/phash.hpp"

namespace puppet {

// DBSCAN output. Clusters and noise partition the input indices; every
// cluster has at least min_size members. Clusters are ordered by their
// lowest member index, members ascending.
struct ClusterSet {
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> noise;
  int eps = 0;
  std::size_t min_size = 2;
};

// Density-based clustering over hamming distance. Deterministic: points
// are visited in ascending index order and border points attach to the
// first core point that reaches them. A point's eps-neighborhood includes
// itself, so with min_pts = 2 the clusters are exactly the connected
// components (size >= 2) of the graph joining pairs at distance <= eps.
// Neighborhood rows may be computed across `workers` threads; the result
// is identical for any worker count.
ClusterSet dbscan(std::span<const PerceptualHash> hashes, int eps,
                  std::size_t min_pts, int workers = 1);

// Per-eps clustering metrics. Noise is excluded from every metric;
// undefined values (no clusters, or fewer than two clusters for the inter
// distance) are absent.
struct SweepRow {
  int eps = 0;
  std::size_t num_clusters = 0;
  std::optional<double> avg_cluster_size;
  // Mean pairwise hamming within a cluster, averaged over clusters.
  std::optional<double> avg_intra_distance;
  // Mean pairwise hamming between cluster medoids; the medoid is the
  // member minimizing its summed distance to the rest of the cluster,
  // lowest index on ties.
  std::optional<double> avg_inter_distance;
};

// Runs dbscan once per eps value (which must be ascending).
std::vector<SweepRow> sweep(std::span<const PerceptualHash> hashes,
                            std::span<const int> eps_values,
                            std::size_t min_pts = 2, int workers = 1);

// Size of the most frequent label over the total count, in (0,1].
// Throws Error{kEmptyCluster} for an empty list.
double homogeneity(std::span<const std::string> labels);

// One line of comma-separated entry indices per cluster, then one
// `noise:`-prefixed line when noise exists.
std::string serialize_clusters(const ClusterSet& set);
ClusterSet parse_clusters(std::string_view text, int eps,
                          std::size_t min_size);

}  // namespace puppet

#endif  // PUPPET_CLUSTER_HPP_
