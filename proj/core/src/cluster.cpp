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

#include "puppet/cluster.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "puppet/errors.hpp"
#include "puppet/parallel.hpp"
#include "text_util.hpp"

namespace puppet {

namespace {

enum : int { kUnvisited = -1, kNoise = -2 };

std::vector<std::vector<std::uint32_t>> neighbor_rows(
    std::span<const PerceptualHash> hashes, int eps, int workers) {
  std::vector<std::vector<std::uint32_t>> rows(hashes.size());
  parallel_for(hashes.size(), workers,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t i = begin; i < end; ++i) {
                   for (std::size_t j = 0; j < hashes.size(); ++j) {
                     if (j == i) continue;
                     if (hamming(hashes[i], hashes[j]) <= eps) {
                       rows[i].push_back(static_cast<std::uint32_t>(j));
                     }
                   }
                 }
               });
  return rows;
}

double mean_pairwise(std::span<const PerceptualHash> hashes,
                     const std::vector<std::size_t>& members) {
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      total += hamming(hashes[members[a]], hashes[members[b]]);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

std::size_t medoid_of(std::span<const PerceptualHash> hashes,
                      const std::vector<std::size_t>& members) {
  std::size_t best = members[0];
  long best_sum = -1;
  for (std::size_t candidate : members) {
    long sum = 0;
    for (std::size_t other : members) {
      sum += hamming(hashes[candidate], hashes[other]);
    }
    if (best_sum < 0 || sum < best_sum) {
      best_sum = sum;
      best = candidate;  // members ascend, so ties keep the lowest index
    }
  }
  return best;
}

}  // namespace

ClusterSet dbscan(std::span<const PerceptualHash> hashes, int eps,
                  std::size_t min_pts, int workers) {
  if (eps < 0 || eps > 64) throw std::invalid_argument("eps must be in [0,64]");
  if (min_pts < 2) throw std::invalid_argument("min_pts must be >= 2");

  const auto neighbors = neighbor_rows(hashes, eps, workers);
  std::vector<int> state(hashes.size(), kUnvisited);

  ClusterSet result;
  result.eps = eps;
  result.min_size = min_pts;

  // A point's eps-neighborhood includes itself, hence the +1.
  auto is_core = [&](std::size_t i) {
    return neighbors[i].size() + 1 >= min_pts;
  };

  for (std::size_t i = 0; i < hashes.size(); ++i) {
    if (state[i] != kUnvisited) continue;
    if (!is_core(i)) {
      state[i] = kNoise;  // may still be claimed later as a border point
      continue;
    }
    const int cluster_id = static_cast<int>(result.clusters.size());
    std::vector<std::size_t> members{i};
    state[i] = cluster_id;
    std::deque<std::uint32_t> frontier(neighbors[i].begin(),
                                       neighbors[i].end());
    while (!frontier.empty()) {
      const std::size_t j = frontier.front();
      frontier.pop_front();
      if (state[j] == kNoise) {
        state[j] = cluster_id;  // border point
        members.push_back(j);
        continue;
      }
      if (state[j] != kUnvisited) continue;
      state[j] = cluster_id;
      members.push_back(j);
      if (is_core(j)) {
        frontier.insert(frontier.end(), neighbors[j].begin(),
                        neighbors[j].end());
      }
    }
    std::sort(members.begin(), members.end());
    result.clusters.push_back(std::move(members));
  }

  for (std::size_t i = 0; i < hashes.size(); ++i) {
    if (state[i] == kNoise) result.noise.push_back(i);
  }
  return result;
}

std::vector<SweepRow> sweep(std::span<const PerceptualHash> hashes,
                            std::span<const int> eps_values,
                            std::size_t min_pts, int workers) {
  for (std::size_t i = 1; i < eps_values.size(); ++i) {
    if (eps_values[i] <= eps_values[i - 1]) {
      throw std::invalid_argument("eps values must be ascending");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(eps_values.size());
  for (int eps : eps_values) {
    const ClusterSet set = dbscan(hashes, eps, min_pts, workers);
    SweepRow row;
    row.eps = eps;
    row.num_clusters = set.clusters.size();
    if (!set.clusters.empty()) {
      double size_total = 0.0;
      double intra_total = 0.0;
      std::vector<std::size_t> medoids;
      medoids.reserve(set.clusters.size());
      for (const auto& members : set.clusters) {
        size_total += static_cast<double>(members.size());
        intra_total += mean_pairwise(hashes, members);
        medoids.push_back(medoid_of(hashes, members));
      }
      row.avg_cluster_size =
          size_total / static_cast<double>(set.clusters.size());
      row.avg_intra_distance =
          intra_total / static_cast<double>(set.clusters.size());
      if (medoids.size() >= 2) {
        double inter_total = 0.0;
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < medoids.size(); ++a) {
          for (std::size_t b = a + 1; b < medoids.size(); ++b) {
            inter_total += hamming(hashes[medoids[a]], hashes[medoids[b]]);
            ++pairs;
          }
        }
        row.avg_inter_distance = inter_total / static_cast<double>(pairs);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

double homogeneity(std::span<const std::string> labels) {
  if (labels.empty()) {
    throw Error(ErrorCode::kEmptyCluster, "homogeneity of an empty cluster");
  }
  std::map<std::string_view, std::size_t> counts;
  for (const std::string& label : labels) ++counts[label];
  std::size_t most = 0;
  for (const auto& [label, count] : counts) most = std::max(most, count);
  return static_cast<double>(most) / static_cast<double>(labels.size());
}

std::string serialize_clusters(const ClusterSet& set) {
  std::string out;
  for (const auto& members : set.clusters) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(members[i]);
    }
    out += '\n';
  }
  if (!set.noise.empty()) {
    out += "noise:";
    for (std::size_t i = 0; i < set.noise.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(set.noise[i]);
    }
    out += '\n';
  }
  return out;
}

ClusterSet parse_clusters(std::string_view text, int eps,
                          std::size_t min_size) {
  ClusterSet set;
  set.eps = eps;
  set.min_size = min_size;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    const bool noise = line.starts_with("noise:");
    if (noise) line.remove_prefix(6);
    std::vector<std::size_t> members;
    if (!line.empty()) {
      for (std::string_view token : detail::split(line, ',')) {
        std::size_t value = 0;
        if (!detail::parse_int(token, value)) {
          throw Error(ErrorCode::kMalformedLine,
                      "bad cluster index at line " + std::to_string(line_no),
                      line_no);
        }
        members.push_back(value);
      }
    }
    if (noise) {
      set.noise = std::move(members);
    } else {
      set.clusters.push_back(std::move(members));
    }
  });
  return set;
}

}  // namespace puppet
