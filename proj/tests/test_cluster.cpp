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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers/oracles.hpp"
#include "puppet/errors.hpp"

namespace puppet {
namespace {

using testing::eps_graph_components;

PerceptualHash with_low_bits(int n) {
  PerceptualHash h;
  for (int i = 0; i < n; ++i) h.bits |= (std::uint64_t{1} << i);
  return h;
}

// Population of tight clusters, uniform noise and exact-boundary pairs so
// the <= eps edge condition is exercised on both sides.
std::vector<PerceptualHash> clustered_population(std::mt19937_64& rng,
                                                 std::size_t n, int eps) {
  std::vector<PerceptualHash> hashes;
  while (hashes.size() < n) {
    const std::uint64_t kind = rng() % 5;
    if (kind == 0) {
      hashes.push_back(PerceptualHash{rng()});
    } else if (kind == 1 && eps > 0) {
      // Pair at exactly the threshold distance.
      const PerceptualHash a{rng()};
      PerceptualHash b = a;
      int flipped = 0;
      while (flipped < eps) {
        const int bit = static_cast<int>(rng() % 64);
        const std::uint64_t mask = std::uint64_t{1} << bit;
        if ((b.bits ^ a.bits) & mask) continue;
        b.bits ^= mask;
        ++flipped;
      }
      hashes.push_back(a);
      if (hashes.size() < n) hashes.push_back(b);
    } else {
      const PerceptualHash center{rng()};
      const std::size_t members = 2 + rng() % 4;
      for (std::size_t i = 0; i < members && hashes.size() < n; ++i) {
        PerceptualHash member = center;
        const int flips = static_cast<int>(rng() % (eps + 2));
        for (int f = 0; f < flips; ++f) {
          member.bits ^= (std::uint64_t{1} << (rng() % 64));
        }
        hashes.push_back(member);
      }
    }
  }
  return hashes;
}

TEST_CASE("three mutually close hashes form one cluster") {
  const std::vector<PerceptualHash> hashes{
      with_low_bits(0), with_low_bits(2), with_low_bits(4)};
  const ClusterSet set = dbscan(hashes, 10, 2);
  REQUIRE(set.clusters.size() == 1);
  CHECK(set.clusters[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(set.noise.empty());
}

TEST_CASE("chains merge transitively") {
  // d(a,b) = d(b,c) = 10 = eps, d(a,c) = 20 > eps; one component.
  PerceptualHash a;
  PerceptualHash b = a;
  for (int i = 0; i < 10; ++i) b.bits |= (std::uint64_t{1} << i);
  PerceptualHash c = b;
  for (int i = 10; i < 20; ++i) c.bits |= (std::uint64_t{1} << i);
  REQUIRE(hamming(a, b) == 10);
  REQUIRE(hamming(b, c) == 10);
  REQUIRE(hamming(a, c) == 20);

  const std::vector<PerceptualHash> hashes{a, b, c};
  const ClusterSet set = dbscan(hashes, 10, 2);
  REQUIRE(set.clusters.size() == 1);
  CHECK(set.clusters[0].size() == 3);
}

TEST_CASE("eps 0 on distinct hashes is all noise") {
  const std::vector<PerceptualHash> hashes{
      PerceptualHash{1}, PerceptualHash{2}, PerceptualHash{4}};
  const ClusterSet set = dbscan(hashes, 0, 2);
  CHECK(set.clusters.empty());
  CHECK(set.noise == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("identical hashes cluster even at eps 0") {
  const std::vector<PerceptualHash> hashes(9, PerceptualHash{0x77});
  const ClusterSet set = dbscan(hashes, 0, 2);
  REQUIRE(set.clusters.size() == 1);
  CHECK(set.clusters[0].size() == 9);
  const auto rows = sweep(hashes, std::vector<int>{0});
  CHECK(rows[0].avg_intra_distance == 0.0);
  CHECK(rows[0].avg_cluster_size == 9.0);
  CHECK_FALSE(rows[0].avg_inter_distance.has_value());
}

TEST_CASE("min_pts 2 equals eps-graph connected components") {
  std::mt19937_64 rng(8080);
  for (int round = 0; round < 6; ++round) {
    for (int eps : {4, 10, 16}) {
      const auto hashes = clustered_population(rng, 500, eps);
      const ClusterSet got = dbscan(hashes, eps, 2);
      const auto expected = eps_graph_components(hashes, eps);
      REQUIRE(got.clusters.size() == expected.clusters.size());
      // dbscan orders clusters by seed index = lowest member, like the
      // oracle; members are ascending in both.
      for (std::size_t i = 0; i < got.clusters.size(); ++i) {
        CHECK(got.clusters[i] == expected.clusters[i]);
      }
      CHECK(got.noise == expected.noise);
    }
  }
}

TEST_CASE("dbscan is deterministic and worker-count independent") {
  std::mt19937_64 rng(4444);
  const auto hashes = clustered_population(rng, 300, 10);
  const ClusterSet serial = dbscan(hashes, 10, 2, 1);
  const ClusterSet parallel = dbscan(hashes, 10, 2, 4);
  CHECK(serial.clusters == parallel.clusters);
  CHECK(serial.noise == parallel.noise);
}

TEST_CASE("min_pts above 2 needs a dense core") {
  // A chain of pairwise-close points: every point has only 2 neighbors
  // (itself + 1), so with min_pts 3 only the middle point of a triple is
  // core.
  PerceptualHash a, b, c;
  for (int i = 0; i < 4; ++i) b.bits |= (std::uint64_t{1} << i);
  for (int i = 0; i < 8; ++i) c.bits |= (std::uint64_t{1} << i);
  // d(a,b)=4, d(b,c)=4, d(a,c)=8.
  const std::vector<PerceptualHash> hashes{a, b, c};
  const ClusterSet set = dbscan(hashes, 4, 3);
  REQUIRE(set.clusters.size() == 1);
  CHECK(set.clusters[0] == std::vector<std::size_t>{0, 1, 2});

  const ClusterSet strict = dbscan(hashes, 4, 4);
  CHECK(strict.clusters.empty());
  CHECK(strict.noise.size() == 3);
}

TEST_CASE("invalid parameters are rejected") {
  const std::vector<PerceptualHash> hashes{PerceptualHash{1}};
  CHECK_THROWS_AS(dbscan(hashes, -1, 2), std::invalid_argument);
  CHECK_THROWS_AS(dbscan(hashes, 65, 2), std::invalid_argument);
  CHECK_THROWS_AS(dbscan(hashes, 10, 1), std::invalid_argument);
  const std::vector<int> bad_eps{10, 10};
  CHECK_THROWS_AS(sweep(hashes, bad_eps), std::invalid_argument);
}

TEST_CASE("sweep metrics on a hand-checkable population") {
  // Cluster A: {0 bits, 2 bits} intra = 2. Cluster B: {40+0, 40+4 shifted}
  // built far away; intra = 4. Medoid distances computed directly.
  PerceptualHash a0;
  PerceptualHash a1 = with_low_bits(2);
  PerceptualHash b0;
  b0.bits = 0xffffffff00000000ULL;
  PerceptualHash b1 = b0;
  b1.bits ^= 0x0f000000ULL;  // 4 extra bits
  const std::vector<PerceptualHash> hashes{a0, a1, b0, b1};
  REQUIRE(hamming(a0, a1) == 2);
  REQUIRE(hamming(b0, b1) == 4);

  const std::vector<int> eps_values{1, 4, 64};
  const auto rows = sweep(hashes, eps_values);
  REQUIRE(rows.size() == 3);

  CHECK(rows[0].eps == 1);
  CHECK(rows[0].num_clusters == 0);
  CHECK_FALSE(rows[0].avg_cluster_size.has_value());
  CHECK_FALSE(rows[0].avg_intra_distance.has_value());
  CHECK_FALSE(rows[0].avg_inter_distance.has_value());

  CHECK(rows[1].num_clusters == 2);
  CHECK(rows[1].avg_cluster_size == 2.0);
  CHECK(rows[1].avg_intra_distance == 3.0);  // (2 + 4) / 2
  // Medoids are the lowest-index members of each pair (tie on summed
  // distance): d(a0, b0) = 32.
  CHECK(rows[1].avg_inter_distance == 32.0);

  CHECK(rows[2].num_clusters == 1);
  CHECK(rows[2].avg_cluster_size == 4.0);
  CHECK_FALSE(rows[2].avg_inter_distance.has_value());
}

TEST_CASE("homogeneity is the most frequent label share") {
  const std::vector<std::string> pure{"a", "a", "a"};
  CHECK(homogeneity(pure) == 1.0);
  const std::vector<std::string> mixed{"a", "a", "b"};
  CHECK(homogeneity(mixed) == doctest::Approx(2.0 / 3.0));
  try {
    homogeneity(std::vector<std::string>{});
    FAIL("expected EmptyCluster");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyCluster);
  }
}

TEST_CASE("cluster files round-trip") {
  std::mt19937_64 rng(123);
  const auto hashes = clustered_population(rng, 120, 10);
  const ClusterSet set = dbscan(hashes, 10, 2);
  const std::string text = serialize_clusters(set);
  const ClusterSet reparsed = parse_clusters(text, set.eps, set.min_size);
  CHECK(reparsed.clusters == set.clusters);
  CHECK(reparsed.noise == set.noise);
  CHECK(serialize_clusters(reparsed) == text);

  CHECK_THROWS_AS(parse_clusters("1,2,x\n", 10, 2), Error);
}

}  // namespace
}  // namespace puppet
