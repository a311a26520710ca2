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

// Hierarchy builders and random generators shared by the test suites.

#ifndef PUPPET_TESTS_FIXTURES_HPP_
#define PUPPET_TESTS_FIXTURES_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "puppet/view.hpp"

namespace puppet::testing {

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    auto base = std::filesystem::temp_directory_path();
    path_ = base / ("puppet_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline ViewNode node(std::string class_name, Rect bounds, ConsumePolicy policy,
                     std::vector<ViewNode> children = {}) {
  static std::uint32_t counter = 1;
  ViewNode n;
  n.class_name = std::move(class_name);
  n.hash_code = counter++;
  n.bounds = bounds;
  n.policy = policy;
  n.children = std::move(children);
  return n;
}

inline ViewHierarchy hierarchy(ViewNode root, std::int32_t width = 320,
                               std::int32_t height = 480,
                               std::string activity = "com.fixture.Main") {
  ViewHierarchy h;
  h.activity_name = std::move(activity);
  h.activity_hash = 0xfeedf00d;
  h.screen = {width, height};
  h.root = std::move(root);
  return h;
}

// Random tree with varied policies; used by the dispatch/target property
// tests. With allow_escape, children occasionally extend outside their
// parent (Android gives no containment guarantee); without it, the tree
// is strictly nested, which some invariants require.
inline ViewHierarchy random_hierarchy(std::mt19937& rng,
                                      std::int32_t width = 320,
                                      std::int32_t height = 480,
                                      bool allow_escape = true) {
  static const char* kClasses[] = {"FrameLayout", "LinearLayout", "Button",
                                   "TextView",    "ImageView",    "ListView"};
  std::uniform_int_distribution<int> policy_dist(0, 2);
  std::uniform_int_distribution<int> class_dist(0, 5);
  std::uint32_t counter = 1;

  auto rand_policy = [&] {
    switch (policy_dist(rng)) {
      case 0: return ConsumePolicy::kConsumeByListener;
      case 1: return ConsumePolicy::kConsumeBySelf;
      default: return ConsumePolicy::kPass;
    }
  };

  auto rand_subrect = [&](const Rect& outer) {
    std::uniform_int_distribution<std::int32_t> xd(outer.left, outer.right);
    std::uniform_int_distribution<std::int32_t> yd(outer.top, outer.bottom);
    std::int32_t x0 = xd(rng), x1 = xd(rng);
    std::int32_t y0 = yd(rng), y1 = yd(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    return Rect{x0, y0, x1, y1};
  };

  const Rect screen_rect{0, 0, width, height};
  std::uniform_int_distribution<int> escape_dist(0, 7);

  auto build = [&](auto&& self, const Rect& bounds, int depth) -> ViewNode {
    ViewNode n;
    n.class_name = kClasses[class_dist(rng)];
    n.hash_code = counter++;
    n.bounds = bounds;
    n.policy = rand_policy();
    if (depth > 0) {
      std::uniform_int_distribution<int> child_count(0, 3);
      const int kids = child_count(rng);
      for (int i = 0; i < kids; ++i) {
        const Rect& outer =
            (allow_escape && escape_dist(rng) == 0) ? screen_rect : bounds;
        n.children.push_back(self(self, rand_subrect(outer), depth - 1));
      }
    }
    return n;
  };

  std::uniform_int_distribution<int> depth_dist(1, 4);
  Rect root_bounds = rand_subrect({0, 0, width, height});
  ViewHierarchy h;
  h.activity_name = "com.random.Main";
  h.activity_hash = 0x1234;
  h.screen = {width, height};
  h.root = build(build, root_bounds, depth_dist(rng));
  return h;
}

}  // namespace puppet::testing

#endif  // PUPPET_TESTS_FIXTURES_HPP_
