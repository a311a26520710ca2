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

#ifndef PUPPET_VIEW_HPP_
#define PUPPET_VIEW_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace puppet {

// Absolute screen rectangle. All four edges are inclusive, so a point on
// the right or bottom edge is inside and ratios span the closed [0,1].
struct Rect {
  std::int32_t left = 0;
  std::int32_t top = 0;
  std::int32_t right = 0;
  std::int32_t bottom = 0;

  std::int32_t width() const { return right - left; }
  std::int32_t height() const { return bottom - top; }
  bool contains(std::int32_t x, std::int32_t y) const {
    return x >= left && x <= right && y >= top && y <= bottom;
  }

  bool operator==(const Rect&) const = default;
};

enum class ConsumePolicy { kConsumeByListener, kConsumeBySelf, kPass };

// One view object: class, identity hash, absolute bounds, children in
// drawing order (later = on top), and whether it consumes touch events.
struct ViewNode {
  std::string class_name;
  std::uint32_t hash_code = 0;
  Rect bounds;
  ConsumePolicy policy = ConsumePolicy::kPass;
  std::vector<ViewNode> children;

  bool operator==(const ViewNode&) const = default;
};

struct ScreenSize {
  std::int32_t width = 0;
  std::int32_t height = 0;

  bool operator==(const ScreenSize&) const = default;
};

// The view tree of one focused window.
struct ViewHierarchy {
  std::string activity_name;
  std::uint32_t activity_hash = 0;
  ScreenSize screen;
  ViewNode root;

  bool operator==(const ViewHierarchy&) const = default;
};

// One step of a view path: class name plus the ordinal among siblings of
// the same class. Hash codes are deliberately not part of the path; they
// differ across repackaged variants of the same layout while the class
// structure is shared.
struct PathSegment {
  std::string class_name;
  std::size_t class_ordinal = 0;

  bool operator==(const PathSegment&) const = default;
};

// Root-first list of segments; the first segment names the root itself.
using ViewPath = std::vector<PathSegment>;

// `Class:ordinal/Class:ordinal` with `%`-escaping of reserved characters.
std::string path_to_string(const ViewPath& path);
ViewPath path_from_string(std::string_view text);

// Parses a hierarchy dump:
//   line 1:  ACTIVITY <name> <hash_hex> <width>x<height>
//   line 2+: one node per line, depth encoded as one leading space per
//            level, then `<class>@<hash_hex> bounds=<l>,<t>,<r>,<b>
//            policy=<listener|self|pass>`
// Throws Error{kEmptyDump}, Error{kMalformedDump} or Error{kDanglingIndent}
// with the 1-based line number.
ViewHierarchy parse_hierarchy_dump(std::string_view text);
std::string serialize_hierarchy_dump(const ViewHierarchy& hierarchy);

// Deepest view whose bounds contain (x,y); ties at equal depth go to the
// node reached through the higher child index at the first differing
// ancestor, i.e. the topmost in drawing order. Throws
// Error{kNoContainingView} when no node contains the point.
ViewPath find_target_view(const ViewHierarchy& hierarchy, std::int32_t x,
                          std::int32_t y);

// Walks the path from the root, matching class name and class ordinal per
// segment. Throws Error{kPathNotFound} carrying the failing segment index.
const ViewNode& resolve_path(const ViewHierarchy& hierarchy,
                             const ViewPath& path);

// Position of a point within bounds, each component in [0,1].
struct Ratio {
  double rx = 0.0;
  double ry = 0.0;

  bool operator==(const Ratio&) const = default;
};

// rx = (x-left)/width, ry = (y-top)/height. Throws
// Error{kDegenerateBounds} for zero-area bounds and Error{kPointOutside}
// when the point is not contained.
Ratio compute_ratio(const Rect& bounds, std::int32_t x, std::int32_t y);

}  // namespace puppet

#endif  // PUPPET_VIEW_HPP_
