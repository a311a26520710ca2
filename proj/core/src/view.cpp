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

#include "puppet/view.hpp"

#include <cstdio>
#include <set>
#include <utility>

#include "puppet/errors.hpp"
#include "text_util.hpp"

namespace puppet {

namespace {

std::string encode_name(std::string_view name) {
  return detail::encode_token(name);
}

std::string decode_name(std::string_view token, ErrorCode code,
                        std::size_t line_no) {
  std::string out;
  if (!detail::percent_decode(token, out)) {
    throw Error(code, "bad escape in name at line " + std::to_string(line_no),
                line_no);
  }
  return out;
}

std::string hex32(std::uint32_t value) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x", value);
  return buf;
}

const char* policy_name(ConsumePolicy policy) {
  switch (policy) {
    case ConsumePolicy::kConsumeByListener: return "listener";
    case ConsumePolicy::kConsumeBySelf: return "self";
    case ConsumePolicy::kPass: return "pass";
  }
  return "pass";
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kMalformedDump,
              what + " at line " + std::to_string(line_no), line_no);
}

// `<class>@<hash_hex> bounds=<l>,<t>,<r>,<b> policy=<listener|self|pass>`
ViewNode parse_node_line(std::string_view body, std::size_t line_no) {
  ViewNode node;
  const auto tokens = detail::split(body, ' ');
  if (tokens.size() != 3) malformed(line_no, "expected 3 node fields");

  const std::size_t at = tokens[0].rfind('@');
  if (at == std::string_view::npos || at == 0) {
    malformed(line_no, "missing @hash in node");
  }
  node.class_name =
      decode_name(tokens[0].substr(0, at), ErrorCode::kMalformedDump, line_no);
  if (!detail::parse_int(tokens[0].substr(at + 1), node.hash_code, 16)) {
    malformed(line_no, "bad node hash");
  }

  if (!tokens[1].starts_with("bounds=")) malformed(line_no, "missing bounds=");
  const auto coords = detail::split(tokens[1].substr(7), ',');
  if (coords.size() != 4 || !detail::parse_int(coords[0], node.bounds.left) ||
      !detail::parse_int(coords[1], node.bounds.top) ||
      !detail::parse_int(coords[2], node.bounds.right) ||
      !detail::parse_int(coords[3], node.bounds.bottom)) {
    malformed(line_no, "bad bounds");
  }
  if (node.bounds.left > node.bounds.right ||
      node.bounds.top > node.bounds.bottom) {
    malformed(line_no, "inverted bounds");
  }

  if (!tokens[2].starts_with("policy=")) malformed(line_no, "missing policy=");
  const std::string_view policy = tokens[2].substr(7);
  if (policy == "listener") {
    node.policy = ConsumePolicy::kConsumeByListener;
  } else if (policy == "self") {
    node.policy = ConsumePolicy::kConsumeBySelf;
  } else if (policy == "pass") {
    node.policy = ConsumePolicy::kPass;
  } else {
    malformed(line_no, "unknown policy");
  }
  return node;
}

void serialize_node(const ViewNode& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth), ' ');
  out += encode_name(node.class_name);
  out += '@';
  out += hex32(node.hash_code);
  out += " bounds=";
  out += std::to_string(node.bounds.left);
  out += ',';
  out += std::to_string(node.bounds.top);
  out += ',';
  out += std::to_string(node.bounds.right);
  out += ',';
  out += std::to_string(node.bounds.bottom);
  out += " policy=";
  out += policy_name(node.policy);
  out += '\n';
  for (const ViewNode& child : node.children) {
    serialize_node(child, depth + 1, out);
  }
}

}  // namespace

std::string path_to_string(const ViewPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += '/';
    out += encode_name(path[i].class_name);
    out += ':';
    out += std::to_string(path[i].class_ordinal);
  }
  return out;
}

ViewPath path_from_string(std::string_view text) {
  ViewPath path;
  if (text.empty()) return path;
  for (std::string_view seg : detail::split(text, '/')) {
    const std::size_t colon = seg.rfind(':');
    PathSegment segment;
    if (colon == std::string_view::npos || colon == 0 ||
        !detail::parse_int(seg.substr(colon + 1), segment.class_ordinal)) {
      throw Error(ErrorCode::kMalformedTrace,
                  "bad path segment '" + std::string(seg) + "'");
    }
    std::string name;
    if (!detail::percent_decode(seg.substr(0, colon), name)) {
      throw Error(ErrorCode::kMalformedTrace, "bad escape in path segment");
    }
    segment.class_name = std::move(name);
    path.push_back(std::move(segment));
  }
  return path;
}

ViewHierarchy parse_hierarchy_dump(std::string_view text) {
  ViewHierarchy hierarchy;
  bool saw_header = false;
  bool saw_root = false;
  // Nodes on the current spine, one per depth level.
  std::vector<ViewNode*> spine;
  std::set<std::pair<std::string, std::uint32_t>> identities;

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    if (!saw_header) {
      const auto tokens = detail::split(line, ' ');
      if (tokens.size() != 4 || tokens[0] != "ACTIVITY") {
        malformed(line_no, "expected ACTIVITY header");
      }
      hierarchy.activity_name =
          decode_name(tokens[1], ErrorCode::kMalformedDump, line_no);
      if (!detail::parse_int(tokens[2], hierarchy.activity_hash, 16)) {
        malformed(line_no, "bad activity hash");
      }
      const auto dims = detail::split(tokens[3], 'x');
      if (dims.size() != 2 ||
          !detail::parse_int(dims[0], hierarchy.screen.width) ||
          !detail::parse_int(dims[1], hierarchy.screen.height) ||
          hierarchy.screen.width <= 0 || hierarchy.screen.height <= 0) {
        malformed(line_no, "bad screen size");
      }
      saw_header = true;
      return;
    }

    std::size_t depth = 0;
    while (depth < line.size() && line[depth] == ' ') ++depth;
    if (depth == line.size()) return;  // whitespace-only line

    ViewNode node = parse_node_line(line.substr(depth), line_no);
    if (!identities.insert({node.class_name, node.hash_code}).second) {
      malformed(line_no, "duplicate (class, hash) identity");
    }

    if (!saw_root) {
      if (depth != 0) {
        throw Error(ErrorCode::kDanglingIndent,
                    "first node must be at depth 0, line " +
                        std::to_string(line_no),
                    line_no);
      }
      const Rect& b = node.bounds;
      if (b.left < 0 || b.top < 0 || b.right > hierarchy.screen.width ||
          b.bottom > hierarchy.screen.height) {
        malformed(line_no, "root bounds outside screen");
      }
      hierarchy.root = std::move(node);
      spine = {&hierarchy.root};
      saw_root = true;
      return;
    }

    if (depth == 0) malformed(line_no, "multiple root nodes");
    if (depth > spine.size()) {
      throw Error(ErrorCode::kDanglingIndent,
                  "indent jumps past parent at line " + std::to_string(line_no),
                  line_no);
    }
    spine.resize(depth);
    ViewNode* parent = spine.back();
    parent->children.push_back(std::move(node));
    spine.push_back(&parent->children.back());
  });

  if (!saw_header || !saw_root) {
    throw Error(ErrorCode::kEmptyDump, "dump has no nodes");
  }
  return hierarchy;
}

std::string serialize_hierarchy_dump(const ViewHierarchy& hierarchy) {
  std::string out = "ACTIVITY ";
  out += encode_name(hierarchy.activity_name);
  out += ' ';
  out += hex32(hierarchy.activity_hash);
  out += ' ';
  out += std::to_string(hierarchy.screen.width);
  out += 'x';
  out += std::to_string(hierarchy.screen.height);
  out += '\n';
  serialize_node(hierarchy.root, 0, out);
  return out;
}

ViewPath find_target_view(const ViewHierarchy& hierarchy, std::int32_t x,
                          std::int32_t y) {
  ViewPath current;
  ViewPath best;
  std::size_t best_depth = 0;
  bool found = false;

  // Pre-order visits index paths in ascending lexicographic order, so among
  // equal-depth candidates the last containing node seen is the rightmost.
  auto visit = [&](auto&& self, const ViewNode& node, std::size_t depth,
                   std::size_t ordinal) -> void {
    current.push_back({node.class_name, ordinal});
    if (node.bounds.contains(x, y) && (!found || depth >= best_depth)) {
      best = current;
      best_depth = depth;
      found = true;
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      std::size_t child_ordinal = 0;
      for (std::size_t j = 0; j < i; ++j) {
        if (node.children[j].class_name == node.children[i].class_name) {
          ++child_ordinal;
        }
      }
      self(self, node.children[i], depth + 1, child_ordinal);
    }
    current.pop_back();
  };
  visit(visit, hierarchy.root, 0, 0);

  if (!found) {
    throw Error(ErrorCode::kNoContainingView,
                "no view contains (" + std::to_string(x) + "," +
                    std::to_string(y) + ")");
  }
  return best;
}

const ViewNode& resolve_path(const ViewHierarchy& hierarchy,
                             const ViewPath& path) {
  if (path.empty() || path[0].class_name != hierarchy.root.class_name ||
      path[0].class_ordinal != 0) {
    throw Error(ErrorCode::kPathNotFound, "root segment mismatch", 0);
  }
  const ViewNode* node = &hierarchy.root;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const PathSegment& segment = path[i];
    const ViewNode* next = nullptr;
    std::size_t ordinal = 0;
    for (const ViewNode& child : node->children) {
      if (child.class_name != segment.class_name) continue;
      if (ordinal == segment.class_ordinal) {
        next = &child;
        break;
      }
      ++ordinal;
    }
    if (next == nullptr) {
      throw Error(ErrorCode::kPathNotFound,
                  "no child matches segment " + std::to_string(i), i);
    }
    node = next;
  }
  return *node;
}

Ratio compute_ratio(const Rect& bounds, std::int32_t x, std::int32_t y) {
  if (bounds.width() == 0 || bounds.height() == 0) {
    throw Error(ErrorCode::kDegenerateBounds, "zero-area bounds");
  }
  if (!bounds.contains(x, y)) {
    throw Error(ErrorCode::kPointOutside, "point outside bounds");
  }
  Ratio ratio;
  ratio.rx = static_cast<double>(x - bounds.left) / bounds.width();
  ratio.ry = static_cast<double>(y - bounds.top) / bounds.height();
  return ratio;
}

}  // namespace puppet
