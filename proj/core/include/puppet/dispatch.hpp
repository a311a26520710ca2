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

#ifndef PUPPET_DISPATCH_HPP_
#define PUPPET_DISPATCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "puppet/view.hpp"

namespace puppet {

enum class ConsumeVia { kListener, kSelf };

struct ViewConsumer {
  ViewPath path;
  ConsumeVia via = ConsumeVia::kListener;

  bool operator==(const ViewConsumer&) const = default;
};

// Where a touch ended up: a consuming view, or the activity fallback when
// the whole tree passed the event back.
struct ConsumptionResult {
  std::optional<ViewConsumer> view;

  bool by_activity() const { return !view.has_value(); }

  bool operator==(const ConsumptionResult&) const = default;
};

// Routes a touch through the hierarchy:
//   1. the event enters at the root;
//   2. a node first offers the event to its children in reverse drawing
//      order, recursing into each child whose bounds contain the point and
//      stopping at the first child subtree that consumes;
//   3. if no child consumed, the node itself consumes via its listener,
//      then via its own touch handler, and otherwise passes back;
//   4. if the root subtree passed, the activity consumes.
// A node consumes only if its bounds contain the point; this matters only
// for the root, which is the one node entered without a containment check.
ConsumptionResult dispatch_touch(const ViewHierarchy& hierarchy,
                                 std::int32_t x, std::int32_t y);

// `activity` | `view:listener:<path>` | `view:self:<path>`.
std::string consumption_to_string(const ConsumptionResult& result);
ConsumptionResult consumption_from_string(std::string_view text);

}  // namespace puppet

#endif  // PUPPET_DISPATCH_HPP_
