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

#include "puppet/dispatch.hpp"

#include <utility>

#include "puppet/errors.hpp"

namespace puppet {

namespace {

struct Dispatcher {
  std::int32_t x;
  std::int32_t y;
  ViewPath current;
  std::optional<ViewConsumer> consumer;

  // Returns true once the event is consumed somewhere in `node`'s subtree.
  bool dispatch(const ViewNode& node, std::size_t ordinal) {
    current.push_back({node.class_name, ordinal});

    // Children first, topmost (last in drawing order) to bottom.
    for (std::size_t i = node.children.size(); i-- > 0;) {
      const ViewNode& child = node.children[i];
      if (!child.bounds.contains(x, y)) continue;
      std::size_t child_ordinal = 0;
      for (std::size_t j = 0; j < i; ++j) {
        if (node.children[j].class_name == child.class_name) ++child_ordinal;
      }
      if (dispatch(child, child_ordinal)) {
        current.pop_back();
        return true;
      }
    }

    // The root is the only node reached without a containment check; it
    // must not consume a point it does not contain.
    if (node.bounds.contains(x, y)) {
      if (node.policy == ConsumePolicy::kConsumeByListener) {
        consumer = ViewConsumer{current, ConsumeVia::kListener};
        current.pop_back();
        return true;
      }
      if (node.policy == ConsumePolicy::kConsumeBySelf) {
        consumer = ViewConsumer{current, ConsumeVia::kSelf};
        current.pop_back();
        return true;
      }
    }
    current.pop_back();
    return false;
  }
};

}  // namespace

ConsumptionResult dispatch_touch(const ViewHierarchy& hierarchy,
                                 std::int32_t x, std::int32_t y) {
  Dispatcher dispatcher{x, y, {}, std::nullopt};
  dispatcher.dispatch(hierarchy.root, 0);
  ConsumptionResult result;
  result.view = std::move(dispatcher.consumer);
  return result;
}

std::string consumption_to_string(const ConsumptionResult& result) {
  if (result.by_activity()) return "activity";
  std::string out = "view:";
  out += result.view->via == ConsumeVia::kListener ? "listener" : "self";
  out += ':';
  out += path_to_string(result.view->path);
  return out;
}

ConsumptionResult consumption_from_string(std::string_view text) {
  ConsumptionResult result;
  if (text == "activity") return result;
  if (text.starts_with("view:listener:")) {
    result.view = ViewConsumer{path_from_string(text.substr(14)),
                               ConsumeVia::kListener};
    return result;
  }
  if (text.starts_with("view:self:")) {
    result.view =
        ViewConsumer{path_from_string(text.substr(10)), ConsumeVia::kSelf};
    return result;
  }
  throw Error(ErrorCode::kMalformedTrace,
              "bad consumer '" + std::string(text) + "'");
}

}  // namespace puppet
