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

#ifndef PUPPET_TRACE_HPP_
#define PUPPET_TRACE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "puppet/dispatch.hpp"
#include "puppet/events.hpp"
#include "puppet/view.hpp"

namespace puppet {

// One recorded event bound to the window it hit. Touch steps additionally
// carry the target-view path, the dispatch consumer, the relative ratio and
// the target bounds at recording time; key steps carry activity info only.
struct StimulationStep {
  InputEvent event;
  std::string activity_name;
  std::uint32_t activity_hash = 0;

  // Touch-only fields. `target_missing` marks touch events whose point was
  // inside the screen but outside every view at recording time; such steps
  // have an empty target_path and default bounds/ratio.
  ViewPath target_path;
  Rect recorded_bounds;
  Ratio ratio;
  ConsumptionResult consumer;
  bool target_missing = false;

  bool is_touch() const { return event.type == EventType::kTouch; }

  bool operator==(const StimulationStep&) const = default;
};

struct StimulationTrace {
  std::string app_id;
  ScreenSize source_screen;
  std::vector<StimulationStep> steps;

  bool operator==(const StimulationTrace&) const = default;
};

// Yields the hierarchy of the focused window at a given timestamp. Throws
// Error{kFocusUnavailable} when none is known.
using FocusedHierarchyFn =
    std::function<const ViewHierarchy&(std::int64_t timestamp_ms)>;

// Correlates an event stream with per-window hierarchies. For each touch
// event: target = find_target_view, ratio against the target bounds, and
// the dispatch consumer. A gesture's consumer is decided at Down; Move and
// Up inside the same gesture reuse it without re-dispatch. Touch points
// outside every view produce a step with target_missing set rather than an
// error.
StimulationTrace record_trace(const std::vector<InputEvent>& events,
                              const FocusedHierarchyFn& focused,
                              std::string app_id);

// Versioned line-oriented text form; serialize and parse are mutually
// inverse and byte-stable. Throws Error{kUnsupportedVersion} or
// Error{kMalformedTrace} with the 1-based line number.
std::string serialize_trace(const StimulationTrace& trace);
StimulationTrace parse_trace(std::string_view text);

// Directory of `<timestamp_ms>.hier` dumps. The dump in effect at time t is
// the latest dump with timestamp <= t.
class DumpDirectory {
 public:
  static DumpDirectory load(const std::filesystem::path& dir);

  // Throws Error{kFocusUnavailable} if every dump is newer than t.
  const ViewHierarchy& at_time(std::int64_t timestamp_ms) const;

  std::size_t size() const { return dumps_.size(); }
  bool empty() const { return dumps_.empty(); }

  // Binds at_time; the DumpDirectory must outlive the returned function.
  FocusedHierarchyFn as_focus_fn() const;

 private:
  std::vector<std::pair<std::int64_t, ViewHierarchy>> dumps_;
};

}  // namespace puppet

#endif  // PUPPET_TRACE_HPP_
