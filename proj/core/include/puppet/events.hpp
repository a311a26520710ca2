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

#ifndef PUPPET_EVENTS_HPP_
#define PUPPET_EVENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace puppet {

enum class EventType : int { kTouch = 0, kKey = 1 };
enum class EventAction : int { kUp = 0, kDown = 1, kMove = 2 };

// One timestamped pointer or key event. Touch events carry screen
// coordinates and a zero key code; key events carry a keysym and zero
// coordinates. Timestamps are milliseconds since session start.
struct InputEvent {
  std::int64_t timestamp_ms = 0;
  EventType type = EventType::kTouch;
  EventAction action = EventAction::kDown;
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::uint32_t key_code = 0;

  bool operator==(const InputEvent&) const = default;
};

// Field constraints for a single event: non-negative timestamp and
// coordinates, touch events with key_code 0, key events with x = y = 0,
// and Move restricted to touch events.
bool is_valid_event(const InputEvent& event);

// Parses a line-oriented event log. One record per line with columns
// `timestamp,event_type,action,x,y,key_code`; `#` starts a comment line and
// blank lines are skipped. Timestamps must be non-decreasing.
//
// Throws Error{kMalformedLine} or Error{kNonMonotonicTimestamp} with the
// 1-based line number.
std::vector<InputEvent> parse_event_log(std::string_view text);

// Inverse of parse_event_log: one CSV line per event, LF terminated.
std::string serialize_event_log(const std::vector<InputEvent>& events);

// Indices of Down touch events that have no matching Up before the next
// Down touch event (or the end of the log). Truncated logs are legal, so
// callers report these as warnings rather than rejecting the log.
std::vector<std::size_t> unpaired_down_indices(
    const std::vector<InputEvent>& events);

}  // namespace puppet

#endif  // PUPPET_EVENTS_HPP_
