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

#include "puppet/events.hpp"

#include <string>

#include "puppet/errors.hpp"
#include "text_util.hpp"

namespace puppet {

bool is_valid_event(const InputEvent& event) {
  if (event.timestamp_ms < 0 || event.x < 0 || event.y < 0) return false;
  if (event.type == EventType::kTouch) {
    if (event.key_code != 0) return false;
  } else {
    if (event.x != 0 || event.y != 0) return false;
    if (event.action == EventAction::kMove) return false;
  }
  return true;
}

std::vector<InputEvent> parse_event_log(std::string_view text) {
  std::vector<InputEvent> events;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto fields = detail::split(line, ',');
    if (fields.size() != 6) {
      throw Error(ErrorCode::kMalformedLine,
                  "expected 6 comma-separated fields at line " +
                      std::to_string(line_no),
                  line_no);
    }
    InputEvent ev;
    int type_raw = -1;
    int action_raw = -1;
    if (!detail::parse_int(fields[0], ev.timestamp_ms) ||
        !detail::parse_int(fields[1], type_raw) ||
        !detail::parse_int(fields[2], action_raw) ||
        !detail::parse_int(fields[3], ev.x) ||
        !detail::parse_int(fields[4], ev.y) ||
        !detail::parse_int(fields[5], ev.key_code)) {
      throw Error(ErrorCode::kMalformedLine,
                  "unparsable field at line " + std::to_string(line_no),
                  line_no);
    }
    if (type_raw < 0 || type_raw > 1 || action_raw < 0 || action_raw > 2) {
      throw Error(ErrorCode::kMalformedLine,
                  "event_type/action out of range at line " +
                      std::to_string(line_no),
                  line_no);
    }
    ev.type = static_cast<EventType>(type_raw);
    ev.action = static_cast<EventAction>(action_raw);
    if (!is_valid_event(ev)) {
      throw Error(ErrorCode::kMalformedLine,
                  "event violates field constraints at line " +
                      std::to_string(line_no),
                  line_no);
    }
    if (!events.empty() && ev.timestamp_ms < events.back().timestamp_ms) {
      throw Error(ErrorCode::kNonMonotonicTimestamp,
                  "timestamp decreases at line " + std::to_string(line_no),
                  line_no);
    }
    events.push_back(ev);
  });
  return events;
}

std::string serialize_event_log(const std::vector<InputEvent>& events) {
  std::string out;
  for (const InputEvent& ev : events) {
    out += std::to_string(ev.timestamp_ms);
    out += ',';
    out += std::to_string(static_cast<int>(ev.type));
    out += ',';
    out += std::to_string(static_cast<int>(ev.action));
    out += ',';
    out += std::to_string(ev.x);
    out += ',';
    out += std::to_string(ev.y);
    out += ',';
    out += std::to_string(ev.key_code);
    out += '\n';
  }
  return out;
}

std::vector<std::size_t> unpaired_down_indices(
    const std::vector<InputEvent>& events) {
  std::vector<std::size_t> unpaired;
  std::size_t open_down = 0;
  bool gesture_open = false;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const InputEvent& ev = events[i];
    if (ev.type != EventType::kTouch) continue;
    if (ev.action == EventAction::kDown) {
      if (gesture_open) unpaired.push_back(open_down);
      open_down = i;
      gesture_open = true;
    } else if (ev.action == EventAction::kUp) {
      gesture_open = false;
    }
  }
  if (gesture_open) unpaired.push_back(open_down);
  return unpaired;
}

}  // namespace puppet
