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

#include "puppet/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "puppet/errors.hpp"
#include "text_util.hpp"

namespace puppet {

namespace {

constexpr std::string_view kTraceMagic = "PUPTRACE";
constexpr int kTraceVersion = 1;

const char* action_name(EventAction action) {
  switch (action) {
    case EventAction::kUp: return "up";
    case EventAction::kDown: return "down";
    case EventAction::kMove: return "move";
  }
  return "down";
}

std::optional<EventAction> action_from(std::string_view name) {
  if (name == "up") return EventAction::kUp;
  if (name == "down") return EventAction::kDown;
  if (name == "move") return EventAction::kMove;
  return std::nullopt;
}

std::string hex32(std::uint32_t value) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x", value);
  return buf;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kMalformedTrace,
              what + " at line " + std::to_string(line_no), line_no);
}

// Per-axis ratio that tolerates degenerate target bounds: on a zero-width
// or zero-height axis the contained coordinate equals the edge, so the
// ratio is pinned to 0.
Ratio ratio_within(const Rect& bounds, std::int32_t x, std::int32_t y) {
  Ratio ratio;
  if (bounds.width() > 0) {
    ratio.rx = static_cast<double>(x - bounds.left) / bounds.width();
  }
  if (bounds.height() > 0) {
    ratio.ry = static_cast<double>(y - bounds.top) / bounds.height();
  }
  return ratio;
}

class FieldMap {
 public:
  FieldMap(std::string_view line, std::size_t line_no, std::size_t skip_tokens)
      : line_no_(line_no) {
    const auto tokens = detail::split(line, ' ');
    for (std::size_t i = skip_tokens; i < tokens.size(); ++i) {
      const std::size_t eq = tokens[i].find('=');
      if (eq == std::string_view::npos || eq == 0) {
        malformed(line_no, "expected key=value token");
      }
      auto [it, inserted] = fields_.emplace(tokens[i].substr(0, eq),
                                            tokens[i].substr(eq + 1));
      if (!inserted) malformed(line_no, "duplicate field");
    }
  }

  std::string_view require(std::string_view key) const {
    auto it = fields_.find(key);
    if (it == fields_.end()) {
      malformed(line_no_, "missing field '" + std::string(key) + "'");
    }
    return it->second;
  }

  bool has(std::string_view key) const { return fields_.contains(key); }

  template <typename T>
  T require_int(std::string_view key) const {
    T value{};
    if (!detail::parse_int(require(key), value)) {
      malformed(line_no_, "bad integer field '" + std::string(key) + "'");
    }
    return value;
  }

 private:
  std::size_t line_no_;
  std::map<std::string_view, std::string_view, std::less<>> fields_;
};

void parse_activity(std::string_view token, std::size_t line_no,
                    std::string& name, std::uint32_t& hash) {
  const std::size_t at = token.rfind('@');
  if (at == std::string_view::npos) malformed(line_no, "bad activity");
  if (!detail::percent_decode(token.substr(0, at), name)) {
    malformed(line_no, "bad activity name escape");
  }
  if (!detail::parse_int(token.substr(at + 1), hash, 16)) {
    malformed(line_no, "bad activity hash");
  }
}

}  // namespace

StimulationTrace record_trace(const std::vector<InputEvent>& events,
                              const FocusedHierarchyFn& focused,
                              std::string app_id) {
  StimulationTrace trace;
  trace.app_id = std::move(app_id);
  trace.steps.reserve(events.size());

  bool screen_known = false;
  // A gesture's consumer is decided at Down; Move/Up inside the gesture
  // reuse it without re-dispatch.
  std::optional<ConsumptionResult> gesture_consumer;

  for (const InputEvent& event : events) {
    const ViewHierarchy& hierarchy = focused(event.timestamp_ms);
    if (!screen_known) {
      trace.source_screen = hierarchy.screen;
      screen_known = true;
    }

    StimulationStep step;
    step.event = event;
    step.activity_name = hierarchy.activity_name;
    step.activity_hash = hierarchy.activity_hash;

    if (event.type == EventType::kTouch) {
      try {
        step.target_path = find_target_view(hierarchy, event.x, event.y);
        const ViewNode& target = resolve_path(hierarchy, step.target_path);
        step.recorded_bounds = target.bounds;
        step.ratio = ratio_within(target.bounds, event.x, event.y);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoContainingView) throw;
        step.target_missing = true;
        step.target_path.clear();
      }
      if (event.action == EventAction::kDown || !gesture_consumer) {
        gesture_consumer = dispatch_touch(hierarchy, event.x, event.y);
      }
      step.consumer = *gesture_consumer;
      if (event.action == EventAction::kUp) gesture_consumer.reset();
    }

    trace.steps.push_back(std::move(step));
  }
  return trace;
}

std::string serialize_trace(const StimulationTrace& trace) {
  std::string out;
  out += kTraceMagic;
  out += ' ';
  out += std::to_string(kTraceVersion);
  out += '\n';
  out += "app ";
  out += detail::encode_token(trace.app_id);
  out += '\n';
  out += "screen ";
  out += std::to_string(trace.source_screen.width);
  out += 'x';
  out += std::to_string(trace.source_screen.height);
  out += '\n';

  for (const StimulationStep& step : trace.steps) {
    const InputEvent& ev = step.event;
    out += "step ";
    out += step.is_touch() ? "touch" : "key";
    out += " t=";
    out += std::to_string(ev.timestamp_ms);
    out += " action=";
    out += action_name(ev.action);
    if (step.is_touch()) {
      out += " x=";
      out += std::to_string(ev.x);
      out += " y=";
      out += std::to_string(ev.y);
    } else {
      out += " key=";
      out += std::to_string(ev.key_code);
    }
    out += " activity=";
    out += detail::encode_token(step.activity_name);
    out += '@';
    out += hex32(step.activity_hash);
    if (step.is_touch()) {
      if (step.target_missing) {
        out += " target=-";
      } else {
        out += " target=";
        out += path_to_string(step.target_path);
        out += " bounds=";
        out += std::to_string(step.recorded_bounds.left);
        out += ',';
        out += std::to_string(step.recorded_bounds.top);
        out += ',';
        out += std::to_string(step.recorded_bounds.right);
        out += ',';
        out += std::to_string(step.recorded_bounds.bottom);
        out += " ratio=";
        out += detail::format_double(step.ratio.rx);
        out += ',';
        out += detail::format_double(step.ratio.ry);
      }
      out += " consumer=";
      out += consumption_to_string(step.consumer);
    }
    out += '\n';
  }
  return out;
}

StimulationTrace parse_trace(std::string_view text) {
  StimulationTrace trace;
  bool saw_header = false;
  bool saw_app = false;
  bool saw_screen = false;

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    const auto tokens = detail::split(line, ' ');
    if (!saw_header) {
      int version = -1;
      if (tokens.size() != 2 || tokens[0] != kTraceMagic ||
          !detail::parse_int(tokens[1], version)) {
        malformed(line_no, "expected trace header");
      }
      if (version != kTraceVersion) {
        throw Error(ErrorCode::kUnsupportedVersion,
                    "trace version " + std::to_string(version));
      }
      saw_header = true;
      return;
    }
    if (tokens[0] == "app") {
      if (tokens.size() != 2 || !detail::percent_decode(tokens[1], trace.app_id)) {
        malformed(line_no, "bad app record");
      }
      saw_app = true;
      return;
    }
    if (tokens[0] == "screen") {
      const auto dims = detail::split(tokens.size() > 1 ? tokens[1] : "", 'x');
      if (tokens.size() != 2 || dims.size() != 2 ||
          !detail::parse_int(dims[0], trace.source_screen.width) ||
          !detail::parse_int(dims[1], trace.source_screen.height) ||
          trace.source_screen.width < 0 || trace.source_screen.height < 0) {
        malformed(line_no, "bad screen record");
      }
      saw_screen = true;
      return;
    }
    if (tokens[0] != "step" || tokens.size() < 2) {
      malformed(line_no, "unexpected record");
    }
    if (!saw_app || !saw_screen) malformed(line_no, "step before header");

    StimulationStep step;
    const bool touch = tokens[1] == "touch";
    if (!touch && tokens[1] != "key") malformed(line_no, "bad step kind");
    step.event.type = touch ? EventType::kTouch : EventType::kKey;

    FieldMap fields(line, line_no, 2);
    step.event.timestamp_ms = fields.require_int<std::int64_t>("t");
    const auto action = action_from(fields.require("action"));
    if (!action) malformed(line_no, "bad action");
    step.event.action = *action;
    parse_activity(fields.require("activity"), line_no, step.activity_name,
                   step.activity_hash);

    if (touch) {
      step.event.x = fields.require_int<std::int32_t>("x");
      step.event.y = fields.require_int<std::int32_t>("y");
      const std::string_view target = fields.require("target");
      if (target == "-") {
        step.target_missing = true;
      } else {
        try {
          step.target_path = path_from_string(target);
        } catch (const Error&) {
          malformed(line_no, "bad target path");
        }
        const auto coords = detail::split(fields.require("bounds"), ',');
        if (coords.size() != 4 ||
            !detail::parse_int(coords[0], step.recorded_bounds.left) ||
            !detail::parse_int(coords[1], step.recorded_bounds.top) ||
            !detail::parse_int(coords[2], step.recorded_bounds.right) ||
            !detail::parse_int(coords[3], step.recorded_bounds.bottom)) {
          malformed(line_no, "bad bounds");
        }
        const auto ratio = detail::split(fields.require("ratio"), ',');
        if (ratio.size() != 2 ||
            !detail::parse_double(ratio[0], step.ratio.rx) ||
            !detail::parse_double(ratio[1], step.ratio.ry)) {
          malformed(line_no, "bad ratio");
        }
      }
      try {
        step.consumer = consumption_from_string(fields.require("consumer"));
      } catch (const Error&) {
        malformed(line_no, "bad consumer");
      }
    } else {
      step.event.key_code = fields.require_int<std::uint32_t>("key");
    }

    if (!is_valid_event(step.event)) malformed(line_no, "invalid event");
    if (!trace.steps.empty() &&
        step.event.timestamp_ms < trace.steps.back().event.timestamp_ms) {
      malformed(line_no, "timestamp decreases");
    }
    trace.steps.push_back(std::move(step));
  });

  if (!saw_header || !saw_app || !saw_screen) {
    throw Error(ErrorCode::kMalformedTrace, "incomplete trace header");
  }
  return trace;
}

DumpDirectory DumpDirectory::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIoFailure,
                "not a directory: " + dir.string());
  }

  std::vector<std::pair<std::int64_t, fs::path>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".hier") {
      continue;
    }
    std::int64_t ts = 0;
    if (!detail::parse_int(entry.path().stem().string(), ts)) continue;
    files.emplace_back(ts, entry.path());
  }
  std::sort(files.begin(), files.end());
  for (std::size_t i = 1; i < files.size(); ++i) {
    if (files[i].first == files[i - 1].first) {
      throw Error(ErrorCode::kIoFailure,
                  "duplicate dump timestamp " + std::to_string(files[i].first));
    }
  }

  DumpDirectory result;
  result.dumps_.reserve(files.size());
  for (const auto& [ts, path] : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    result.dumps_.emplace_back(ts, parse_hierarchy_dump(buf.str()));
  }
  return result;
}

const ViewHierarchy& DumpDirectory::at_time(std::int64_t timestamp_ms) const {
  const ViewHierarchy* found = nullptr;
  for (const auto& [ts, hierarchy] : dumps_) {
    if (ts > timestamp_ms) break;
    found = &hierarchy;
  }
  if (found == nullptr) {
    throw Error(ErrorCode::kFocusUnavailable,
                "no dump at or before t=" + std::to_string(timestamp_ms),
                static_cast<std::size_t>(timestamp_ms < 0 ? 0 : timestamp_ms));
  }
  return *found;
}

FocusedHierarchyFn DumpDirectory::as_focus_fn() const {
  return [this](std::int64_t timestamp_ms) -> const ViewHierarchy& {
    return at_time(timestamp_ms);
  };
}

}  // namespace puppet
