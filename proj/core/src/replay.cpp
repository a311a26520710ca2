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

#include "puppet/replay.hpp"

#include <cmath>
#include <stdexcept>

#include "puppet/dispatch.hpp"
#include "puppet/errors.hpp"
#include "text_util.hpp"

namespace puppet {

namespace {

std::int64_t scale_timestamp(std::int64_t timestamp_ms, double speed) {
  if (speed == 1.0) return timestamp_ms;
  return std::llround(static_cast<double>(timestamp_ms) / speed);
}

void check_options(const ReplayOptions& options) {
  if (!(options.speed > 0.0)) {
    throw std::invalid_argument("replay speed must be positive");
  }
}

double score_of(std::size_t executed, std::size_t total) {
  if (total == 0) return 1.0;
  return static_cast<double>(executed) / static_cast<double>(total);
}

const char* warning_name(ReplayWarningKind kind) {
  switch (kind) {
    case ReplayWarningKind::kConsumerMismatch: return "consumer_mismatch";
    case ReplayWarningKind::kRawMiss: return "raw_miss";
  }
  return "consumer_mismatch";
}

}  // namespace

InputEvent rescale_event(const StimulationStep& step, const ViewNode& target) {
  const Rect& b = target.bounds;
  if (b.width() == 0 || b.height() == 0) {
    throw Error(ErrorCode::kDegenerateBounds, "zero-area replay target");
  }
  InputEvent out = step.event;
  out.x = static_cast<std::int32_t>(
      std::llround(b.left + step.ratio.rx * b.width()));
  out.y = static_cast<std::int32_t>(
      std::llround(b.top + step.ratio.ry * b.height()));
  return out;
}

ReplayReport replay_trace(const StimulationTrace& trace,
                          const StepHierarchyFn& focused,
                          const ReplayOptions& options) {
  check_options(options);
  ReplayReport report;
  report.total_steps = trace.steps.size();

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StimulationStep& step = trace.steps[i];
    InputEvent emitted = step.event;
    emitted.timestamp_ms = scale_timestamp(emitted.timestamp_ms, options.speed);

    if (!step.is_touch()) {
      report.emitted.key_sink.push_back(emitted);
      ++report.executed_steps;
      continue;
    }

    const ViewHierarchy& hierarchy = focused(i);

    if (step.target_missing) {
      // Nothing was resolvable at recording time either; pass the raw
      // coordinates through.
      report.emitted.touch_sink.push_back(emitted);
      ++report.executed_steps;
      continue;
    }

    auto try_path = [&](const ViewPath& path) -> bool {
      try {
        const ViewNode& node = resolve_path(hierarchy, path);
        const InputEvent rescaled = rescale_event(step, node);
        emitted.x = rescaled.x;
        emitted.y = rescaled.y;
        return true;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kPathNotFound ||
            e.code() == ErrorCode::kDegenerateBounds) {
          return false;
        }
        throw;
      }
    };

    bool resolved = try_path(step.target_path);
    if (!resolved && step.consumer.view.has_value()) {
      resolved = try_path(step.consumer.view->path);
    }
    if (!resolved) {
      report.failure = ReplayFailure{i, "path_not_found"};
      break;
    }

    report.emitted.touch_sink.push_back(emitted);
    ++report.executed_steps;

    if (step.consumer.view.has_value()) {
      const ConsumptionResult now = dispatch_touch(hierarchy, emitted.x,
                                                   emitted.y);
      if (now.by_activity()) {
        report.warnings.push_back(
            {i, ReplayWarningKind::kConsumerMismatch});
      }
    }
  }

  report.score = score_of(report.executed_steps, report.total_steps);
  return report;
}

ReplayReport replay_raw(const StimulationTrace& trace,
                        const StepHierarchyFn& focused,
                        const ReplayOptions& options) {
  check_options(options);
  ReplayReport report;
  report.total_steps = trace.steps.size();

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const StimulationStep& step = trace.steps[i];
    InputEvent emitted = step.event;
    emitted.timestamp_ms = scale_timestamp(emitted.timestamp_ms, options.speed);

    if (!step.is_touch()) {
      report.emitted.key_sink.push_back(emitted);
      ++report.executed_steps;
      continue;
    }

    report.emitted.touch_sink.push_back(emitted);
    ++report.executed_steps;

    if (step.target_missing) continue;
    try {
      const ViewNode& node = resolve_path(focused(i), step.target_path);
      if (!node.bounds.contains(emitted.x, emitted.y)) {
        report.warnings.push_back({i, ReplayWarningKind::kRawMiss});
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPathNotFound) throw;
      // Raw replay has no view correlation; an unresolvable target is not
      // an error here, it just cannot be checked.
    }
  }

  report.score = score_of(report.executed_steps, report.total_steps);
  return report;
}

std::string serialize_report(const ReplayReport& report) {
  std::string out = "PUPREPORT 1\n";
  out += "total_steps ";
  out += std::to_string(report.total_steps);
  out += '\n';
  out += "executed_steps ";
  out += std::to_string(report.executed_steps);
  out += '\n';
  out += "score ";
  out += detail::format_double(report.score);
  out += '\n';
  if (report.failure.has_value()) {
    out += "failure step=";
    out += std::to_string(report.failure->step_index);
    out += " reason=";
    out += report.failure->reason;
    out += '\n';
  }
  for (const ReplayWarning& warning : report.warnings) {
    out += "warning step=";
    out += std::to_string(warning.step_index);
    out += " kind=";
    out += warning_name(warning.kind);
    out += '\n';
  }
  return out;
}

}  // namespace puppet
