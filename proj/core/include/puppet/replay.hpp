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

#ifndef PUPPET_REPLAY_HPP_
#define PUPPET_REPLAY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "puppet/events.hpp"
#include "puppet/trace.hpp"
#include "puppet/view.hpp"

namespace puppet {

// Per-device event sinks: device 1 is the touchscreen, device 2 the
// keyboard. Touch events only ever land in touch_sink, key events in
// key_sink.
struct InputSinkSet {
  std::vector<InputEvent> touch_sink;
  std::vector<InputEvent> key_sink;

  bool operator==(const InputSinkSet&) const = default;
};

enum class ReplayWarningKind {
  // A step resolved and was emitted, but dispatch at the rescaled point
  // fell back to the activity although the recording had a view consumer.
  kConsumerMismatch,
  // Raw replay only: the verbatim coordinates fell outside the bounds of
  // the step's target view as resolved on the replay hierarchy.
  kRawMiss,
};

struct ReplayWarning {
  std::size_t step_index = 0;
  ReplayWarningKind kind = ReplayWarningKind::kConsumerMismatch;

  bool operator==(const ReplayWarning&) const = default;
};

struct ReplayFailure {
  std::size_t step_index = 0;
  std::string reason;

  bool operator==(const ReplayFailure&) const = default;
};

struct ReplayReport {
  std::size_t total_steps = 0;
  std::size_t executed_steps = 0;
  double score = 1.0;  // executed/total, 1 for an empty trace
  std::optional<ReplayFailure> failure;
  std::vector<ReplayWarning> warnings;
  InputSinkSet emitted;
};

struct ReplayOptions {
  // Divides emitted timestamps; 2.0 halves the replay duration. Timing is
  // sink metadata, the replayer never sleeps.
  double speed = 1.0;
};

// Yields the hierarchy in effect for a step. Indexed by step so callers can
// bind either a fixed screen or a timestamped dump sequence.
using StepHierarchyFn =
    std::function<const ViewHierarchy&(std::size_t step_index)>;

// x' = round(left + rx*width), y' = round(top + ry*height) against the
// given target node; timestamp, type and action copied from the step.
// Throws Error{kDegenerateBounds}.
InputEvent rescale_event(const StimulationStep& step, const ViewNode& target);

// Re-executes a trace in order. Touch steps resolve their target path on
// the current hierarchy (falling back to the recorded consumer path),
// rescale through the stored ratio and land in touch_sink; key steps pass
// through to key_sink. The first step whose paths both fail stops the
// replay: executed steps are always a strict prefix of the trace.
ReplayReport replay_trace(const StimulationTrace& trace,
                          const StepHierarchyFn& focused,
                          const ReplayOptions& options = {});

// Baseline replayer: emits the recorded absolute coordinates without any
// path resolution. Always executes every step; raw-miss warnings flag
// touch steps whose verbatim point misses the target view on the replay
// hierarchy.
ReplayReport replay_raw(const StimulationTrace& trace,
                        const StepHierarchyFn& focused,
                        const ReplayOptions& options = {});

// Key-value text form of the report counters, failure and warnings.
std::string serialize_report(const ReplayReport& report);

}  // namespace puppet

#endif  // PUPPET_REPLAY_HPP_
