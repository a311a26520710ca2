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

#ifndef PUPPET_ERRORS_HPP_
#define PUPPET_ERRORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace puppet {

enum class ErrorCode {
  // RFB codec
  kUnknownMessageType,
  kTruncated,
  // Event logs
  kMalformedLine,
  kNonMonotonicTimestamp,
  // Hierarchy dumps
  kMalformedDump,
  kDanglingIndent,
  kEmptyDump,
  // Geometry queries
  kNoContainingView,
  kDegenerateBounds,
  kPointOutside,
  kPathNotFound,
  // Recording
  kFocusUnavailable,
  // Trace and index files
  kUnsupportedVersion,
  kMalformedTrace,
  kMalformedIndex,
  // Images and similarity
  kImageTooSmall,
  kMalformedImage,
  kEmptyIndex,
  kNoScreenshots,
  kEmptyCluster,
  // Corpus generation
  kUnknownFamily,
  kIoFailure,
};

const char* error_code_name(ErrorCode code);

// Domain error. `pos` carries the 1-based line number for parse errors, the
// segment index for path resolution failures, or the timestamp for recording
// failures; it is empty when no position applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(ErrorCode code, const std::string& message, std::size_t pos)
      : std::runtime_error(message), code_(code), pos_(pos) {}

  ErrorCode code() const { return code_; }
  const std::optional<std::size_t>& pos() const { return pos_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> pos_;
};

}  // namespace puppet

#endif  // PUPPET_ERRORS_HPP_
