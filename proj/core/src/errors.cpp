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

#include "puppet/errors.hpp"

namespace puppet {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownMessageType: return "unknown_message_type";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kMalformedLine: return "malformed_line";
    case ErrorCode::kNonMonotonicTimestamp: return "non_monotonic_timestamp";
    case ErrorCode::kMalformedDump: return "malformed_dump";
    case ErrorCode::kDanglingIndent: return "dangling_indent";
    case ErrorCode::kEmptyDump: return "empty_dump";
    case ErrorCode::kNoContainingView: return "no_containing_view";
    case ErrorCode::kDegenerateBounds: return "degenerate_bounds";
    case ErrorCode::kPointOutside: return "point_outside";
    case ErrorCode::kPathNotFound: return "path_not_found";
    case ErrorCode::kFocusUnavailable: return "focus_unavailable";
    case ErrorCode::kUnsupportedVersion: return "unsupported_version";
    case ErrorCode::kMalformedTrace: return "malformed_trace";
    case ErrorCode::kMalformedIndex: return "malformed_index";
    case ErrorCode::kImageTooSmall: return "image_too_small";
    case ErrorCode::kMalformedImage: return "malformed_image";
    case ErrorCode::kEmptyIndex: return "empty_index";
    case ErrorCode::kNoScreenshots: return "no_screenshots";
    case ErrorCode::kEmptyCluster: return "empty_cluster";
    case ErrorCode::kUnknownFamily: return "unknown_family";
    case ErrorCode::kIoFailure: return "io_failure";
  }
  return "unknown";
}

}  // namespace puppet
