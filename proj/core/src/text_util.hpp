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

// Internal text helpers shared by the line-oriented file formats. Not
// installed.

#ifndef PUPPET_SRC_TEXT_UTIL_HPP_
#define PUPPET_SRC_TEXT_UTIL_HPP_

#include <charconv>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace puppet::detail {

// %XX-escapes '%', the characters of `reserved`, and control/whitespace
// bytes, keeping tokens single-word and round-trippable.
std::string percent_encode(std::string_view text, std::string_view reserved);

// Inverse of percent_encode; returns false on a malformed escape.
bool percent_decode(std::string_view text, std::string& out);

// Separator characters of the dump/trace grammars, escaped inside names.
inline constexpr std::string_view kNameReserved = "@:/,=";

inline std::string encode_token(std::string_view text) {
  return percent_encode(text, kNameReserved);
}

std::vector<std::string_view> split(std::string_view text, char sep);

// Strict integer parses over the full token.
template <typename T>
bool parse_int(std::string_view token, T& out, int base = 10) {
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out, base);
  return ec == std::errc() && ptr == last;
}

bool parse_double(std::string_view token, double& out);

// Shortest-round-trip decimal form (%.17g semantics via from_chars
// round-trip check at 17 digits).
std::string format_double(double value);

// Calls fn(line_number, line) per line, 1-based, line without the
// trailing '\n' (and without a trailing '\r' if present).
void for_each_line(std::string_view text,
                   const std::function<void(std::size_t, std::string_view)>& fn);

}  // namespace puppet::detail

#endif  // PUPPET_SRC_TEXT_UTIL_HPP_
