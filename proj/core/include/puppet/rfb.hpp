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

#ifndef PUPPET_RFB_HPP_
#define PUPPET_RFB_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "puppet/events.hpp"

namespace puppet {

// Client-to-server RFB input messages (types 4 and 5). Wire layout is
// big-endian and byte-exact:
//   KeyEvent     = [u8 type=4][u8 down][u16 padding][u32 key]   8 bytes
//   PointerEvent = [u8 type=5][u8 mask][u16 x][u16 y]           6 bytes
struct RfbPointerEvent {
  std::uint8_t button_mask = 0;
  std::uint16_t x = 0;
  std::uint16_t y = 0;

  bool operator==(const RfbPointerEvent&) const = default;
};

struct RfbKeyEvent {
  bool down = false;
  std::uint32_t key = 0;

  bool operator==(const RfbKeyEvent&) const = default;
};

using RfbMessage = std::variant<RfbPointerEvent, RfbKeyEvent>;

inline constexpr std::uint8_t kRfbKeyEventType = 4;
inline constexpr std::uint8_t kRfbPointerEventType = 5;
inline constexpr std::size_t kRfbKeyEventSize = 8;
inline constexpr std::size_t kRfbPointerEventSize = 6;

struct DecodedRfb {
  RfbMessage message;
  std::size_t bytes_consumed = 0;
};

// Decodes one message from the front of `bytes`. Throws
// Error{kUnknownMessageType} when the first byte is neither 4 nor 5 and
// Error{kTruncated} when fewer bytes are present than the message needs.
DecodedRfb decode_rfb(std::span<const std::uint8_t> bytes);

// Inverse of decode_rfb; decode_rfb(encode_rfb(m)).message == m.
std::vector<std::uint8_t> encode_rfb(const RfbMessage& message);

// Primary touch button; other pointer buttons are not tracked.
inline constexpr std::uint8_t kPrimaryButtonBit = 0x01;

// Maps an RFB message onto a recordable input event given the previous
// pointer button mask. A rising edge of the primary button maps to Down, a
// falling edge to Up, and a held button to Move. Returns nullopt for hover
// pointer messages (primary button released in both masks).
std::optional<InputEvent> rfb_to_input_event(const RfbMessage& message,
                                             std::uint8_t prev_mask,
                                             std::int64_t timestamp_ms);

}  // namespace puppet

#endif  // PUPPET_RFB_HPP_
