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

#include "puppet/rfb.hpp"

#include <string>

#include "puppet/errors.hpp"

namespace puppet {

namespace {

std::uint16_t read_u16(std::span<const std::uint8_t> bytes, std::size_t at) {
  return static_cast<std::uint16_t>((bytes[at] << 8) | bytes[at + 1]);
}

std::uint32_t read_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  return (static_cast<std::uint32_t>(bytes[at]) << 24) |
         (static_cast<std::uint32_t>(bytes[at + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[at + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[at + 3]);
}

}  // namespace

DecodedRfb decode_rfb(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) {
    throw Error(ErrorCode::kTruncated, "empty input");
  }
  switch (bytes[0]) {
    case kRfbPointerEventType: {
      if (bytes.size() < kRfbPointerEventSize) {
        throw Error(ErrorCode::kTruncated,
                    "PointerEvent needs 6 bytes, have " +
                        std::to_string(bytes.size()));
      }
      RfbPointerEvent ev;
      ev.button_mask = bytes[1];
      ev.x = read_u16(bytes, 2);
      ev.y = read_u16(bytes, 4);
      return {RfbMessage(ev), kRfbPointerEventSize};
    }
    case kRfbKeyEventType: {
      if (bytes.size() < kRfbKeyEventSize) {
        throw Error(ErrorCode::kTruncated,
                    "KeyEvent needs 8 bytes, have " +
                        std::to_string(bytes.size()));
      }
      RfbKeyEvent ev;
      ev.down = bytes[1] != 0;
      ev.key = read_u32(bytes, 4);
      return {RfbMessage(ev), kRfbKeyEventSize};
    }
    default:
      throw Error(ErrorCode::kUnknownMessageType,
                  "message type " + std::to_string(bytes[0]));
  }
}

std::vector<std::uint8_t> encode_rfb(const RfbMessage& message) {
  std::vector<std::uint8_t> out;
  if (const auto* ptr = std::get_if<RfbPointerEvent>(&message)) {
    out.resize(kRfbPointerEventSize);
    out[0] = kRfbPointerEventType;
    out[1] = ptr->button_mask;
    out[2] = static_cast<std::uint8_t>(ptr->x >> 8);
    out[3] = static_cast<std::uint8_t>(ptr->x & 0xff);
    out[4] = static_cast<std::uint8_t>(ptr->y >> 8);
    out[5] = static_cast<std::uint8_t>(ptr->y & 0xff);
  } else {
    const auto& key = std::get<RfbKeyEvent>(message);
    out.resize(kRfbKeyEventSize, 0);
    out[0] = kRfbKeyEventType;
    out[1] = key.down ? 1 : 0;
    out[4] = static_cast<std::uint8_t>(key.key >> 24);
    out[5] = static_cast<std::uint8_t>((key.key >> 16) & 0xff);
    out[6] = static_cast<std::uint8_t>((key.key >> 8) & 0xff);
    out[7] = static_cast<std::uint8_t>(key.key & 0xff);
  }
  return out;
}

std::optional<InputEvent> rfb_to_input_event(const RfbMessage& message,
                                             std::uint8_t prev_mask,
                                             std::int64_t timestamp_ms) {
  InputEvent ev;
  ev.timestamp_ms = timestamp_ms;
  if (const auto* key = std::get_if<RfbKeyEvent>(&message)) {
    ev.type = EventType::kKey;
    ev.action = key->down ? EventAction::kDown : EventAction::kUp;
    ev.key_code = key->key;
    return ev;
  }
  const auto& ptr = std::get<RfbPointerEvent>(message);
  const bool was_down = (prev_mask & kPrimaryButtonBit) != 0;
  const bool is_down = (ptr.button_mask & kPrimaryButtonBit) != 0;
  if (!was_down && !is_down) return std::nullopt;  // hover, nothing to emit
  ev.type = EventType::kTouch;
  ev.x = ptr.x;
  ev.y = ptr.y;
  if (is_down && !was_down) {
    ev.action = EventAction::kDown;
  } else if (!is_down && was_down) {
    ev.action = EventAction::kUp;
  } else {
    ev.action = EventAction::kMove;
  }
  return ev;
}

}  // namespace puppet
