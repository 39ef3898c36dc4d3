/*
 * Copyright 2026 The ddesim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ddesim/tag.hpp"

#include <charconv>
#include <stdexcept>

namespace ddesim {

Tag tag_add(const Tag& a, const Tag& b) {
  if (a.time == kNever || b.time == kNever) return Tag::never();
  if (a.time == kForever) return Tag::forever();
  if (b.time == 0) {
    const std::uint64_t sum =
        static_cast<std::uint64_t>(a.microstep) + static_cast<std::uint64_t>(b.microstep);
    if (sum >= kMaxMicrostep) return Tag{a.time, kMaxMicrostep};
    return Tag{a.time, static_cast<Microstep>(sum)};
  }
  // b.time > 0; saturate before adding so the sum never wraps.
  if (b.time >= kForever - a.time) return Tag::forever();
  return Tag{a.time + b.time, b.microstep};
}

Tag delay_to_tag(TimeValue delay) {
  if (delay == kNever) return Tag{0, 0};
  if (delay == kForever) return Tag::forever();
  if (delay == 0) return Tag{0, 1};
  if (delay < 0) throw std::domain_error("delay_to_tag: negative finite delay");
  return Tag{delay, 0};
}

Tag tag_subtract(const Tag& a, const Tag& b) {
  if (b.is_limit()) throw std::domain_error("tag_subtract: subtrahend must not be a limit tag");
  if (a.is_never() || a < b) return Tag::never();
  if (a.is_forever()) return Tag::forever();
  if (b.time == 0) {
    // tag_add saturates microstep sums at kMaxMicrostep, so from a saturated
    // first component every microstep still lands at or below a.
    if (a.microstep == kMaxMicrostep) return Tag{a.time, kMaxMicrostep};
    if (a.microstep >= b.microstep) return Tag{a.time, a.microstep - b.microstep};
    return Tag{a.time - 1, kMaxMicrostep};  // a >= b and m_a < m_b imply a.time > 0
  }
  if (a.microstep >= b.microstep) return Tag{a.time - b.time, kMaxMicrostep};
  return Tag{a.time - b.time - 1, kMaxMicrostep};  // a >= b and m_a < m_b imply a.time > b.time
}

std::string to_string(const Tag& tag) {
  std::string out = "(";
  if (tag.time == kNever) {
    out += "NEVER";
  } else if (tag.time == kForever) {
    out += "FOREVER";
  } else {
    out += std::to_string(tag.time);
  }
  out += ",";
  out += std::to_string(tag.microstep);
  out += ")";
  return out;
}

std::optional<Tag> tag_from_string(std::string_view text) {
  if (text.size() < 5 || text.front() != '(' || text.back() != ')') return std::nullopt;
  text.remove_prefix(1);
  text.remove_suffix(1);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  const std::string_view time_part = text.substr(0, comma);
  const std::string_view micro_part = text.substr(comma + 1);

  Tag tag;
  if (time_part == "NEVER") {
    tag.time = kNever;
  } else if (time_part == "FOREVER") {
    tag.time = kForever;
  } else {
    auto [ptr, ec] = std::from_chars(time_part.data(), time_part.data() + time_part.size(), tag.time);
    if (ec != std::errc{} || ptr != time_part.data() + time_part.size()) return std::nullopt;
  }
  auto [ptr, ec] =
      std::from_chars(micro_part.data(), micro_part.data() + micro_part.size(), tag.microstep);
  if (ec != std::errc{} || ptr != micro_part.data() + micro_part.size()) return std::nullopt;
  if (!tag.valid()) return std::nullopt;
  return tag;
}

}  // namespace ddesim
