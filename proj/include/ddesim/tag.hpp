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

#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace ddesim {

/// Logical time in nanoseconds since startup. Two sentinel values extend the
/// range: kNever (-inf, earlier than everything) and kForever (+inf, later
/// than everything). Finite values are non-negative.
using TimeValue = std::int64_t;

/// Second tag component, distinguishing instants that share a time value.
using Microstep = std::uint32_t;

inline constexpr TimeValue kNever = std::numeric_limits<TimeValue>::min();
inline constexpr TimeValue kForever = std::numeric_limits<TimeValue>::max();
inline constexpr Microstep kMaxMicrostep = std::numeric_limits<Microstep>::max();

/// Superdense logical time: a (time value, microstep) pair, totally ordered
/// lexicographically. The only admitted limit tags are (kNever, 0) and
/// (kForever, kMaxMicrostep).
struct Tag {
  TimeValue time{0};
  Microstep microstep{0};

  static constexpr Tag never() { return Tag{kNever, 0}; }
  static constexpr Tag forever() { return Tag{kForever, kMaxMicrostep}; }

  [[nodiscard]] constexpr bool is_never() const { return time == kNever; }
  [[nodiscard]] constexpr bool is_forever() const { return time == kForever; }
  [[nodiscard]] constexpr bool is_limit() const { return is_never() || is_forever(); }

  /// A tag is valid when the time is finite non-negative, or the tag is one
  /// of the two limit tags.
  [[nodiscard]] constexpr bool valid() const {
    if (time == kNever) return microstep == 0;
    if (time == kForever) return microstep == kMaxMicrostep;
    return time >= 0;
  }

  // Lexicographic (time, microstep) order; the sentinels sort naturally.
  friend constexpr auto operator<=>(const Tag&, const Tag&) = default;
};

[[nodiscard]] constexpr Tag tag_min(const Tag& a, const Tag& b) { return a < b ? a : b; }
[[nodiscard]] constexpr Tag tag_max(const Tag& a, const Tag& b) { return a < b ? b : a; }

/// Tag addition. Adding a pure-microstep tag (b.time == 0) adds microsteps
/// and saturates at kMaxMicrostep; adding a positive time takes b's microstep
/// and discards a's; time overflow saturates to (kForever, kMaxMicrostep);
/// kNever on either side absorbs everything.
[[nodiscard]] Tag tag_add(const Tag& a, const Tag& b);

/// Converts a connection delay to the minimum tag increment it imposes:
/// an unspecified delay (kNever) adds nothing, a zero delay adds one
/// microstep, a positive delay adds that time and resets the microstep.
[[nodiscard]] Tag delay_to_tag(TimeValue delay);

/// Tag subtraction up to saturation: returns the latest tag g such that
/// tag_add(g, b) <= a. Because tag_add saturates, an exact inverse does not
/// exist; this is the tightest lower adjoint. b must not be a limit tag
/// (throws std::domain_error otherwise).
[[nodiscard]] Tag tag_subtract(const Tag& a, const Tag& b);

/// Canonical rendering "(t,m)" with the time as integer nanoseconds or the
/// literals NEVER/FOREVER.
[[nodiscard]] std::string to_string(const Tag& tag);

/// Parses the canonical rendering; nullopt on malformed or invalid tags.
[[nodiscard]] std::optional<Tag> tag_from_string(std::string_view text);

}  // namespace ddesim
