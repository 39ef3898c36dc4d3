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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ddesim/signal.hpp"

namespace ddesim {

// Trace record kinds beyond the five signal names: "EVT" marks a processed
// event, "DUMP" a coordinator state snapshot taken when a DNET is emitted,
// "DIAG" a diagnostic. Signal records come in pairs, note "sent" and "recv".
inline constexpr std::string_view kNoteSent = "sent";
inline constexpr std::string_view kNoteRecv = "recv";

struct TraceRecord {
  std::uint64_t seq{0};
  std::uint64_t step{0};
  std::string src;
  std::string dst;
  std::string kind;
  Tag tag;
  std::string note;  // optional; empty = omitted in serialized form
};

struct Trace {
  std::vector<TraceRecord> records;
  bool aborted = false;

  TraceRecord& append(std::uint64_t step, std::string src, std::string dst, std::string kind,
                      Tag tag, std::string note = {});
};

/// One JSON object per line, fields {seq, step, src, dst, kind, tag:{t,m},
/// note?}; sentinel times render as "NEVER"/"FOREVER".
void write_jsonl(const Trace& trace, std::ostream& out);

/// Parses a JSONL trace. Malformed lines are collected into `errors` as
/// "line N: why" strings when given, otherwise the first one throws.
Trace read_jsonl(std::istream& in, std::vector<std::string>* errors = nullptr);

/// Canonical actor names used in traces.
[[nodiscard]] std::string actor_name(FederateId id);

/// Parses "f<id>" back to an id; kRtiActor for "rti", -2 for anything else.
[[nodiscard]] FederateId actor_id(std::string_view name);

struct SignalCounts {
  std::map<std::string, std::size_t> by_src;
  std::size_t total = 0;
};

/// Counts sent signals of one kind per source actor.
[[nodiscard]] SignalCounts count_signals(const Trace& trace, SignalKind kind);

}  // namespace ddesim
