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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ddesim/signal.hpp"
#include "ddesim/topology.hpp"

namespace ddesim {

/// Coordinator-side bookkeeping for one federate.
struct RtiFederateState {
  Tag net = Tag::never();             // latest reported next-event tag
  Tag latest_complete = Tag::never(); // latest reported completed tag
  std::multiset<Tag> in_transit;      // tags of forwarded, not-yet-completed messages
  Tag last_granted = Tag::never();
  Tag last_dnet = Tag::never();       // (NEVER,0) doubles as "nothing sent yet"
};

/// The centralized coordinator as a pure state machine: one input signal in,
/// a finite batch of output signals out. After every input it re-evaluates
/// grant and NET-suppression bounds for all federates in ascending id;
/// last_granted / last_dnet deduplication keeps the output equal to an
/// affected-federates-only evaluation and the traces deterministic.
class RtiCore {
 public:
  RtiCore(const DelayMatrix& delays, bool dnet_enabled);

  std::vector<Signal> handle_net(FederateId from, Tag tag);
  std::vector<Signal> handle_ltc(FederateId from, Tag tag);
  std::vector<Signal> handle_msg(FederateId src, FederateId dst, Tag tag, std::string body);

  /// Earliest possible tag of a future incoming message for `to`, folded
  /// recursively over upstream federates. Zero-delay-cycle members pin it to
  /// the conservative bottom (NEVER,0); federates with no upstream contribute
  /// (FOREVER,kMaxMicrostep).
  [[nodiscard]] Tag earliest_incoming_message_tag(FederateId to) const;

  /// The NET-suppression bound for `from` per the downstream-need formula;
  /// nullopt when `from` is ineligible (suppression disabled, no downstream,
  /// or inside a zero-delay cycle).
  [[nodiscard]] std::optional<Tag> dnet_bound(FederateId from) const;

  /// Head of the in-transit queue, (FOREVER,kMaxMicrostep) when empty.
  [[nodiscard]] Tag in_transit_head(FederateId id) const;

  [[nodiscard]] const RtiFederateState& state(FederateId id) const {
    return states_[static_cast<std::size_t>(id)];
  }
  [[nodiscard]] const DelayMatrix& delays() const { return delays_; }
  [[nodiscard]] bool dnet_enabled() const { return dnet_enabled_; }

  /// Drains diagnostics recorded for ignored or invalid inputs.
  std::vector<std::string> take_diagnostics();

 private:
  Tag eimt_walk(FederateId to, std::vector<bool>& on_path) const;
  std::optional<Signal> try_grant_tag(FederateId to);
  std::optional<Signal> refresh_dnet(FederateId from);
  void sweep(std::vector<Signal>& out);

  const DelayMatrix& delays_;
  bool dnet_enabled_;
  std::vector<RtiFederateState> states_;
  std::vector<std::string> diagnostics_;
};

}  // namespace ddesim
