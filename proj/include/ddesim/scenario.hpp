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
#include <string>
#include <vector>

#include "ddesim/federate.hpp"
#include "ddesim/topology.hpp"

namespace ddesim {

/// A runnable configuration: topology, per-federate initial events, and
/// per-federate reaction logic. Reactions must be pure functions of scenario
/// constants so a scenario can be replayed across modes and latency models.
struct Scenario {
  std::string name;
  Topology topology{0, {}};
  std::vector<std::vector<Event>> initial_events;
  std::vector<ReactionTable> reactions;
};

struct ScenarioParams {
  TimeValue period_ns = 20'000'000;
  TimeValue detection_period_ns = 5'000'000'000;
  TimeValue duration_ns = 500'000'000'000;
};

/// f0 polls on a timer and occasionally detects something worth a message;
/// f1 is a pure sink with no local events.
Scenario make_sparse_sender(const ScenarioParams& params);

/// Three federates in a row with after-delays on both hops; the middle one
/// relays each arrival.
Scenario make_delay_chain(const ScenarioParams& params);

/// Two independent pollers feeding one sink over connections with different
/// delays.
Scenario make_fan_in(const ScenarioParams& params);

/// A delay-free two-federate cycle (excluded from NET suppression) fed by an
/// upstream timer, plus a sink behind the cycle.
Scenario make_zero_delay_cycle(const ScenarioParams& params);

/// Random small topology (2..6 federates, delays from {never, 0, 1 ms,
/// 10 ms}) with a sparse schedule of timer events; every timer event sends
/// to each direct downstream neighbor. Fully determined by the seed.
Scenario make_random(std::uint64_t seed);

/// Lookup by CLI name: sparse | chain | fanin | zdc. Throws on unknown names.
Scenario scenario_by_name(const std::string& name, const ScenarioParams& params);

}  // namespace ddesim
