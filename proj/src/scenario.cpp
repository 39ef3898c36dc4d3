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

#include "ddesim/scenario.hpp"

#include <random>
#include <stdexcept>

namespace ddesim {

namespace {

constexpr TimeValue kMs = 1'000'000;

// Periodic rescheduling, bounded by the scenario duration.
Reaction periodic(EventAction action, TimeValue period, TimeValue duration) {
  return [action, period, duration](ReactionContext& ctx, const Event&) {
    const TimeValue next = ctx.now().time + period;
    if (next <= duration) ctx.schedule(Tag{next, 0}, action);
  };
}

// Detection that also emits one message to a fixed destination.
Reaction detect_and_send(FederateId dst, TimeValue period, TimeValue duration) {
  return [dst, period, duration](ReactionContext& ctx, const Event&) {
    ctx.send(dst, "det@" + to_string(ctx.now()));
    const TimeValue next = ctx.now().time + period;
    if (next <= duration) ctx.schedule(Tag{next, 0}, EventAction::kDetection);
  };
}

std::vector<Event> timer_seed() { return {Event{Tag{0, 0}, EventAction::kTimerFire, {}}}; }

std::vector<Event> detection_seed(TimeValue first, TimeValue duration) {
  if (first <= 0 || first > duration) return {};
  return {Event{Tag{first, 0}, EventAction::kDetection, {}}};
}

}  // namespace

Scenario make_sparse_sender(const ScenarioParams& p) {
  Scenario s;
  s.name = "sparse";
  s.topology = Topology(2, {{0, 1, kNever}});
  s.initial_events.resize(2);
  s.reactions.resize(2);
  s.initial_events[0] = timer_seed();
  for (auto& e : detection_seed(p.detection_period_ns, p.duration_ns)) {
    s.initial_events[0].push_back(e);
  }
  s.reactions[0].on_timer = periodic(EventAction::kTimerFire, p.period_ns, p.duration_ns);
  s.reactions[0].on_detection = detect_and_send(1, p.detection_period_ns, p.duration_ns);
  // f1 consumes arrivals silently.
  return s;
}

Scenario make_delay_chain(const ScenarioParams& p) {
  Scenario s;
  s.name = "chain";
  s.topology = Topology(3, {{0, 1, 10 * kMs}, {1, 2, 0}});
  s.initial_events.resize(3);
  s.reactions.resize(3);
  s.initial_events[0] = timer_seed();
  for (auto& e : detection_seed(p.detection_period_ns, p.duration_ns)) {
    s.initial_events[0].push_back(e);
  }
  s.reactions[0].on_timer = periodic(EventAction::kTimerFire, p.period_ns, p.duration_ns);
  s.reactions[0].on_detection = detect_and_send(1, p.detection_period_ns, p.duration_ns);
  s.reactions[1].on_message = [](ReactionContext& ctx, const Event& e) {
    ctx.send(2, e.body);  // relay over the zero-delay hop
  };
  return s;
}

Scenario make_fan_in(const ScenarioParams& p) {
  Scenario s;
  s.name = "fanin";
  s.topology = Topology(3, {{0, 2, kNever}, {1, 2, 1 * kMs}});
  s.initial_events.resize(3);
  s.reactions.resize(3);
  for (FederateId sender : {FederateId{0}, FederateId{1}}) {
    auto& events = s.initial_events[static_cast<std::size_t>(sender)];
    events = timer_seed();
    for (auto& e : detection_seed(p.detection_period_ns, p.duration_ns)) events.push_back(e);
    auto& table = s.reactions[static_cast<std::size_t>(sender)];
    table.on_timer = periodic(EventAction::kTimerFire, p.period_ns, p.duration_ns);
    table.on_detection = detect_and_send(2, p.detection_period_ns, p.duration_ns);
  }
  return s;
}

Scenario make_zero_delay_cycle(const ScenarioParams& p) {
  Scenario s;
  s.name = "zdc";
  // f0 feeds the delay-free f1 <-> f2 cycle; f3 sits behind it.
  s.topology = Topology(4, {{0, 1, 10 * kMs}, {1, 2, kNever}, {2, 1, kNever}, {2, 3, 10 * kMs}});
  s.initial_events.resize(4);
  s.reactions.resize(4);
  s.initial_events[0] = timer_seed();
  s.reactions[0].on_timer = [p](ReactionContext& ctx, const Event&) {
    ctx.send(1, "tick@" + to_string(ctx.now()));
    const TimeValue next = ctx.now().time + p.period_ns;
    if (next <= p.duration_ns) ctx.schedule(Tag{next, 0}, EventAction::kTimerFire);
  };
  s.reactions[1].on_message = [](ReactionContext& ctx, const Event& e) { ctx.send(2, e.body); };
  s.reactions[2].on_message = [](ReactionContext& ctx, const Event& e) { ctx.send(3, e.body); };
  return s;
}

Scenario make_random(std::uint64_t seed) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  const auto pick = [&rng](std::uint32_t n) { return rng() % n; };

  Scenario s;
  s.name = "random-" + std::to_string(seed);
  const auto n = static_cast<FederateId>(2 + pick(5));
  const TimeValue delays[] = {kNever, 0, 1 * kMs, 10 * kMs};
  std::vector<Connection> conns;
  for (FederateId a = 0; a < n; ++a) {
    for (FederateId b = 0; b < n; ++b) {
      if (a != b && pick(4) == 0) conns.push_back({a, b, delays[pick(4)]});
    }
  }
  s.topology = Topology(static_cast<std::size_t>(n), std::move(conns));
  s.initial_events.resize(static_cast<std::size_t>(n));
  s.reactions.resize(static_cast<std::size_t>(n));

  // Direct downstream neighbors per federate, for the send fan-out.
  std::vector<std::vector<FederateId>> outgoing(static_cast<std::size_t>(n));
  for (const Connection& c : s.topology.connections()) {
    auto& outs = outgoing[static_cast<std::size_t>(c.from)];
    if (outs.empty() || outs.back() != c.to) outs.push_back(c.to);
  }

  for (FederateId id = 0; id < n; ++id) {
    const std::uint32_t event_count = pick(4);
    for (std::uint32_t k = 0; k < event_count; ++k) {
      const TimeValue when = static_cast<TimeValue>(1 + pick(200)) * kMs;
      s.initial_events[static_cast<std::size_t>(id)].push_back(
          Event{Tag{when, 0}, EventAction::kTimerFire, {}});
    }
    const auto outs = outgoing[static_cast<std::size_t>(id)];
    if (!outs.empty()) {
      s.reactions[static_cast<std::size_t>(id)].on_timer = [outs](ReactionContext& ctx,
                                                                  const Event&) {
        for (FederateId dst : outs) ctx.send(dst, "t" + to_string(ctx.now()));
      };
    }
  }
  return s;
}

Scenario scenario_by_name(const std::string& name, const ScenarioParams& params) {
  if (name == "sparse") return make_sparse_sender(params);
  if (name == "chain") return make_delay_chain(params);
  if (name == "fanin") return make_fan_in(params);
  if (name == "zdc") return make_zero_delay_cycle(params);
  throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace ddesim
