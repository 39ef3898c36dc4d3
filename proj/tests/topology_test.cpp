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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "ddesim/topology.hpp"

using namespace ddesim;

namespace {

constexpr TimeValue kMs = 1'000'000;

// All-paths oracle via exhaustive DFS over simple paths. Longer walks only
// repeat loops, and every hop increment is >= (0,0), so simple paths (plus
// simple cycles for the self pair) realize the minimum.
void dfs_paths(const Topology& topo, FederateId node, const Tag& acc, FederateId to,
               std::vector<bool>& visited, Tag& best) {
  for (const Connection& c : topo.connections()) {
    if (c.from != node) continue;
    const Tag folded = tag_add(acc, delay_to_tag(c.delay));
    if (c.to == to) best = tag_min(best, folded);
    if (c.to != to && !visited[static_cast<std::size_t>(c.to)]) {
      visited[static_cast<std::size_t>(c.to)] = true;
      dfs_paths(topo, c.to, folded, to, visited, best);
      visited[static_cast<std::size_t>(c.to)] = false;
    }
  }
}

Tag brute_force_transitive(const Topology& topo, FederateId to, FederateId from) {
  Tag best = Tag::forever();
  std::vector<bool> visited(topo.federate_count(), false);
  visited[static_cast<std::size_t>(from)] = true;
  dfs_paths(topo, from, Tag{0, 0}, to, visited, best);
  return best;
}

Topology random_topology(std::mt19937& rng) {
  const std::size_t n = 2 + rng() % 5;
  const TimeValue delays[] = {kNever, 0, 1 * kMs, 10 * kMs};
  std::vector<Connection> conns;
  for (FederateId a = 0; a < static_cast<FederateId>(n); ++a) {
    for (FederateId b = 0; b < static_cast<FederateId>(n); ++b) {
      if (a == b) continue;
      if (rng() % 4 == 0) conns.push_back({a, b, delays[rng() % 4]});
    }
  }
  return Topology(n, std::move(conns));
}

}  // namespace

TEST_CASE("immediate delays take the minimum over parallel connections") {
  Topology topo(2, {{0, 1, 10 * kMs}, {0, 1, 3 * kMs}});
  DelayMatrix m(topo);
  CHECK(m.immediate(1, 0) == Tag{3 * kMs, 0});
  CHECK(m.immediate(0, 1) == Tag::forever());  // no reverse connection
}

TEST_CASE("a delay-free connection contributes (0,0)") {
  Topology topo(2, {{1, 0, kNever}});
  DelayMatrix m(topo);
  CHECK(m.immediate(0, 1) == Tag{0, 0});
}

TEST_CASE("transitive delay folds hops in path order") {
  // j=0 -> k=1 (10 ms) -> i=2 (0): fold is add((10ms,0),(0,1)) = (10ms,1).
  Topology topo(3, {{0, 1, 10 * kMs}, {1, 2, 0}});
  DelayMatrix m(topo);
  CHECK(m.transitive(2, 0) == Tag{10 * kMs, 1});
  CHECK(m.transitive(1, 0) == Tag{10 * kMs, 0});
  CHECK(m.transitive(0, 2) == Tag::forever());  // no path
  CHECK(m.upstream(2) == std::vector<FederateId>{1});
  CHECK(m.downstream_closure(0) == std::vector<FederateId>{1, 2});
}

TEST_CASE("zero-delay-cycle detection counts only delay-free connections") {
  SUBCASE("mutual delay-free connections form a cycle") {
    Topology topo(2, {{0, 1, kNever}, {1, 0, kNever}});
    DelayMatrix m(topo);
    CHECK(m.zero_delay_cycle_members() == std::vector<FederateId>{0, 1});
  }
  SUBCASE("mutual zero delays advance the microstep and do not") {
    Topology topo(2, {{0, 1, 0}, {1, 0, 0}});
    DelayMatrix m(topo);
    CHECK(m.zero_delay_cycle_members().empty());
    // The cycle exists and its folded delay is (0,2) > (0,0).
    CHECK(m.transitive(0, 0) == Tag{0, 2});
  }
  SUBCASE("acyclic chain has no members") {
    Topology topo(3, {{0, 1, kNever}, {1, 2, kNever}});
    DelayMatrix m(topo);
    CHECK(m.zero_delay_cycle_members().empty());
  }
  SUBCASE("mixed cycle with one delayed hop is not zero-delay") {
    Topology topo(2, {{0, 1, kNever}, {1, 0, 5 * kMs}});
    DelayMatrix m(topo);
    CHECK(m.zero_delay_cycle_members().empty());
  }
}

TEST_CASE("topology rejects bad inputs") {
  CHECK_THROWS_AS(Topology(2, {{0, 2, kNever}}), std::out_of_range);
  CHECK_THROWS_AS(Topology(2, {{3, 0, kNever}}), std::out_of_range);
  CHECK_THROWS_AS(Topology(2, {{0, 0, kNever}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology(2, {{0, 1, -3}}), std::invalid_argument);
}

TEST_CASE("transitive delays match the all-paths oracle on random graphs") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 60; ++round) {
    const Topology topo = random_topology(rng);
    const DelayMatrix m(topo);
    const auto n = static_cast<FederateId>(topo.federate_count());
    for (FederateId to = 0; to < n; ++to) {
      for (FederateId from = 0; from < n; ++from) {
        CAPTURE(round);
        CAPTURE(to);
        CAPTURE(from);
        REQUIRE(m.transitive(to, from) == brute_force_transitive(topo, to, from));
        CHECK(m.transitive(to, from) <= m.immediate(to, from));
        if (!m.transitive(to, from).is_forever()) CHECK(m.transitive(to, from) >= Tag{0, 0});
        // Triangle property through every midpoint.
        for (FederateId mid = 0; mid < n; ++mid) {
          CHECK(m.transitive(to, from) <=
                tag_add(m.transitive(mid, from), m.immediate(to, mid)));
        }
      }
    }
    // Closure is exactly the finite-transitive set.
    for (FederateId from = 0; from < n; ++from) {
      std::vector<FederateId> expect;
      for (FederateId to = 0; to < n; ++to) {
        if (!m.transitive(to, from).is_forever()) expect.push_back(to);
      }
      CHECK(m.downstream_closure(from) == expect);
    }
  }
}

TEST_CASE("adding an edge never increases a transitive delay") {
  std::mt19937 rng(99);
  for (int round = 0; round < 40; ++round) {
    Topology topo = random_topology(rng);
    const auto n = static_cast<FederateId>(topo.federate_count());
    const DelayMatrix before(topo);
    auto conns = topo.connections();
    const auto a = static_cast<FederateId>(rng() % n);
    auto b = static_cast<FederateId>(rng() % n);
    if (a == b) b = (b + 1) % n;
    conns.push_back({a, b, static_cast<TimeValue>(rng() % 3) * kMs});
    const DelayMatrix after(Topology(topo.federate_count(), std::move(conns)));
    for (FederateId to = 0; to < n; ++to) {
      for (FederateId from = 0; from < n; ++from) {
        CHECK(after.transitive(to, from) <= before.transitive(to, from));
      }
    }
  }
}

TEST_CASE("topology json round-trips") {
  Topology topo(3, {{0, 1, 10 * kMs}, {1, 2, kNever}, {2, 0, kForever}});
  const Topology back = Topology::from_json_string(topo.to_json_string());
  CHECK(back.federate_count() == 3);
  REQUIRE(back.connections().size() == 3);
  CHECK(back.connections()[0].delay == 10 * kMs);
  CHECK(back.connections()[1].delay == kNever);
  CHECK(back.connections()[2].delay == kForever);
  CHECK_THROWS(Topology::from_json_string("{\"federates\": 1}"));
}
