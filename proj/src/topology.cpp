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

#include "ddesim/topology.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace ddesim {

namespace {

void validate_endpoint(FederateId id, std::size_t count, const char* what) {
  if (id < 0 || static_cast<std::size_t>(id) >= count) {
    throw std::out_of_range(std::string("topology: ") + what + " endpoint out of range");
  }
}

}  // namespace

Topology::Topology(std::size_t federates, std::vector<Connection> connections)
    : federates_(federates), connections_(std::move(connections)) {
  for (const Connection& c : connections_) {
    validate_endpoint(c.from, federates_, "connection source");
    validate_endpoint(c.to, federates_, "connection destination");
    if (c.from == c.to) throw std::invalid_argument("topology: self connection");
    if (c.delay != kNever && c.delay != kForever && c.delay < 0) {
      throw std::invalid_argument("topology: negative finite delay");
    }
  }
}

std::string Topology::to_json_string() const {
  nlohmann::json doc;
  doc["federates"] = federates_;
  auto& conns = doc["connections"] = nlohmann::json::array();
  for (const Connection& c : connections_) {
    nlohmann::json entry;
    entry["from"] = c.from;
    entry["to"] = c.to;
    if (c.delay == kNever) {
      entry["delay_ns"] = "never";
    } else if (c.delay == kForever) {
      entry["delay_ns"] = "forever";
    } else {
      entry["delay_ns"] = c.delay;
    }
    conns.push_back(std::move(entry));
  }
  return doc.dump();
}

Topology Topology::from_json_string(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  const auto federates = doc.at("federates").get<std::size_t>();
  std::vector<Connection> connections;
  for (const auto& entry : doc.at("connections")) {
    Connection c;
    c.from = entry.at("from").get<FederateId>();
    c.to = entry.at("to").get<FederateId>();
    const auto& delay = entry.at("delay_ns");
    if (delay.is_string()) {
      const auto text_delay = delay.get<std::string>();
      if (text_delay == "never") {
        c.delay = kNever;
      } else if (text_delay == "forever") {
        c.delay = kForever;
      } else {
        throw std::invalid_argument("topology: unknown delay literal " + text_delay);
      }
    } else {
      c.delay = delay.get<TimeValue>();
    }
    connections.push_back(c);
  }
  return Topology(federates, std::move(connections));
}

DelayMatrix::DelayMatrix(const Topology& topology)
    : count_(topology.federate_count()),
      immediate_(count_ * count_, Tag::forever()),
      transitive_(count_ * count_, Tag::forever()),
      upstream_(count_),
      downstream_(count_),
      zero_delay_cycle_(count_, false) {
  const std::size_t n = count_;

  for (const Connection& c : topology.connections()) {
    Tag& slot = immediate_[index(c.to, c.from)];
    slot = tag_min(slot, delay_to_tag(c.delay));
    auto& ups = upstream_[static_cast<std::size_t>(c.to)];
    if (std::find(ups.begin(), ups.end(), c.from) == ups.end()) ups.push_back(c.from);
  }
  for (auto& ups : upstream_) std::sort(ups.begin(), ups.end());

  // Transitive delays: per-source relaxation of dist[i] over edges, folding
  // tag_add left to right in path order. Tags only grow along extra cycle
  // laps (hop increments are >= (0,0)), so n rounds reach the fixpoint.
  for (std::size_t from = 0; from < n; ++from) {
    std::vector<Tag> dist(n, Tag::forever());
    for (std::size_t to = 0; to < n; ++to) {
      dist[to] = immediate_[index(static_cast<FederateId>(to), static_cast<FederateId>(from))];
    }
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t to = 0; to < n; ++to) {
        for (FederateId mid : upstream_[to]) {
          if (dist[static_cast<std::size_t>(mid)].is_forever()) continue;
          const Tag candidate = tag_add(dist[static_cast<std::size_t>(mid)],
                                        immediate_[index(static_cast<FederateId>(to), mid)]);
          if (candidate < dist[to]) {
            dist[to] = candidate;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    for (std::size_t to = 0; to < n; ++to) {
      transitive_[index(static_cast<FederateId>(to), static_cast<FederateId>(from))] = dist[to];
      if (!dist[to].is_forever()) {
        downstream_[from].push_back(static_cast<FederateId>(to));
      }
    }
  }

  // Zero-delay cycles: reachability closure over delay-free (kNever)
  // connections only; a federate on a nonempty delay-free path back to
  // itself is a member. A zero (d = 0) delay still advances the microstep
  // and does not count.
  std::vector<bool> never_edge(n * n, false);
  for (const Connection& c : topology.connections()) {
    if (c.delay == kNever) {
      never_edge[static_cast<std::size_t>(c.from) * n + static_cast<std::size_t>(c.to)] = true;
    }
  }
  std::vector<bool> reach = never_edge;
  for (std::size_t mid = 0; mid < n; ++mid) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!reach[a * n + mid]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (reach[mid * n + b]) reach[a * n + b] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (reach[i * n + i]) {
      zero_delay_cycle_[i] = true;
      zero_delay_cycle_members_.push_back(static_cast<FederateId>(i));
    }
  }
}

}  // namespace ddesim
