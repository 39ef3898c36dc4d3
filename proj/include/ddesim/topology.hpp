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

#include "ddesim/tag.hpp"

namespace ddesim {

/// Dense federate index, stable for the lifetime of a run.
using FederateId = std::int32_t;

/// Pseudo-id of the coordinator on the wire.
inline constexpr FederateId kRtiActor = -1;

/// Directed connection with a logical after-delay. kNever encodes "no delay
/// specified" (messages keep their tag); 0 adds one microstep.
struct Connection {
  FederateId from{0};
  FederateId to{0};
  TimeValue delay{kNever};
};

/// The federate connection graph as configured.
class Topology {
 public:
  Topology(std::size_t federates, std::vector<Connection> connections);

  [[nodiscard]] std::size_t federate_count() const { return federates_; }
  [[nodiscard]] const std::vector<Connection>& connections() const { return connections_; }

  [[nodiscard]] std::string to_json_string() const;
  static Topology from_json_string(const std::string& text);

 private:
  std::size_t federates_;
  std::vector<Connection> connections_;
};

/// Minimum-delay analysis of a topology, computed once and immutable:
/// immediate per-pair delays, transitive (path-folded) delays, upstream
/// neighbor sets, transitive downstream closures, and membership in cycles
/// that advance neither time nor microstep.
class DelayMatrix {
 public:
  explicit DelayMatrix(const Topology& topology);

  [[nodiscard]] std::size_t federate_count() const { return count_; }

  /// Minimum tag increment over direct connections from -> to;
  /// (kForever, kMaxMicrostep) when there is no direct connection.
  [[nodiscard]] const Tag& immediate(FederateId to, FederateId from) const {
    return immediate_[index(to, from)];
  }

  /// Minimum tag increment over all paths from -> to (one or more hops);
  /// (kForever, kMaxMicrostep) when there is no path.
  [[nodiscard]] const Tag& transitive(FederateId to, FederateId from) const {
    return transitive_[index(to, from)];
  }

  /// Federates with a direct connection into `to`, ascending.
  [[nodiscard]] const std::vector<FederateId>& upstream(FederateId to) const {
    return upstream_[static_cast<std::size_t>(to)];
  }

  /// Federates reachable from `from` via one or more hops, ascending.
  [[nodiscard]] const std::vector<FederateId>& downstream_closure(FederateId from) const {
    return downstream_[static_cast<std::size_t>(from)];
  }

  [[nodiscard]] bool in_zero_delay_cycle(FederateId id) const {
    return zero_delay_cycle_[static_cast<std::size_t>(id)];
  }

  /// Members of cycles built solely from delay-free (kNever) connections,
  /// ascending. These federates are excluded from the NET-suppression
  /// optimization and contribute the conservative bottom to grant bounds.
  [[nodiscard]] const std::vector<FederateId>& zero_delay_cycle_members() const {
    return zero_delay_cycle_members_;
  }

 private:
  [[nodiscard]] std::size_t index(FederateId to, FederateId from) const {
    return static_cast<std::size_t>(to) * count_ + static_cast<std::size_t>(from);
  }

  std::size_t count_;
  std::vector<Tag> immediate_;
  std::vector<Tag> transitive_;
  std::vector<std::vector<FederateId>> upstream_;
  std::vector<std::vector<FederateId>> downstream_;
  std::vector<bool> zero_delay_cycle_;
  std::vector<FederateId> zero_delay_cycle_members_;
};

}  // namespace ddesim
