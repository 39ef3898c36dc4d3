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
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "ddesim/scenario.hpp"
#include "ddesim/trace.hpp"

namespace ddesim {

/// Deterministic transport latency in scheduler steps. Step time is disjoint
/// from logical tags; it only orders deliveries.
struct LatencyModel {
  enum class Mode { kZero, kFixed, kPerChannel };
  Mode mode = Mode::kZero;
  std::uint64_t fixed_steps = 0;
  std::map<std::pair<FederateId, FederateId>, std::uint64_t> per_channel;
  std::uint64_t default_steps = 0;  // per-channel fallback

  static LatencyModel zero() { return {}; }
  static LatencyModel fixed(std::uint64_t steps) {
    return {Mode::kFixed, steps, {}, 0};
  }

  [[nodiscard]] std::uint64_t latency(FederateId from, FederateId to) const;
  [[nodiscard]] std::string to_string() const;

  /// Parses "zero" or "fixed:K"; nullopt otherwise.
  static std::optional<LatencyModel> parse(const std::string& text);
};

struct RunConfig {
  bool dnet = false;
  LatencyModel latency;
  Tag until = Tag::forever();  // self-paced federates do not advance past this
};

/// Runs one coordinator and the scenario's federates to quiescence,
/// recording every sent and delivered signal, every processed event, and a
/// coordinator state snapshot alongside each emitted DNET. In-flight signals
/// are always fully delivered before any federate takes a self-paced step.
/// Detected protocol faults abort the run with a diagnostic trace suffix.
/// The result is a pure function of (scenario, config).
Trace run(const Scenario& scenario, const RunConfig& config);

}  // namespace ddesim
