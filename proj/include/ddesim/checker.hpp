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

#include <string>
#include <vector>

#include "ddesim/topology.hpp"
#include "ddesim/trace.hpp"

namespace ddesim {

struct Violation {
  std::string rule;
  std::uint64_t seq{0};  // offending record
  std::string description;
};

struct Verdict {
  bool ok = true;
  std::vector<Violation> violations;

  void flag(std::string rule, std::uint64_t seq, std::string description) {
    ok = false;
    violations.push_back({std::move(rule), seq, std::move(description)});
  }
};

/// Discrete-event safety over one trace: no message delivery at or before
/// the receiver's completed tag, no message at or before a granted tag after
/// the grant, completions never regress, grants strictly increase. Parse
/// errors passed in are reported as violations.
[[nodiscard]] Verdict check_safety(const Trace& trace,
                                   const std::vector<std::string>& parse_errors = {});

/// Observational equivalence: per-federate processed-event sequences (tag,
/// action, body digest) must match exactly. Signal traffic is ignored.
[[nodiscard]] Verdict check_equivalence(const Trace& a, const Trace& b);

/// Recomputes every emitted suppression bound from the coordinator snapshot
/// dumped alongside it and the topology's transitive delays; also checks
/// that no zero-delay-cycle member ever receives one.
[[nodiscard]] Verdict check_dnet_consistency(const Trace& trace, const Topology& topology);

}  // namespace ddesim
