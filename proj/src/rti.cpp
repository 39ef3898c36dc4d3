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

#include "ddesim/rti.hpp"

#include <utility>

namespace ddesim {

RtiCore::RtiCore(const DelayMatrix& delays, bool dnet_enabled)
    : delays_(delays), dnet_enabled_(dnet_enabled), states_(delays.federate_count()) {}

Tag RtiCore::in_transit_head(FederateId id) const {
  const auto& queue = states_[static_cast<std::size_t>(id)].in_transit;
  return queue.empty() ? Tag::forever() : *queue.begin();
}

std::vector<Signal> RtiCore::handle_net(FederateId from, Tag tag) {
  auto& st = states_[static_cast<std::size_t>(from)];
  if (tag < st.net) {
    diagnostics_.push_back("stale NET from f" + std::to_string(from) + " at " + to_string(tag) +
                           " ignored (have " + to_string(st.net) + ")");
    return {};
  }
  if (tag == st.net) return {};  // idempotent repeat
  st.net = tag;
  std::vector<Signal> out;
  sweep(out);
  return out;
}

std::vector<Signal> RtiCore::handle_ltc(FederateId from, Tag tag) {
  auto& st = states_[static_cast<std::size_t>(from)];
  if (tag < st.latest_complete) {
    diagnostics_.push_back("stale LTC from f" + std::to_string(from) + " at " + to_string(tag) +
                           " ignored (have " + to_string(st.latest_complete) + ")");
    return {};
  }
  if (tag == st.latest_complete && !tag.is_never()) return {};
  st.latest_complete = tag;
  // Completed messages leave the in-transit queue: everything at or before
  // the completed tag.
  st.in_transit.erase(st.in_transit.begin(), st.in_transit.upper_bound(tag));
  std::vector<Signal> out;
  sweep(out);
  return out;
}

std::vector<Signal> RtiCore::handle_msg(FederateId src, FederateId dst, Tag tag,
                                        std::string body) {
  if (delays_.transitive(dst, src).is_forever()) {
    diagnostics_.push_back("protocol violation: MSG f" + std::to_string(src) + " -> f" +
                           std::to_string(dst) + " has no connecting path; dropped");
    return {};
  }
  states_[static_cast<std::size_t>(dst)].in_transit.insert(tag);
  std::vector<Signal> out;
  out.push_back(Signal::msg(src, dst, tag, std::move(body)));  // forward first
  sweep(out);
  return out;
}

Tag RtiCore::eimt_walk(FederateId to, std::vector<bool>& on_path) const {
  if (delays_.in_zero_delay_cycle(to)) return Tag::never();
  const auto& ups = delays_.upstream(to);
  if (ups.empty()) return Tag::forever();  // no incoming messages, ever
  on_path[static_cast<std::size_t>(to)] = true;
  Tag best = Tag::forever();
  for (FederateId j : ups) {
    // A lap back onto the current path cannot lower the minimum (hop
    // increments are >= (0,0)), so the recursive bound for such a neighbor
    // is neutral; its own reported state still participates.
    const Tag upstream_bound = on_path[static_cast<std::size_t>(j)]
                                   ? Tag::forever()
                                   : eimt_walk(j, on_path);
    const auto& js = states_[static_cast<std::size_t>(j)];
    const Tag earliest_from_j = tag_min(tag_min(upstream_bound, js.net), in_transit_head(j));
    best = tag_min(best, tag_add(earliest_from_j, delays_.immediate(to, j)));
  }
  on_path[static_cast<std::size_t>(to)] = false;
  return best;
}

Tag RtiCore::earliest_incoming_message_tag(FederateId to) const {
  std::vector<bool> on_path(delays_.federate_count(), false);
  return eimt_walk(to, on_path);
}

std::optional<Signal> RtiCore::try_grant_tag(FederateId to) {
  const auto& ups = delays_.upstream(to);
  if (ups.empty()) return std::nullopt;  // advances unaided, never granted
  auto& st = states_[static_cast<std::size_t>(to)];

  // Completed-tag bound: the earliest tag any upstream federate could still
  // produce a message at, judging only by what they have finished.
  Tag completed_bound = Tag::forever();
  for (FederateId j : ups) {
    completed_bound = tag_min(
        completed_bound,
        tag_add(states_[static_cast<std::size_t>(j)].latest_complete, delays_.immediate(to, j)));
  }

  Tag grant;
  if (completed_bound >= st.net) {
    grant = completed_bound;
  } else {
    // The federate wants to advance further than the completed-tag bound
    // allows; the recursive earliest-incoming-message bound may still clear
    // its pending work (strictly, so a message at the bound itself stays safe).
    const Tag pending = tag_min(st.net, in_transit_head(to));
    if (earliest_incoming_message_tag(to) > pending) {
      grant = pending;
    } else {
      return std::nullopt;
    }
  }
  if (grant <= st.last_granted) return std::nullopt;
  st.last_granted = grant;
  return Signal::tag_grant(to, grant);
}

std::optional<Tag> RtiCore::dnet_bound(FederateId from) const {
  if (!dnet_enabled_) return std::nullopt;
  if (delays_.in_zero_delay_cycle(from)) return std::nullopt;
  const auto& downs = delays_.downstream_closure(from);
  if (downs.empty()) return std::nullopt;
  Tag bound = Tag::forever();
  for (FederateId i : downs) {
    const auto& is = states_[static_cast<std::size_t>(i)];
    const Tag pending = tag_min(is.net, in_transit_head(i));
    bound = tag_min(bound, tag_subtract(pending, delays_.transitive(i, from)));
  }
  return bound;
}

std::optional<Signal> RtiCore::refresh_dnet(FederateId from) {
  const auto bound = dnet_bound(from);
  if (!bound) return std::nullopt;
  auto& st = states_[static_cast<std::size_t>(from)];
  if (*bound == st.last_dnet) return std::nullopt;
  st.last_dnet = *bound;
  return Signal::dnet(from, *bound);
}

void RtiCore::sweep(std::vector<Signal>& out) {
  const auto n = static_cast<FederateId>(delays_.federate_count());
  for (FederateId id = 0; id < n; ++id) {
    if (auto granted = try_grant_tag(id)) out.push_back(*std::move(granted));
  }
  for (FederateId id = 0; id < n; ++id) {
    if (auto suppressed = refresh_dnet(id)) out.push_back(*std::move(suppressed));
  }
}

std::vector<std::string> RtiCore::take_diagnostics() {
  return std::exchange(diagnostics_, {});
}

}  // namespace ddesim
