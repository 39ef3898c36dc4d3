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

#include "ddesim/federate.hpp"

#include <stdexcept>

namespace ddesim {

Tag ReactionContext::now() const { return federate_.current_; }

FederateId ReactionContext::self() const { return federate_.id_; }

void ReactionContext::schedule(Tag tag, EventAction action, std::string body) {
  if (!(tag > federate_.current_)) {
    throw std::logic_error("schedule: tag must be after the tag being processed");
  }
  federate_.events_.emplace(tag, Event{tag, action, std::move(body)});
}

void ReactionContext::send(FederateId dst, std::string body) {
  const Tag& hop = federate_.delays_.immediate(dst, federate_.id_);
  if (hop.is_forever()) throw std::logic_error("send: no direct connection to destination");
  federate_.send_with_delay_tag(dst, hop, std::move(body));
}

void ReactionContext::send_after(FederateId dst, TimeValue delay, std::string body) {
  federate_.send_with_delay_tag(dst, delay_to_tag(delay), std::move(body));
}

FederateCore::FederateCore(FederateId id, const DelayMatrix& delays, bool dnet_enabled,
                           ReactionTable reactions)
    : id_(id),
      delays_(delays),
      dnet_enabled_(dnet_enabled),
      has_upstream_(!delays.upstream(id).empty()),
      reactions_(std::move(reactions)) {}

void FederateCore::schedule_initial(Tag tag, EventAction action, std::string body) {
  if (!tag.valid() || tag < Tag{0, 0}) throw std::invalid_argument("initial event tag invalid");
  events_.emplace(tag, Event{tag, action, std::move(body)});
}

Tag FederateCore::next_event_tag() const {
  return events_.empty() ? Tag::forever() : events_.begin()->first;
}

std::vector<Signal> FederateCore::start() {
  return {Signal::net(id_, next_event_tag())};
}

void FederateCore::send_with_delay_tag(FederateId dst, const Tag& hop, std::string body) {
  const Tag dest_tag = tag_add(current_, hop);
  batch_->push_back(Signal::msg(id_, dst, dest_tag, std::move(body)));
  // A self-produced event for a downstream federate bounds future reports
  // without waiting for a fresh suppression signal.
  if (dest_tag < dn_) dn_ = dest_tag;
}

void FederateCore::process_next_tag(std::vector<Signal>& out) {
  batch_ = &out;
  current_ = events_.begin()->first;
  ReactionContext ctx(*this);
  while (!events_.empty() && events_.begin()->first == current_) {
    const Event event = std::move(events_.begin()->second);
    events_.erase(events_.begin());
    if (event_hook_) event_hook_(event);
    const Reaction* reaction = nullptr;
    switch (event.action) {
      case EventAction::kTimerFire: reaction = &reactions_.on_timer; break;
      case EventAction::kDetection: reaction = &reactions_.on_detection; break;
      case EventAction::kMessageArrival: reaction = &reactions_.on_message; break;
    }
    if (reaction && *reaction) (*reaction)(ctx, event);
  }
  complete_current_tag(out);
  batch_ = nullptr;
}

void FederateCore::complete_current_tag(std::vector<Signal>& out) {
  out.push_back(Signal::ltc(id_, current_));
  const Tag next = next_event_tag();
  const bool blocked = has_upstream_ && granted_ < next;
  if (!blocked && dnet_enabled_ && dn_ >= next) {
    sn_ = next;  // report skipped; remembered in case it turns out needed
    return;
  }
  out.push_back(Signal::net(id_, next));
  sn_ = Tag::never();
}

bool FederateCore::can_advance() const {
  if (fault_ || events_.empty()) return false;
  return !has_upstream_ || granted_ >= next_event_tag();
}

std::vector<Signal> FederateCore::advance_one() {
  std::vector<Signal> out;
  if (!can_advance()) return out;
  process_next_tag(out);
  return out;
}

std::vector<Signal> FederateCore::on_tag_grant(Tag tag) {
  std::vector<Signal> out;
  if (tag <= granted_) {
    fault_ = "TAG regression: received " + to_string(tag) + " after " + to_string(granted_);
    return out;
  }
  granted_ = tag;
  while (!fault_ && !events_.empty() && events_.begin()->first <= granted_) {
    process_next_tag(out);
  }
  return out;
}

std::vector<Signal> FederateCore::on_dnet(Tag tag) {
  std::vector<Signal> out;
  if (!dnet_enabled_) return out;
  if (tag < sn_) {
    // Some downstream federate now needs the report we skipped.
    out.push_back(Signal::net(id_, sn_));
    sn_ = Tag::never();
  }
  dn_ = tag;
  return out;
}

void FederateCore::on_receive_msg(Tag tag, std::string body) {
  if (tag <= current_) {
    fault_ = "tardy message at " + to_string(tag) + " while at " + to_string(current_);
    return;
  }
  events_.emplace(tag, Event{tag, EventAction::kMessageArrival, std::move(body)});
}

}  // namespace ddesim
