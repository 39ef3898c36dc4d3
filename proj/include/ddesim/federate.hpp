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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddesim/signal.hpp"
#include "ddesim/topology.hpp"

namespace ddesim {

enum class EventAction { kTimerFire, kDetection, kMessageArrival };

[[nodiscard]] constexpr std::string_view to_string(EventAction action) {
  switch (action) {
    case EventAction::kTimerFire: return "TimerFire";
    case EventAction::kDetection: return "Detection";
    case EventAction::kMessageArrival: return "MessageArrival";
  }
  return "?";
}

struct Event {
  Tag tag;
  EventAction action{EventAction::kTimerFire};
  std::string body;
};

class FederateCore;

/// Handed to reactions while an event is processed. Scheduling is limited to
/// tags after the one being processed; sends go through the connection with
/// the smallest delay unless an explicit delay picks a parallel connection.
class ReactionContext {
 public:
  [[nodiscard]] Tag now() const;
  [[nodiscard]] FederateId self() const;
  void schedule(Tag tag, EventAction action, std::string body = {});
  void send(FederateId dst, std::string body);
  void send_after(FederateId dst, TimeValue delay, std::string body);

 private:
  friend class FederateCore;
  explicit ReactionContext(FederateCore& federate) : federate_(federate) {}
  FederateCore& federate_;
};

using Reaction = std::function<void(ReactionContext&, const Event&)>;

/// Scenario logic, keyed by event action. Missing entries mean the event is
/// consumed without side effects.
struct ReactionTable {
  Reaction on_timer;
  Reaction on_detection;
  Reaction on_message;
};

/// Federate-side state machine: an event queue ordered by tag (insertion
/// order within a tag), the latest completed tag, and the NET-suppression
/// bookkeeping. Completing a tag always reports the completion; whether the
/// next-event report follows depends on the suppression bound currently in
/// force, except that a federate that cannot advance without a grant always
/// reports.
class FederateCore {
 public:
  FederateCore(FederateId id, const DelayMatrix& delays, bool dnet_enabled,
               ReactionTable reactions);

  void schedule_initial(Tag tag, EventAction action, std::string body = {});

  /// Startup report of the first event tag (forever when idle).
  std::vector<Signal> start();

  /// Grant receipt: processes every queued event at or before the granted
  /// tag, completing each tag in order. A non-increasing grant is a protocol
  /// fault.
  std::vector<Signal> on_tag_grant(Tag tag);

  /// Suppression-bound receipt: flushes the last skipped report if the new
  /// bound no longer covers it.
  std::vector<Signal> on_dnet(Tag tag);

  /// Message receipt: schedules the processing event. A tag at or before the
  /// latest completed tag is a protocol fault.
  void on_receive_msg(Tag tag, std::string body);

  /// True when the next queued event can be processed without a new grant.
  [[nodiscard]] bool can_advance() const;

  /// Self-paced step: processes all events at the next tag and completes it.
  std::vector<Signal> advance_one();

  [[nodiscard]] FederateId id() const { return id_; }
  [[nodiscard]] bool has_upstream() const { return has_upstream_; }
  [[nodiscard]] Tag current() const { return current_; }
  [[nodiscard]] Tag granted() const { return granted_; }
  [[nodiscard]] Tag next_event_tag() const;
  [[nodiscard]] Tag suppression_bound() const { return dn_; }
  [[nodiscard]] Tag skipped_report() const { return sn_; }
  [[nodiscard]] std::size_t queued_events() const { return events_.size(); }
  [[nodiscard]] const std::optional<std::string>& fault() const { return fault_; }

  /// Invoked for every processed event, in processing order.
  void set_event_hook(std::function<void(const Event&)> hook) { event_hook_ = std::move(hook); }

 private:
  friend class ReactionContext;
  void process_next_tag(std::vector<Signal>& out);
  void complete_current_tag(std::vector<Signal>& out);
  void send_with_delay_tag(FederateId dst, const Tag& hop, std::string body);

  FederateId id_;
  const DelayMatrix& delays_;
  bool dnet_enabled_;
  bool has_upstream_;
  ReactionTable reactions_;
  std::multimap<Tag, Event> events_;  // stable insertion order per tag
  Tag current_ = Tag::never();
  Tag granted_ = Tag::never();
  Tag dn_ = Tag::never();  // suppression bound in force
  Tag sn_ = Tag::never();  // last skipped next-event report, (NEVER,0) = none
  std::vector<Signal>* batch_ = nullptr;  // output batch while processing
  std::function<void(const Event&)> event_hook_;
  std::optional<std::string> fault_;
};

}  // namespace ddesim
