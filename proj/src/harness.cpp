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

#include "ddesim/harness.hpp"

#include <charconv>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "ddesim/rti.hpp"

namespace ddesim {

std::uint64_t LatencyModel::latency(FederateId from, FederateId to) const {
  switch (mode) {
    case Mode::kZero: return 0;
    case Mode::kFixed: return fixed_steps;
    case Mode::kPerChannel: {
      const auto it = per_channel.find({from, to});
      return it == per_channel.end() ? default_steps : it->second;
    }
  }
  return 0;
}

std::string LatencyModel::to_string() const {
  switch (mode) {
    case Mode::kZero: return "zero";
    case Mode::kFixed: return "fixed:" + std::to_string(fixed_steps);
    case Mode::kPerChannel: return "map";
  }
  return "?";
}

std::optional<LatencyModel> LatencyModel::parse(const std::string& text) {
  if (text == "zero") return zero();
  constexpr std::string_view prefix = "fixed:";
  if (text.rfind(prefix, 0) == 0) {
    std::uint64_t steps = 0;
    const char* begin = text.data() + prefix.size();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, steps);
    if (ec == std::errc{} && ptr == end) return fixed(steps);
  }
  return std::nullopt;
}

namespace {

// FNV-1a, used to digest message bodies into trace notes.
std::string body_digest(const std::string& body) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const unsigned char c : body) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[15 - i] = hex[(hash >> (i * 4)) & 0xF];
  }
  buf[16] = '\0';
  return buf;
}

struct InFlight {
  std::uint64_t deliver_at;
  std::uint64_t order;  // send sequence; keeps equal-step deliveries FIFO
  FederateId wire_from;
  FederateId wire_to;
  Signal signal;
};

struct InFlightLater {
  bool operator()(const InFlight& a, const InFlight& b) const {
    return std::tie(a.deliver_at, a.order) > std::tie(b.deliver_at, b.order);
  }
};

class Runner {
 public:
  Runner(const Scenario& scenario, const RunConfig& config)
      : config_(config),
        delays_(scenario.topology),
        rti_(delays_, config.dnet) {
    const auto n = static_cast<FederateId>(scenario.topology.federate_count());
    federates_.reserve(static_cast<std::size_t>(n));
    for (FederateId id = 0; id < n; ++id) {
      federates_.emplace_back(id, delays_, config.dnet,
                              scenario.reactions[static_cast<std::size_t>(id)]);
      for (const Event& event : scenario.initial_events[static_cast<std::size_t>(id)]) {
        federates_.back().schedule_initial(event.tag, event.action, event.body);
      }
    }
    for (FederateId id = 0; id < n; ++id) {
      federates_[static_cast<std::size_t>(id)].set_event_hook([this, id](const Event& event) {
        std::string note{to_string(event.action)};
        if (!event.body.empty()) note += ":" + body_digest(event.body);
        trace_.append(step_, actor_name(id), actor_name(id), "EVT", event.tag, std::move(note));
      });
    }
  }

  Trace take() && { return std::move(trace_); }

  void execute() {
    for (auto& federate : federates_) {
      dispatch(federate.id(), federate.start());
    }
    while (!trace_.aborted) {
      if (!in_flight_.empty()) {
        deliver_next();
        continue;
      }
      FederateCore* next = nullptr;
      for (auto& federate : federates_) {
        if (federate.can_advance() && federate.next_event_tag() <= config_.until) {
          next = &federate;
          break;
        }
      }
      if (next == nullptr) break;  // quiescent
      dispatch(next->id(), next->advance_one());
      check_fault(*next);
    }
  }

 private:
  void dispatch(FederateId from, const std::vector<Signal>& outputs) {
    for (const Signal& signal : outputs) {
      const bool from_rti = from == kRtiActor;
      const FederateId wire_to = from_rti ? signal.dst : kRtiActor;
      if (from_rti && signal.kind == SignalKind::kDnet) {
        trace_.append(step_, "rti", actor_name(signal.dst), "DUMP", signal.tag, dump_state());
      }
      const auto& rec = trace_.append(step_, actor_name(from), actor_name(wire_to),
                                      std::string(to_string(signal.kind)), signal.tag,
                                      std::string(kNoteSent));
      in_flight_.push(
          InFlight{step_ + config_.latency.latency(from, wire_to), rec.seq, from, wire_to, signal});
    }
    if (from == kRtiActor) {
      for (const std::string& diag : rti_.take_diagnostics()) {
        trace_.append(step_, "rti", "rti", "DIAG", Tag::never(), diag);
      }
    }
  }

  void deliver_next() {
    InFlight item = in_flight_.top();
    in_flight_.pop();
    if (item.deliver_at > step_) step_ = item.deliver_at;
    trace_.append(step_, actor_name(item.wire_from), actor_name(item.wire_to),
                  std::string(to_string(item.signal.kind)), item.signal.tag,
                  std::string(kNoteRecv));
    if (item.wire_to == kRtiActor) {
      std::vector<Signal> out;
      switch (item.signal.kind) {
        case SignalKind::kNet:
          out = rti_.handle_net(item.signal.src, item.signal.tag);
          break;
        case SignalKind::kLtc:
          out = rti_.handle_ltc(item.signal.src, item.signal.tag);
          break;
        case SignalKind::kMsg:
          out = rti_.handle_msg(item.signal.src, item.signal.dst, item.signal.tag,
                                item.signal.body);
          break;
        default:
          throw std::logic_error("coordinator received a coordinator-bound signal");
      }
      dispatch(kRtiActor, out);
      return;
    }
    auto& federate = federates_[static_cast<std::size_t>(item.wire_to)];
    std::vector<Signal> out;
    switch (item.signal.kind) {
      case SignalKind::kTag:
        out = federate.on_tag_grant(item.signal.tag);
        break;
      case SignalKind::kDnet:
        out = federate.on_dnet(item.signal.tag);
        break;
      case SignalKind::kMsg:
        federate.on_receive_msg(item.signal.tag, item.signal.body);
        break;
      default:
        throw std::logic_error("federate received a federate-originated signal");
    }
    dispatch(federate.id(), out);
    check_fault(federate);
  }

  void check_fault(const FederateCore& federate) {
    if (!federate.fault()) return;
    trace_.append(step_, actor_name(federate.id()), actor_name(federate.id()), "DIAG",
                  federate.current(), "protocol fault: " + *federate.fault());
    trace_.aborted = true;
  }

  // Coordinator snapshot for the consistency checker: reported next-event
  // tags and in-transit heads for every federate.
  std::string dump_state() {
    std::string out = "{\"net\":[";
    const auto n = static_cast<FederateId>(delays_.federate_count());
    for (FederateId id = 0; id < n; ++id) {
      if (id > 0) out += ",";
      out += "\"" + to_string(rti_.state(id).net) + "\"";
    }
    out += "],\"head\":[";
    for (FederateId id = 0; id < n; ++id) {
      if (id > 0) out += ",";
      out += "\"" + to_string(rti_.in_transit_head(id)) + "\"";
    }
    out += "]}";
    return out;
  }

  RunConfig config_;
  DelayMatrix delays_;
  RtiCore rti_;
  std::vector<FederateCore> federates_;
  std::priority_queue<InFlight, std::vector<InFlight>, InFlightLater> in_flight_;
  Trace trace_;
  std::uint64_t step_ = 0;
};

}  // namespace

Trace run(const Scenario& scenario, const RunConfig& config) {
  if (scenario.initial_events.size() != scenario.topology.federate_count() ||
      scenario.reactions.size() != scenario.topology.federate_count()) {
    throw std::invalid_argument("scenario tables do not match the federate count");
  }
  Runner runner(scenario, config);
  runner.execute();
  return std::move(runner).take();
}

}  // namespace ddesim
