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

#include "ddesim/checker.hpp"

#include <map>

#include <json.hpp>

namespace ddesim {

Verdict check_safety(const Trace& trace, const std::vector<std::string>& parse_errors) {
  Verdict verdict;
  for (const std::string& error : parse_errors) {
    verdict.flag("malformed-record", 0, error);
  }

  std::map<std::string, Tag> completed;  // latest completed tag per federate
  std::map<std::string, Tag> granted;    // latest grant sent per federate
  std::map<std::string, Tag> received;   // latest grant delivered per federate
  std::map<std::string, Tag> processed;  // latest processed-event tag per federate

  for (const TraceRecord& rec : trace.records) {
    if (rec.kind == "EVT") {
      const auto it = processed.find(rec.src);
      if (it != processed.end() && rec.tag < it->second) {
        verdict.flag("event-regression", rec.seq,
                     rec.src + " processed " + to_string(rec.tag) + " after " +
                         to_string(it->second));
      } else {
        processed[rec.src] = rec.tag;
      }
    } else if (rec.kind == "LTC" && rec.note == kNoteSent) {
      const auto it = completed.find(rec.src);
      if (it != completed.end() && rec.tag < it->second) {
        verdict.flag("ltc-regression", rec.seq,
                     rec.src + " completed " + to_string(rec.tag) + " after " +
                         to_string(it->second));
      }
      completed[rec.src] = tag_max(rec.tag, it == completed.end() ? rec.tag : it->second);
    } else if (rec.kind == "TAG" && rec.note == kNoteSent) {
      const auto it = granted.find(rec.dst);
      if (it != granted.end() && rec.tag <= it->second) {
        verdict.flag("tag-regression", rec.seq,
                     rec.dst + " granted " + to_string(rec.tag) + " after " +
                         to_string(it->second));
      } else {
        granted[rec.dst] = rec.tag;
      }
    } else if (rec.kind == "TAG" && rec.note == kNoteRecv) {
      received[rec.dst] = tag_max(rec.tag, received.contains(rec.dst) ? received[rec.dst]
                                                                      : Tag::never());
    } else if (rec.kind == "MSG" && rec.note == kNoteRecv && rec.dst != "rti") {
      const auto done = completed.find(rec.dst);
      if (done != completed.end() && rec.tag <= done->second) {
        verdict.flag("tardy-msg", rec.seq,
                     "message at " + to_string(rec.tag) + " delivered to " + rec.dst +
                         " which completed " + to_string(done->second));
      }
      // The grant guarantee is receipt-ordered: once a grant of g has been
      // delivered, no message at or before g may arrive.
      const auto grant = received.find(rec.dst);
      if (grant != received.end() && rec.tag <= grant->second) {
        verdict.flag("msg-after-grant", rec.seq,
                     "message at " + to_string(rec.tag) + " reached " + rec.dst +
                         " after a delivered grant of " + to_string(grant->second));
      }
    }
  }
  return verdict;
}

namespace {

struct ProcessedEvent {
  Tag tag;
  std::string note;
  std::uint64_t seq;

  bool operator==(const ProcessedEvent& other) const {
    return tag == other.tag && note == other.note;
  }
};

std::map<std::string, std::vector<ProcessedEvent>> processed(const Trace& trace) {
  std::map<std::string, std::vector<ProcessedEvent>> out;
  for (const TraceRecord& rec : trace.records) {
    if (rec.kind == "EVT") out[rec.src].push_back({rec.tag, rec.note, rec.seq});
  }
  return out;
}

}  // namespace

Verdict check_equivalence(const Trace& a, const Trace& b) {
  Verdict verdict;
  const auto ea = processed(a);
  const auto eb = processed(b);

  for (const auto& [fed, events_a] : ea) {
    const auto it = eb.find(fed);
    if (it == eb.end()) {
      verdict.flag("missing-federate", events_a.empty() ? 0 : events_a.front().seq,
                   fed + " processed events in one trace only");
      continue;
    }
    const auto& events_b = it->second;
    const std::size_t common = std::min(events_a.size(), events_b.size());
    bool diverged = false;
    for (std::size_t i = 0; i < common; ++i) {
      if (!(events_a[i] == events_b[i])) {
        verdict.flag("event-divergence", events_a[i].seq,
                     fed + " event " + std::to_string(i) + ": " + to_string(events_a[i].tag) +
                         " " + events_a[i].note + " vs " + to_string(events_b[i].tag) + " " +
                         events_b[i].note);
        diverged = true;
        break;  // first divergence per federate is enough
      }
    }
    if (!diverged && events_a.size() != events_b.size()) {
      const auto& longer = events_a.size() > events_b.size() ? events_a : events_b;
      verdict.flag("event-count", longer[common].seq,
                   fed + " processed " + std::to_string(events_a.size()) + " vs " +
                       std::to_string(events_b.size()) + " events");
    }
  }
  for (const auto& [fed, events_b] : eb) {
    if (!ea.contains(fed)) {
      verdict.flag("missing-federate", events_b.empty() ? 0 : events_b.front().seq,
                   fed + " processed events in one trace only");
    }
  }
  return verdict;
}

Verdict check_dnet_consistency(const Trace& trace, const Topology& topology) {
  Verdict verdict;
  const DelayMatrix delays(topology);
  const auto n = static_cast<FederateId>(topology.federate_count());

  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const TraceRecord& rec = trace.records[i];
    if (rec.kind != "DNET" || rec.note != kNoteSent) continue;

    const FederateId dst = actor_id(rec.dst);
    if (dst < 0 || dst >= n) {
      verdict.flag("dnet-destination", rec.seq, "unknown destination " + rec.dst);
      continue;
    }
    if (delays.in_zero_delay_cycle(dst)) {
      verdict.flag("dnet-zdc", rec.seq,
                   rec.dst + " is a zero-delay-cycle member and must not receive DNET");
    }

    if (i == 0 || trace.records[i - 1].kind != "DUMP" || trace.records[i - 1].dst != rec.dst) {
      verdict.flag("dump-missing", rec.seq, "no coordinator snapshot precedes this DNET");
      continue;
    }
    const TraceRecord& dump = trace.records[i - 1];

    std::vector<Tag> net(static_cast<std::size_t>(n));
    std::vector<Tag> head(static_cast<std::size_t>(n));
    try {
      const nlohmann::json j = nlohmann::json::parse(dump.note);
      const auto& nets = j.at("net");
      const auto& heads = j.at("head");
      if (nets.size() != static_cast<std::size_t>(n) || heads.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("snapshot arity mismatch");
      }
      for (FederateId id = 0; id < n; ++id) {
        const auto nt = tag_from_string(nets[static_cast<std::size_t>(id)].get<std::string>());
        const auto ht = tag_from_string(heads[static_cast<std::size_t>(id)].get<std::string>());
        if (!nt || !ht) throw std::invalid_argument("snapshot tag malformed");
        net[static_cast<std::size_t>(id)] = *nt;
        head[static_cast<std::size_t>(id)] = *ht;
      }
    } catch (const std::exception& e) {
      verdict.flag("dump-parse", dump.seq, std::string("snapshot unusable: ") + e.what());
      continue;
    }

    const auto& downs = delays.downstream_closure(dst);
    if (downs.empty()) {
      verdict.flag("dnet-no-downstream", rec.seq, rec.dst + " has no downstream federates");
      continue;
    }
    Tag expected = Tag::forever();
    for (FederateId fed : downs) {
      const Tag pending =
          tag_min(net[static_cast<std::size_t>(fed)], head[static_cast<std::size_t>(fed)]);
      expected = tag_min(expected, tag_subtract(pending, delays.transitive(fed, dst)));
    }
    if (expected != rec.tag) {
      verdict.flag("dnet-value", rec.seq,
                   "recomputed " + to_string(expected) + " but trace carries " +
                       to_string(rec.tag));
    }
  }
  return verdict;
}

}  // namespace ddesim
