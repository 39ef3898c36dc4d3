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

#include "ddesim/trace.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace ddesim {

TraceRecord& Trace::append(std::uint64_t step, std::string src, std::string dst, std::string kind,
                           Tag tag, std::string note) {
  TraceRecord rec;
  rec.seq = records.size();
  rec.step = step;
  rec.src = std::move(src);
  rec.dst = std::move(dst);
  rec.kind = std::move(kind);
  rec.tag = tag;
  rec.note = std::move(note);
  records.push_back(std::move(rec));
  return records.back();
}

namespace {

nlohmann::json tag_to_json(const Tag& tag) {
  nlohmann::json j;
  if (tag.time == kNever) {
    j["t"] = "NEVER";
  } else if (tag.time == kForever) {
    j["t"] = "FOREVER";
  } else {
    j["t"] = tag.time;
  }
  j["m"] = tag.microstep;
  return j;
}

Tag tag_from_json(const nlohmann::json& j) {
  Tag tag;
  const auto& t = j.at("t");
  if (t.is_string()) {
    const auto text = t.get<std::string>();
    if (text == "NEVER") {
      tag.time = kNever;
    } else if (text == "FOREVER") {
      tag.time = kForever;
    } else {
      throw std::invalid_argument("unknown time literal " + text);
    }
  } else {
    tag.time = t.get<TimeValue>();
  }
  tag.microstep = j.at("m").get<Microstep>();
  if (!tag.valid()) throw std::invalid_argument("invalid tag " + to_string(tag));
  return tag;
}

}  // namespace

void write_jsonl(const Trace& trace, std::ostream& out) {
  for (const TraceRecord& rec : trace.records) {
    nlohmann::json j;
    j["seq"] = rec.seq;
    j["step"] = rec.step;
    j["src"] = rec.src;
    j["dst"] = rec.dst;
    j["kind"] = rec.kind;
    j["tag"] = tag_to_json(rec.tag);
    if (!rec.note.empty()) j["note"] = rec.note;
    out << j.dump() << '\n';
  }
}

Trace read_jsonl(std::istream& in, std::vector<std::string>* errors) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      TraceRecord rec;
      rec.seq = j.at("seq").get<std::uint64_t>();
      rec.step = j.at("step").get<std::uint64_t>();
      rec.src = j.at("src").get<std::string>();
      rec.dst = j.at("dst").get<std::string>();
      rec.kind = j.at("kind").get<std::string>();
      rec.tag = tag_from_json(j.at("tag"));
      if (j.contains("note")) rec.note = j.at("note").get<std::string>();
      trace.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      const std::string message = "line " + std::to_string(line_no) + ": " + e.what();
      if (errors == nullptr) throw std::runtime_error("trace parse failed: " + message);
      errors->push_back(message);
    }
  }
  return trace;
}

std::string actor_name(FederateId id) {
  return id == kRtiActor ? std::string("rti") : "f" + std::to_string(id);
}

FederateId actor_id(std::string_view name) {
  if (name == "rti") return kRtiActor;
  if (name.size() < 2 || name[0] != 'f') return -2;
  FederateId id = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), id);
  if (ec != std::errc{} || ptr != name.data() + name.size()) return -2;
  return id;
}

SignalCounts count_signals(const Trace& trace, SignalKind kind) {
  SignalCounts counts;
  const std::string_view want = to_string(kind);
  for (const TraceRecord& rec : trace.records) {
    if (rec.kind == want && rec.note == kNoteSent) {
      ++counts.by_src[rec.src];
      ++counts.total;
    }
  }
  return counts;
}

}  // namespace ddesim
