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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ddesim/federate.hpp"

using namespace ddesim;

namespace {

constexpr TimeValue kMs = 1'000'000;

struct Fixture {
  Topology topo{2, {{0, 1, kNever}, {0, 1, 10 * kMs}}};
  DelayMatrix delays{topo};
};

std::vector<Tag> tags_of_kind(const std::vector<Signal>& signals, SignalKind kind) {
  std::vector<Tag> out;
  for (const Signal& s : signals) {
    if (s.kind == kind) out.push_back(s.tag);
  }
  return out;
}

}  // namespace

TEST_CASE("startup reports the first event tag, or forever when idle") {
  Fixture f;
  FederateCore sender(0, f.delays, false, {});
  sender.schedule_initial(Tag{0, 0}, EventAction::kTimerFire);
  auto out = sender.start();
  REQUIRE(out.size() == 1);
  CHECK(out[0].kind == SignalKind::kNet);
  CHECK(out[0].tag == Tag{0, 0});

  FederateCore idle(1, f.delays, false, {});
  out = idle.start();
  REQUIRE(out.size() == 1);
  CHECK(out[0].tag == Tag::forever());
}

TEST_CASE("self-paced completion emits LTC and the next report every time") {
  Fixture f;
  FederateCore sender(0, f.delays, false, {});
  for (TimeValue t = 0; t <= 40 * kMs; t += 20 * kMs) {
    sender.schedule_initial(Tag{t, 0}, EventAction::kTimerFire);
  }
  std::vector<Tag> nets;
  std::vector<Tag> ltcs;
  while (sender.can_advance()) {
    const auto out = sender.advance_one();
    for (const Tag& t : tags_of_kind(out, SignalKind::kNet)) nets.push_back(t);
    for (const Tag& t : tags_of_kind(out, SignalKind::kLtc)) ltcs.push_back(t);
  }
  CHECK(ltcs == std::vector<Tag>{Tag{0, 0}, Tag{20 * kMs, 0}, Tag{40 * kMs, 0}});
  CHECK(nets == std::vector<Tag>{Tag{20 * kMs, 0}, Tag{40 * kMs, 0}, Tag::forever()});
  CHECK(std::is_sorted(nets.begin(), nets.end()));
  CHECK(sender.current() == Tag{40 * kMs, 0});
}

TEST_CASE("a suppression bound in force skips reports and remembers the skip") {
  Fixture f;
  FederateCore sender(0, f.delays, true, {});
  sender.schedule_initial(Tag{0, 0}, EventAction::kTimerFire);
  sender.schedule_initial(Tag{20 * kMs, 0}, EventAction::kTimerFire);
  (void)sender.start();
  (void)sender.on_dnet(Tag::forever());

  auto out = sender.advance_one();
  CHECK(tags_of_kind(out, SignalKind::kLtc) == std::vector<Tag>{Tag{0, 0}});
  CHECK(tags_of_kind(out, SignalKind::kNet).empty());
  CHECK(sender.skipped_report() == Tag{20 * kMs, 0});

  out = sender.advance_one();
  CHECK(tags_of_kind(out, SignalKind::kNet).empty());
  CHECK(sender.skipped_report() == Tag::forever());  // the newest skip supersedes
}

TEST_CASE("a blocked federate reports unconditionally") {
  Fixture f;
  FederateCore receiver(1, f.delays, true, {});
  (void)receiver.start();
  (void)receiver.on_dnet(Tag::forever());  // bound covers everything
  receiver.on_receive_msg(Tag{50 * kMs, 0}, "m");
  auto out = receiver.on_tag_grant(Tag{50 * kMs, 0});
  // Next event is forever, granted is (50ms,0): cannot advance, so the
  // report goes out despite the bound.
  CHECK(tags_of_kind(out, SignalKind::kNet) == std::vector<Tag>{Tag::forever()});
  CHECK(receiver.skipped_report() == Tag::never());
}

TEST_CASE("suppression flush: a lowered bound releases the stored report") {
  Fixture f;
  FederateCore sender(0, f.delays, true, {});
  sender.schedule_initial(Tag{100 * kMs, 0}, EventAction::kTimerFire);
  sender.schedule_initial(Tag{120 * kMs, 0}, EventAction::kTimerFire);
  (void)sender.start();
  (void)sender.on_dnet(Tag{1000 * kMs, 0});
  (void)sender.advance_one();  // completes (100ms,0), skips NET((120ms,0))
  REQUIRE(sender.skipped_report() == Tag{120 * kMs, 0});

  SUBCASE("strictly earlier bound flushes") {
    auto out = sender.on_dnet(Tag{100 * kMs, 0});
    CHECK(tags_of_kind(out, SignalKind::kNet) == std::vector<Tag>{Tag{120 * kMs, 0}});
    CHECK(sender.suppression_bound() == Tag{100 * kMs, 0});
    CHECK(sender.skipped_report() == Tag::never());
  }
  SUBCASE("equal bound does not flush") {
    auto out = sender.on_dnet(Tag{120 * kMs, 0});
    CHECK(out.empty());
    CHECK(sender.suppression_bound() == Tag{120 * kMs, 0});
    CHECK(sender.skipped_report() == Tag{120 * kMs, 0});
  }
  SUBCASE("later bound just updates") {
    auto out = sender.on_dnet(Tag{2000 * kMs, 0});
    CHECK(out.empty());
    CHECK(sender.suppression_bound() == Tag{2000 * kMs, 0});
  }
}

TEST_CASE("sending lowers the suppression bound to the destination tag") {
  Fixture f;
  ReactionTable reactions;
  reactions.on_detection = [](ReactionContext& ctx, const Event&) { ctx.send(1, "det"); };
  FederateCore sender(0, f.delays, true, std::move(reactions));
  sender.schedule_initial(Tag{100 * kMs, 0}, EventAction::kDetection);
  sender.schedule_initial(Tag{120 * kMs, 0}, EventAction::kTimerFire);
  (void)sender.start();
  (void)sender.on_dnet(Tag{1000 * kMs, 0});

  auto out = sender.advance_one();
  const auto msgs = tags_of_kind(out, SignalKind::kMsg);
  REQUIRE(msgs == std::vector<Tag>{Tag{100 * kMs, 0}});  // min-delay connection
  // Bound came down to (100ms,0), so NET((120ms,0)) goes out at completion.
  CHECK(sender.suppression_bound() == Tag{100 * kMs, 0});
  CHECK(tags_of_kind(out, SignalKind::kNet) == std::vector<Tag>{Tag{120 * kMs, 0}});
}

TEST_CASE("sending at or above the bound requires no action") {
  Fixture f;
  ReactionTable reactions;
  reactions.on_detection = [](ReactionContext& ctx, const Event&) { ctx.send(1, "det"); };
  FederateCore sender(0, f.delays, true, std::move(reactions));
  sender.schedule_initial(Tag{100 * kMs, 0}, EventAction::kDetection);
  (void)sender.start();
  (void)sender.on_dnet(Tag{50 * kMs, 0});
  (void)sender.advance_one();
  CHECK(sender.suppression_bound() == Tag{50 * kMs, 0});  // unchanged
}

TEST_CASE("explicit after-delay send resets the microstep") {
  Fixture f;
  ReactionTable reactions;
  reactions.on_timer = [](ReactionContext& ctx, const Event&) {
    ctx.send_after(1, 10 * kMs, "x");
  };
  FederateCore sender(0, f.delays, false, std::move(reactions));
  sender.schedule_initial(Tag{100 * kMs, 2}, EventAction::kTimerFire);
  auto out = sender.advance_one();
  CHECK(tags_of_kind(out, SignalKind::kMsg) == std::vector<Tag>{Tag{110 * kMs, 0}});
}

TEST_CASE("grant processing drains every covered tag in order") {
  Fixture f;
  FederateCore receiver(1, f.delays, false, {});
  (void)receiver.start();
  receiver.on_receive_msg(Tag{10 * kMs, 0}, "a");
  receiver.on_receive_msg(Tag{20 * kMs, 0}, "b");
  receiver.on_receive_msg(Tag{30 * kMs, 0}, "c");

  std::vector<Tag> processed;
  receiver.set_event_hook([&](const Event& e) { processed.push_back(e.tag); });

  auto out = receiver.on_tag_grant(Tag{20 * kMs, 0});
  CHECK(processed == std::vector<Tag>{Tag{10 * kMs, 0}, Tag{20 * kMs, 0}});
  CHECK(tags_of_kind(out, SignalKind::kLtc) ==
        std::vector<Tag>{Tag{10 * kMs, 0}, Tag{20 * kMs, 0}});
  // The last completion is blocked on (30ms,0): report goes out.
  const auto nets = tags_of_kind(out, SignalKind::kNet);
  REQUIRE(!nets.empty());
  CHECK(nets.back() == Tag{30 * kMs, 0});

  out = receiver.on_tag_grant(Tag::forever());  // drains the rest
  CHECK(processed.back() == Tag{30 * kMs, 0});
  CHECK(receiver.queued_events() == 0);
}

TEST_CASE("grant regression is a protocol fault") {
  Fixture f;
  FederateCore receiver(1, f.delays, false, {});
  (void)receiver.on_tag_grant(Tag{20 * kMs, 0});
  CHECK(!receiver.fault().has_value());
  (void)receiver.on_tag_grant(Tag{20 * kMs, 0});
  REQUIRE(receiver.fault().has_value());
  CHECK(receiver.fault()->find("TAG regression") != std::string::npos);
  CHECK(!receiver.can_advance());
}

TEST_CASE("message at or before the current tag is a tardy fault") {
  Fixture f;
  FederateCore receiver(1, f.delays, false, {});
  receiver.on_receive_msg(Tag{10 * kMs, 0}, "a");
  (void)receiver.on_tag_grant(Tag{10 * kMs, 0});
  CHECK(receiver.current() == Tag{10 * kMs, 0});
  receiver.on_receive_msg(Tag{10 * kMs, 0}, "late");  // equal tag: boundary case
  REQUIRE(receiver.fault().has_value());
  CHECK(receiver.fault()->find("tardy") != std::string::npos);
}

TEST_CASE("equal-tag messages are processed in arrival order") {
  Fixture f;
  std::vector<std::string> seen;
  ReactionTable reactions;
  reactions.on_message = [&](ReactionContext&, const Event& e) { seen.push_back(e.body); };
  FederateCore receiver(1, f.delays, false, std::move(reactions));
  receiver.on_receive_msg(Tag{10 * kMs, 0}, "first");
  receiver.on_receive_msg(Tag{10 * kMs, 0}, "second");
  (void)receiver.on_tag_grant(Tag{10 * kMs, 0});
  CHECK(seen == std::vector<std::string>{"first", "second"});
  CHECK(receiver.current() == Tag{10 * kMs, 0});
}

TEST_CASE("with suppression disabled no state is consulted and no skip happens") {
  Fixture f;
  FederateCore sender(0, f.delays, false, {});
  sender.schedule_initial(Tag{0, 0}, EventAction::kTimerFire);
  (void)sender.start();
  (void)sender.on_dnet(Tag::forever());  // ignored entirely
  auto out = sender.advance_one();
  CHECK(tags_of_kind(out, SignalKind::kNet) == std::vector<Tag>{Tag::forever()});
  CHECK(sender.suppression_bound() == Tag::never());
  CHECK(sender.skipped_report() == Tag::never());
}

TEST_CASE("skip bookkeeping keeps the skipped report at or below the bound") {
  Fixture f;
  FederateCore sender(0, f.delays, true, {});
  for (TimeValue t = 0; t <= 100 * kMs; t += 20 * kMs) {
    sender.schedule_initial(Tag{t, 0}, EventAction::kTimerFire);
  }
  (void)sender.start();
  (void)sender.on_dnet(Tag{60 * kMs, 0});
  while (sender.can_advance()) {
    (void)sender.advance_one();
    if (sender.skipped_report() != Tag::never()) {
      CHECK(sender.skipped_report() <= sender.suppression_bound());
    }
  }
}
