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
#include <string_view>

#include "ddesim/tag.hpp"
#include "ddesim/topology.hpp"

namespace ddesim {

/// Coordination signal kinds. MSG carries an application payload and travels
/// federate -> coordinator -> federate; LTC and NET go federate -> coordinator;
/// TAG and DNET go coordinator -> federate.
enum class SignalKind { kMsg, kLtc, kNet, kTag, kDnet };

[[nodiscard]] constexpr std::string_view to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::kMsg: return "MSG";
    case SignalKind::kLtc: return "LTC";
    case SignalKind::kNet: return "NET";
    case SignalKind::kTag: return "TAG";
    case SignalKind::kDnet: return "DNET";
  }
  return "?";
}

/// One coordination signal. src/dst are the logical endpoints: the origin
/// federate and destination federate for MSG, the federate and kRtiActor for
/// LTC/NET, kRtiActor and the federate for TAG/DNET.
struct Signal {
  SignalKind kind{SignalKind::kNet};
  Tag tag;
  FederateId src{kRtiActor};
  FederateId dst{kRtiActor};
  std::string body;  // MSG only

  static Signal msg(FederateId src, FederateId dst, Tag tag, std::string body) {
    return Signal{SignalKind::kMsg, tag, src, dst, std::move(body)};
  }
  static Signal ltc(FederateId src, Tag tag) {
    return Signal{SignalKind::kLtc, tag, src, kRtiActor, {}};
  }
  static Signal net(FederateId src, Tag tag) {
    return Signal{SignalKind::kNet, tag, src, kRtiActor, {}};
  }
  static Signal tag_grant(FederateId dst, Tag tag) {
    return Signal{SignalKind::kTag, tag, kRtiActor, dst, {}};
  }
  static Signal dnet(FederateId dst, Tag tag) {
    return Signal{SignalKind::kDnet, tag, kRtiActor, dst, {}};
  }
};

}  // namespace ddesim
