#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cdv/testbench.hpp"

namespace cdv::testing {

inline constexpr const char* kHandoverTest =
    "sendsignal activateRobot\n"
    "setparam time = 40\n"
    "receivesignal informHumanOfHandoverStart\n"
    "sendsignal humanIsReady\n"
    "setparam time = 10\n"
    "setparam honTask = true\n"
    "setparam hgazeOk = true\n"
    "setparam hpressureOk = true\n"
    "setparam hlocationOk = true\n";

inline Test make_test(const std::string& text, std::uint64_t seed = 1, std::string id = "t") {
  Test t = parse_test(text);
  t.seed = seed;
  t.id = std::move(id);
  return t;
}

/// Tick at which each state was entered, in order.
inline std::vector<std::pair<std::uint64_t, RobotState>> entries(const Trace& trace) {
  std::vector<std::pair<std::uint64_t, RobotState>> out;
  for (const auto& o : trace.events) {
    if (const auto* s = std::get_if<obs::StateEntered>(&o.data)) out.emplace_back(o.time.ticks, s->state);
  }
  return out;
}

inline std::uint64_t block_hits(const RunResult& r, RobotState s, std::uint8_t arm) {
  return r.block_hits[block_index({s, arm})];
}

}  // namespace cdv::testing
