#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdv/checker.hpp"
#include "cdv/coverage.hpp"
#include "cdv/driver.hpp"
#include "cdv/kernel.hpp"
#include "cdv/sut.hpp"
#include "cdv/test_format.hpp"
#include "cdv/world.hpp"

namespace cdv {

inline constexpr std::uint64_t kDefaultHorizon = 2400;

struct RunConfig {
  std::uint64_t horizon = kDefaultHorizon;
  Layout layout{};
  RobotConfig robot{};
  DriverConfig driver{};
  MonitorConfig monitors{};
};

struct RunResult {
  std::string test_id;
  EventLog log;
  Trace trace;
  DriveLog drive;
  std::vector<std::uint64_t> block_hits;
  std::vector<StateTransition> transitions;
  std::vector<RobotState> state_path;
  std::optional<OutcomeEvent> outcome;
  MonitorReport monitors;
  CoverageReport coverage;
};

/// Simulates one test from tick 0 through the horizon, then checks and
/// collects coverage.
RunResult run_test(const Test& test, const RunConfig& config = {});

}  // namespace cdv
