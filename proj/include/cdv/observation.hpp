#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cdv/sim_time.hpp"

namespace cdv {

/// The controller's nine states. The two signal-wait states share the label
/// `receive_signal` in reports and are disambiguated internally.
enum class RobotState : std::uint8_t {
  reset,
  receive_signal_1,
  move,
  send_signal,
  receive_signal_2,
  sense,
  decide,
  release,
  done,
};

inline constexpr std::size_t kRobotStateCount = 9;
inline constexpr std::array<RobotState, kRobotStateCount> kAllRobotStates = {
    RobotState::reset,          RobotState::receive_signal_1, RobotState::move,
    RobotState::send_signal,    RobotState::receive_signal_2, RobotState::sense,
    RobotState::decide,         RobotState::release,          RobotState::done};

std::string_view state_name(RobotState s);
/// Label as it appears in the controller's own enumeration.
std::string_view state_label(RobotState s);
std::optional<RobotState> parse_state(std::string_view name);

enum class OutcomeKind : std::uint8_t { timeout, decide_release, decide_no_release };
std::string_view outcome_name(OutcomeKind k);

struct SensorSnapshot {
  bool gaze_ok = false;
  bool pressure_ok = false;
  bool location_ok = false;
  bool available = false;

  bool all_ok() const { return gaze_ok && pressure_ok && location_ok; }
  friend bool operator==(const SensorSnapshot&, const SensorSnapshot&) = default;
};

namespace obs {
struct StateEntered {
  RobotState state;
};
struct SensorsRead {
  SensorSnapshot snapshot;
};
/// hand(close) invoked; distance between hand centres at that instant.
struct GripperClose {
  double hand_distance = 0.0;
};
/// Gripper opened to hand the object over.
struct Release {};
struct Outcome {
  OutcomeKind kind;
};
struct SignalSent {
  std::string sender;
  std::string name;
};
struct ParamSet {
  std::string name;
  std::string value;
};
}  // namespace obs

using ObservationData =
    std::variant<obs::StateEntered, obs::SensorsRead, obs::GripperClose, obs::Release, obs::Outcome, obs::SignalSent,
                 obs::ParamSet>;

struct Observation {
  SimTime time;
  ObservationData data;
};

/// Abstract, time-ordered trace the monitors and coverage collector consume.
/// `end` is the first tick not observed.
struct Trace {
  std::vector<Observation> events;
  SimTime end{};
};

}  // namespace cdv
