#include "cdv/observation.hpp"

namespace cdv {

std::string_view state_name(RobotState s) {
  switch (s) {
    case RobotState::reset: return "reset";
    case RobotState::receive_signal_1: return "receive_signal_1";
    case RobotState::move: return "move";
    case RobotState::send_signal: return "send_signal";
    case RobotState::receive_signal_2: return "receive_signal_2";
    case RobotState::sense: return "sense";
    case RobotState::decide: return "decide";
    case RobotState::release: return "release";
    case RobotState::done: return "done";
  }
  return "?";
}

std::string_view state_label(RobotState s) {
  switch (s) {
    case RobotState::receive_signal_1:
    case RobotState::receive_signal_2: return "receive_signal";
    default: return state_name(s);
  }
}

std::optional<RobotState> parse_state(std::string_view name) {
  for (RobotState s : kAllRobotStates) {
    if (state_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::timeout: return "timeout";
    case OutcomeKind::decide_release: return "decide_release";
    case OutcomeKind::decide_no_release: return "decide_no_release";
  }
  return "?";
}

}  // namespace cdv
