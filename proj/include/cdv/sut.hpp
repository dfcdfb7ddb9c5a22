#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cdv/kernel.hpp"
#include "cdv/observation.hpp"
#include "cdv/recorder.hpp"
#include "cdv/world.hpp"

namespace cdv {

inline constexpr std::string_view kRobotInput = "robot.in";
inline constexpr std::string_view kRobotOutput = "robot.out";
inline constexpr std::string_view kStartRobot = "startRobot";
inline constexpr std::string_view kHumanIsReady = "humanIsReady";
inline constexpr std::string_view kInformHuman = "informHumanOfHandoverStart";

struct RobotConfig {
  std::uint64_t receive_timeout_1 = 600;
  std::uint64_t receive_timeout_2 = 600;
  std::uint64_t sense_timeout = 600;
  std::uint64_t release_hold = 40;
};

struct OutcomeEvent {
  OutcomeKind kind;
  SimTime time;
};

/// Instrumented block: a state plus a branch-arm index within it.
struct BlockId {
  RobotState state;
  std::uint8_t arm;
  friend bool operator==(const BlockId&, const BlockId&) = default;
};

struct BlockInfo {
  BlockId id;
  std::string_view description;
};

struct StateTransition {
  RobotState from;
  RobotState to;
  friend bool operator==(const StateTransition&, const StateTransition&) = default;
};

/// Identifies the instrumentation tables below; coverage reports built
/// against different tables do not merge.
inline constexpr std::string_view kInstrumentationVersion = "handover-blocks-1";

std::span<const BlockInfo> block_table();
std::size_t block_index(BlockId id);
/// Every edge of the controller, self-loops included.
std::span<const StateTransition> transition_table();
std::size_t transition_index(StateTransition t);

/// The robot's handover controller as a polled state machine.
class HandoverController : public Process {
 public:
  HandoverController(World& world, Recorder& recorder, RobotConfig config = {});

  void attach(Kernel& kernel, ProcessId self, ProcessId world);
  /// Schedules the first step at tick 0.
  void start();

  void handle(const Event& event, Kernel& kernel) override;

  RobotState state() const { return state_; }
  const RobotConfig& config() const { return config_; }
  const std::optional<OutcomeEvent>& outcome() const { return outcome_; }

  /// Hit count per entry of block_table().
  const std::vector<std::uint64_t>& block_hits() const { return block_hits_; }
  /// Distinct blocks visited, grouped by state in table order.
  std::vector<BlockId> coverage_points() const;
  /// States in the order they were entered.
  const std::vector<RobotState>& state_path() const { return path_; }
  /// Transitions taken, self-loops included, in order.
  const std::vector<StateTransition>& transitions() const { return transitions_; }

 private:
  enum class Step { advance, poll, wait, halt };

  Step step();
  void enter(RobotState next);
  void hit(std::uint8_t arm);
  void motion(MotionKind kind);
  Step time_out();
  bool drain_for(std::string_view wanted);

  World& world_;
  Recorder& recorder_;
  RobotConfig config_;
  Kernel* kernel_ = nullptr;
  ProcessId self_ = 0;
  ProcessId world_id_ = 0;

  RobotState state_ = RobotState::reset;
  bool started_ = false;
  int phase_ = 0;
  SimTime entered_{};
  std::optional<std::uint32_t> awaiting_motion_;
  std::uint64_t tick_token_ = 0;
  SensorSnapshot last_snapshot_{};
  std::optional<OutcomeEvent> outcome_;

  std::vector<std::uint64_t> block_hits_;
  std::vector<RobotState> path_;
  std::vector<StateTransition> transitions_;
};

}  // namespace cdv
