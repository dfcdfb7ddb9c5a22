#include "cdv/sut.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cdv {

namespace {

using RS = RobotState;

constexpr std::array<BlockInfo, 25> kBlocks = {{
    {{RS::reset, 0}, "move arm home, open gripper"},
    {{RS::reset, 1}, "home position reached"},
    {{RS::receive_signal_1, 0}, "read signals"},
    {{RS::receive_signal_1, 1}, "startRobot received"},
    {{RS::receive_signal_1, 2}, "loop back"},
    {{RS::move, 0}, "plan and move arm to piece"},
    {{RS::move, 1}, "close gripper"},
    {{RS::move, 2}, "plan and move arm to human"},
    {{RS::move, 3}, "handover pose reached"},
    {{RS::send_signal, 0}, "inform human of handover start"},
    {{RS::receive_signal_2, 0}, "read signals"},
    {{RS::receive_signal_2, 1}, "humanIsReady received"},
    {{RS::receive_signal_2, 2}, "loop back"},
    {{RS::sense, 0}, "read sensors"},
    {{RS::sense, 1}, "signals unavailable, loop back"},
    {{RS::sense, 2}, "all signals available"},
    {{RS::decide, 0}, "evaluate release condition"},
    {{RS::decide, 1}, "all sensors satisfied"},
    {{RS::decide, 2}, "not satisfied, keep object"},
    {{RS::release, 0}, "open gripper"},
    {{RS::release, 1}, "hold elapsed"},
    {{RS::done, 0}, "end of sequence"},
    {{RS::done, 1}, "after timeout"},
    {{RS::done, 2}, "after decision not to release"},
    {{RS::done, 3}, "after release"},
}};

constexpr std::array<StateTransition, 15> kTransitions = {{
    {RS::reset, RS::receive_signal_1},
    {RS::receive_signal_1, RS::receive_signal_1},
    {RS::receive_signal_1, RS::move},
    {RS::receive_signal_1, RS::done},
    {RS::move, RS::send_signal},
    {RS::send_signal, RS::receive_signal_2},
    {RS::receive_signal_2, RS::receive_signal_2},
    {RS::receive_signal_2, RS::sense},
    {RS::receive_signal_2, RS::done},
    {RS::sense, RS::sense},
    {RS::sense, RS::decide},
    {RS::sense, RS::done},
    {RS::decide, RS::release},
    {RS::decide, RS::done},
    {RS::release, RS::done},
}};

}  // namespace

std::span<const BlockInfo> block_table() { return kBlocks; }

std::size_t block_index(BlockId id) {
  auto it = std::find_if(kBlocks.begin(), kBlocks.end(), [&](const BlockInfo& b) { return b.id == id; });
  if (it == kBlocks.end()) throw std::out_of_range("block not in instrumentation table");
  return static_cast<std::size_t>(it - kBlocks.begin());
}

std::span<const StateTransition> transition_table() { return kTransitions; }

std::size_t transition_index(StateTransition t) {
  auto it = std::find(kTransitions.begin(), kTransitions.end(), t);
  if (it == kTransitions.end()) throw std::out_of_range("transition not in controller table");
  return static_cast<std::size_t>(it - kTransitions.begin());
}

HandoverController::HandoverController(World& world, Recorder& recorder, RobotConfig config)
    : world_(world), recorder_(recorder), config_(config), block_hits_(kBlocks.size(), 0) {
  if (config_.receive_timeout_1 == 0 || config_.receive_timeout_2 == 0 || config_.sense_timeout == 0 ||
      config_.release_hold == 0) {
    throw std::invalid_argument("robot timeouts must be positive");
  }
}

void HandoverController::attach(Kernel& kernel, ProcessId self, ProcessId world) {
  kernel_ = &kernel;
  self_ = self;
  world_id_ = world;
}

void HandoverController::start() { kernel_->schedule(Event{SimTime{0}, self_, 0, Tick{tick_token_}}); }

std::vector<BlockId> HandoverController::coverage_points() const {
  std::vector<BlockId> out;
  for (std::size_t i = 0; i < kBlocks.size(); ++i) {
    if (block_hits_[i] > 0) out.push_back(kBlocks[i].id);
  }
  return out;
}

void HandoverController::hit(std::uint8_t arm) { ++block_hits_[block_index(BlockId{state_, arm})]; }

void HandoverController::enter(RobotState next) {
  if (started_) transitions_.push_back({state_, next});
  started_ = true;
  state_ = next;
  phase_ = 0;
  entered_ = kernel_->now();
  path_.push_back(next);
  recorder_.emit("sut", obs::StateEntered{next});
}

void HandoverController::motion(MotionKind kind) { awaiting_motion_ = world_.command(kind, self_); }

HandoverController::Step HandoverController::time_out() {
  outcome_ = OutcomeEvent{OutcomeKind::timeout, kernel_->now()};
  recorder_.emit("sut", obs::Outcome{OutcomeKind::timeout});
  enter(RS::done);
  return Step::advance;
}

bool HandoverController::drain_for(std::string_view wanted) {
  // Anything else on the input channel is not an input of this state.
  auto received = kernel_->channel(std::string(kRobotInput)).drain();
  return std::find(received.begin(), received.end(), wanted) != received.end();
}

void HandoverController::handle(const Event& event, Kernel&) {
  if (auto* t = std::get_if<Tick>(&event.payload)) {
    if (t->token != tick_token_) return;
  } else if (auto* m = std::get_if<MotionDone>(&event.payload)) {
    if (!awaiting_motion_ || *awaiting_motion_ != m->motion) return;
    awaiting_motion_.reset();
  } else {
    return;
  }
  if (!started_) enter(RS::reset);
  for (;;) {
    switch (step()) {
      case Step::advance: continue;
      case Step::poll:
        kernel_->schedule_after(self_, 1, Tick{++tick_token_});
        return;
      case Step::wait:
      case Step::halt: return;
    }
  }
}

HandoverController::Step HandoverController::step() {
  const std::uint64_t elapsed = kernel_->now().ticks - entered_.ticks;
  switch (state_) {
    case RS::reset:
      if (phase_ == 0) {
        hit(0);
        motion(MotionKind::arm_home);
        phase_ = 1;
        return Step::wait;
      }
      hit(1);
      enter(RS::receive_signal_1);
      return Step::advance;

    case RS::receive_signal_1:
    case RS::receive_signal_2: {
      const bool first = state_ == RS::receive_signal_1;
      hit(0);
      if (drain_for(first ? kStartRobot : kHumanIsReady)) {
        hit(1);
        enter(first ? RS::move : RS::sense);
        return Step::advance;
      }
      if (elapsed >= (first ? config_.receive_timeout_1 : config_.receive_timeout_2)) return time_out();
      hit(2);
      transitions_.push_back({state_, state_});
      return Step::poll;
    }

    case RS::move:
      switch (phase_) {
        case 0:
          hit(0);
          motion(MotionKind::arm_to_object);
          phase_ = 1;
          return Step::wait;
        case 1:
          hit(1);
          recorder_.emit("sut", obs::GripperClose{world_.human_robot_hand_distance()});
          motion(MotionKind::gripper_close);
          phase_ = 2;
          return Step::wait;
        case 2:
          hit(2);
          motion(MotionKind::arm_to_handover);
          phase_ = 3;
          return Step::wait;
        default:
          hit(3);
          enter(RS::send_signal);
          return Step::advance;
      }

    case RS::send_signal:
      hit(0);
      kernel_->send(std::string(kRobotOutput), std::string(kInformHuman), "sut");
      recorder_.emit("sut", obs::SignalSent{"robot", std::string(kInformHuman)});
      enter(RS::receive_signal_2);
      return Step::advance;

    case RS::sense: {
      if (elapsed >= config_.sense_timeout) return time_out();
      hit(0);
      last_snapshot_ = world_.read_sensors();
      recorder_.emit("sut", obs::SensorsRead{last_snapshot_});
      if (!last_snapshot_.available) {
        hit(1);
        transitions_.push_back({state_, state_});
        return Step::poll;
      }
      hit(2);
      enter(RS::decide);
      return Step::advance;
    }

    case RS::decide: {
      hit(0);
      const bool ok = last_snapshot_.all_ok();
      hit(ok ? 1 : 2);
      const OutcomeKind kind = ok ? OutcomeKind::decide_release : OutcomeKind::decide_no_release;
      outcome_ = OutcomeEvent{kind, kernel_->now()};
      recorder_.emit("sut", obs::Outcome{kind});
      enter(ok ? RS::release : RS::done);
      return Step::advance;
    }

    case RS::release:
      if (phase_ == 0) {
        hit(0);
        recorder_.emit("sut", obs::Release{});
        motion(MotionKind::gripper_open);
        phase_ = 1;
        return Step::wait;
      }
      if (phase_ == 1) {
        phase_ = 2;
        kernel_->schedule_after(self_, config_.release_hold, Tick{++tick_token_});
        return Step::wait;
      }
      hit(1);
      enter(RS::done);
      return Step::advance;

    case RS::done:
      hit(0);
      if (outcome_) {
        switch (outcome_->kind) {
          case OutcomeKind::timeout: hit(1); break;
          case OutcomeKind::decide_no_release: hit(2); break;
          case OutcomeKind::decide_release: hit(3); break;
        }
      }
      return Step::halt;
  }
  return Step::halt;
}

}  // namespace cdv
