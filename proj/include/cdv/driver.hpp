#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdv/kernel.hpp"
#include "cdv/recorder.hpp"
#include "cdv/test_format.hpp"
#include "cdv/world.hpp"

namespace cdv {

enum class ActionStatus : std::uint8_t { pending, done, timed_out_waiting, truncated_at_horizon };
std::string_view status_name(ActionStatus s);

struct ActionRecord {
  std::optional<SimTime> start;
  std::optional<SimTime> finish;
  ActionStatus status = ActionStatus::pending;
};

struct DriveLog {
  std::vector<ActionRecord> actions;
  /// done, or truncated_at_horizon when some action never finished.
  ActionStatus completion = ActionStatus::done;
};

struct DriverConfig {
  std::uint64_t receive_timeout = 600;
};

/// Maps signal aliases onto the robot's input names (`activateRobot` is the
/// workflow's name for `startRobot`).
std::string canonical_signal(std::string_view name);

/// Throws FormatError (line = action index + 1) for actions the driver cannot
/// execute. Called before any simulation starts.
void validate_test(const Test& test);

/// Executes a Test one action at a time as a kernel process. Reactive waits
/// are subscriptions on the robot's output channel.
class Driver : public Process {
 public:
  Driver(Test test, World& world, Recorder& recorder, DriverConfig config = {});

  void attach(Kernel& kernel, ProcessId self);
  void start();
  void handle(const Event& event, Kernel& kernel) override;

  /// Snapshot of progress; unfinished actions are reported as truncated.
  DriveLog drive_log() const;
  const Test& test() const { return test_; }

 private:
  void run();
  void finish(ActionStatus status);
  void wait_ticks(std::uint64_t n);

  Test test_;
  World& world_;
  Recorder& recorder_;
  DriverConfig config_;
  Rng rng_;
  Kernel* kernel_ = nullptr;
  ProcessId self_ = 0;

  std::size_t next_ = 0;
  std::uint64_t token_ = 0;
  std::optional<std::string> awaiting_signal_;
  bool waiting_ = false;
  std::vector<ActionRecord> records_;
};

}  // namespace cdv
