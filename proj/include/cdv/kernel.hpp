#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cdv/sim_time.hpp"

namespace cdv {

class KernelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Dispatch order for events sharing a tick. Monitors see the post-state.
enum class Priority : std::uint8_t { world = 0, driver = 1, sut = 2, sensors = 3, monitors = 4 };

using ProcessId = std::uint32_t;

struct Signal {
  std::string channel;
  std::string name;
};
struct ParamChange {
  std::string name;
  std::string value;
};
struct SensorRead {};
struct MotionDone {
  std::uint32_t motion = 0;
};
struct Tick {
  std::uint64_t token = 0;
};

using Payload = std::variant<Signal, ParamChange, SensorRead, MotionDone, Tick>;

/// A unit of work for one process. `seq` is assigned by the kernel.
struct Event {
  SimTime time;
  ProcessId process = 0;
  std::uint64_t seq = 0;
  Payload payload;
};

std::string payload_kind(const Payload& p);
std::string payload_text(const Payload& p);

struct LogRecord {
  SimTime time;
  std::string source;
  std::string kind;
  std::string payload;
};

/// Ordered record of everything dispatched or emitted during a run.
struct EventLog {
  std::vector<LogRecord> records;

  /// `<tick>\t<source>\t<kind>\t<payload>` per line.
  std::string serialize() const;
};

class Kernel;

class Process {
 public:
  virtual ~Process() = default;
  virtual void handle(const Event& event, Kernel& kernel) = 0;
};

/// Named FIFO of signal names.
class Channel {
 public:
  explicit Channel(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  bool empty() const { return queue_.empty(); }
  std::size_t size() const { return queue_.size(); }
  void push(std::string signal) { queue_.push_back(std::move(signal)); }
  std::string pop();
  std::vector<std::string> drain();

 private:
  std::string name_;
  std::deque<std::string> queue_;
};

/// Deterministic discrete-event core. Single logical timeline; events are
/// dispatched in (time, priority, process, seq) order.
class Kernel {
 public:
  Kernel() = default;
  Kernel(const Kernel&) = delete;
  Kernel& operator=(const Kernel&) = delete;

  ProcessId add_process(std::string name, Priority priority, Process& process);

  /// Enqueues `event`. Throws KernelError when it would be dispatched before
  /// the event currently being handled.
  void schedule(Event event);

  /// Schedules at `now() + delay`.
  void schedule_after(ProcessId process, std::uint64_t delay, Payload payload);

  /// Schedules at the earliest point in the total order after the current
  /// dispatch: this tick if `process` has a later priority, else the next tick.
  void schedule_asap(ProcessId process, Payload payload);

  /// Dispatches every event with time <= horizon. Returns the full log so far.
  const EventLog& run_until(SimTime horizon);

  SimTime now() const { return now_; }
  const EventLog& log() const { return log_; }

  /// Appends an observation line stamped with now().
  void record(const std::string& source, std::string kind, std::string payload);

  Channel& channel(const std::string& name);

  /// Pushes `signal` onto `channel_name` and notifies its listeners.
  void send(const std::string& channel_name, const std::string& signal, const std::string& sender);

  /// Registers `process` to receive a Signal event for every send on the channel.
  void listen(const std::string& channel_name, ProcessId process);

  const std::string& process_name(ProcessId id) const { return processes_.at(id).name; }
  Priority process_priority(ProcessId id) const { return processes_.at(id).priority; }

 private:
  struct Entry {
    std::string name;
    Priority priority;
    Process* process;
    std::uint64_t next_seq = 0;
  };

  struct Key {
    std::uint64_t time;
    std::uint8_t priority;
    ProcessId process;
    std::uint64_t seq;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  Key key_of(const Event& e) const;

  struct Later {
    const Kernel* kernel;
    bool operator()(const Event& a, const Event& b) const { return kernel->key_of(b) < kernel->key_of(a); }
  };

  std::vector<Entry> processes_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_{Later{this}};
  std::map<std::string, Channel> channels_;
  std::map<std::string, std::vector<ProcessId>> listeners_;
  SimTime now_{};
  bool dispatching_ = false;
  Key current_{};
  EventLog log_;
};

}  // namespace cdv
