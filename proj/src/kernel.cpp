#include "cdv/kernel.hpp"

#include <sstream>

namespace cdv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string payload_kind(const Payload& p) {
  return std::visit(Overloaded{[](const Signal&) { return std::string("signal"); },
                               [](const ParamChange&) { return std::string("param"); },
                               [](const SensorRead&) { return std::string("sensor_read"); },
                               [](const MotionDone&) { return std::string("motion_done"); },
                               [](const Tick&) { return std::string("tick"); }},
                    p);
}

std::string payload_text(const Payload& p) {
  return std::visit(
      Overloaded{[](const Signal& s) { return s.channel + ":" + s.name; },
                 [](const ParamChange& c) { return c.name + "=" + c.value; },
                 [](const SensorRead&) { return std::string(); },
                 [](const MotionDone& m) { return std::to_string(m.motion); },
                 [](const Tick& t) { return std::to_string(t.token); }},
      p);
}

std::string EventLog::serialize() const {
  std::ostringstream out;
  for (const auto& r : records) {
    out << r.time.ticks << '\t' << r.source << '\t' << r.kind << '\t' << r.payload << '\n';
  }
  return out.str();
}

std::string Channel::pop() {
  std::string s = std::move(queue_.front());
  queue_.pop_front();
  return s;
}

std::vector<std::string> Channel::drain() {
  std::vector<std::string> out(std::make_move_iterator(queue_.begin()), std::make_move_iterator(queue_.end()));
  queue_.clear();
  return out;
}

ProcessId Kernel::add_process(std::string name, Priority priority, Process& process) {
  processes_.push_back(Entry{std::move(name), priority, &process});
  return static_cast<ProcessId>(processes_.size() - 1);
}

Kernel::Key Kernel::key_of(const Event& e) const {
  return Key{e.time.ticks, static_cast<std::uint8_t>(processes_[e.process].priority), e.process, e.seq};
}

void Kernel::schedule(Event event) {
  if (event.process >= processes_.size()) throw KernelError("schedule: unknown process");
  if (event.time < now_) {
    throw KernelError("schedule: event at tick " + std::to_string(event.time.ticks) + " is before now (" +
                      std::to_string(now_.ticks) + ")");
  }
  event.seq = processes_[event.process].next_seq++;
  if (dispatching_ && !(current_ < key_of(event))) {
    throw KernelError("schedule: event at tick " + std::to_string(event.time.ticks) + " for '" +
                      processes_[event.process].name + "' precedes the event being dispatched");
  }
  queue_.push(std::move(event));
}

void Kernel::schedule_after(ProcessId process, std::uint64_t delay, Payload payload) {
  schedule(Event{now_ + delay, process, 0, std::move(payload)});
}

void Kernel::schedule_asap(ProcessId process, Payload payload) {
  const auto prio = static_cast<std::uint8_t>(processes_.at(process).priority);
  bool same_tick = !dispatching_ || prio > current_.priority ||
                   (prio == current_.priority && process >= current_.process);
  schedule(Event{same_tick ? now_ : now_ + 1, process, 0, std::move(payload)});
}

const EventLog& Kernel::run_until(SimTime horizon) {
  while (!queue_.empty() && queue_.top().time <= horizon) {
    Event e = queue_.top();
    queue_.pop();
    now_ = e.time;
    current_ = key_of(e);
    dispatching_ = true;
    log_.records.push_back(LogRecord{now_, processes_[e.process].name, payload_kind(e.payload), payload_text(e.payload)});
    processes_[e.process].process->handle(e, *this);
    dispatching_ = false;
  }
  return log_;
}

void Kernel::record(const std::string& source, std::string kind, std::string payload) {
  log_.records.push_back(LogRecord{now_, source, std::move(kind), std::move(payload)});
}

Channel& Kernel::channel(const std::string& name) {
  auto it = channels_.find(name);
  if (it == channels_.end()) it = channels_.emplace(name, Channel(name)).first;
  return it->second;
}

void Kernel::send(const std::string& channel_name, const std::string& signal, const std::string& sender) {
  channel(channel_name).push(signal);
  record(sender, "send", channel_name + ":" + signal);
  if (auto it = listeners_.find(channel_name); it != listeners_.end()) {
    for (ProcessId p : it->second) schedule_asap(p, Signal{channel_name, signal});
  }
}

void Kernel::listen(const std::string& channel_name, ProcessId process) {
  listeners_[channel_name].push_back(process);
}

}  // namespace cdv
