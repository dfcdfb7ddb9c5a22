#include "cdv/driver.hpp"

#include "cdv/sut.hpp"

namespace cdv {

std::string_view status_name(ActionStatus s) {
  switch (s) {
    case ActionStatus::pending: return "pending";
    case ActionStatus::done: return "done";
    case ActionStatus::timed_out_waiting: return "timed_out_waiting";
    case ActionStatus::truncated_at_horizon: return "truncated_at_horizon";
  }
  return "?";
}

std::string canonical_signal(std::string_view name) {
  if (name == "activateRobot") return std::string(kStartRobot);
  return std::string(name);
}

void validate_test(const Test& test) {
  for (std::size_t i = 0; i < test.actions.size(); ++i) {
    const Action& a = test.actions[i];
    const int line = static_cast<int>(i + 1);
    if (a.name.empty()) throw FormatError(line, "action without a name");
    if (a.verb != Verb::setparam) {
      if (a.value) throw FormatError(line, "signal actions take no value");
      continue;
    }
    if (!is_param_name(a.name)) throw FormatError(line, "unknown parameter '" + a.name + "'");
    if (!a.value) throw FormatError(line, "setparam without a value");
    if (a.name == "time") {
      auto* n = std::get_if<std::int64_t>(&*a.value);
      if (!n || *n < 1) throw FormatError(line, "time expects a positive integer");
    } else if (!std::holds_alternative<bool>(*a.value)) {
      throw FormatError(line, a.name + " expects true or false");
    }
  }
}

Driver::Driver(Test test, World& world, Recorder& recorder, DriverConfig config)
    : test_(std::move(test)), world_(world), recorder_(recorder), config_(config), rng_(test_.seed) {
  validate_test(test_);
  records_.resize(test_.actions.size());
}

void Driver::attach(Kernel& kernel, ProcessId self) {
  kernel_ = &kernel;
  self_ = self;
  kernel.listen(std::string(kRobotOutput), self);
}

void Driver::start() { kernel_->schedule(Event{SimTime{0}, self_, 0, Tick{token_}}); }

void Driver::finish(ActionStatus status) {
  records_[next_].finish = kernel_->now();
  records_[next_].status = status;
  ++next_;
  waiting_ = false;
  awaiting_signal_.reset();
  ++token_;
}

void Driver::wait_ticks(std::uint64_t n) {
  waiting_ = true;
  kernel_->schedule_after(self_, n, Tick{token_});
}

void Driver::handle(const Event& event, Kernel&) {
  if (auto* t = std::get_if<Tick>(&event.payload)) {
    if (t->token != token_) return;
    if (waiting_) finish(awaiting_signal_ ? ActionStatus::timed_out_waiting : ActionStatus::done);
    run();
  } else if (auto* s = std::get_if<Signal>(&event.payload)) {
    // Only signals emitted after the wait began are ever delivered here.
    if (!waiting_ || !awaiting_signal_ || *awaiting_signal_ != s->name) return;
    finish(ActionStatus::done);
    run();
  }
}

void Driver::run() {
  while (next_ < test_.actions.size()) {
    const Action& a = test_.actions[next_];
    records_[next_].start = kernel_->now();
    switch (a.verb) {
      case Verb::sendsignal: {
        const std::string name = canonical_signal(a.name);
        kernel_->send(std::string(kRobotInput), name, "driver");
        recorder_.emit("driver", obs::SignalSent{"driver", name});
        finish(ActionStatus::done);
        break;
      }
      case Verb::receivesignal:
        awaiting_signal_ = a.name;
        wait_ticks(config_.receive_timeout);
        return;
      case Verb::setparam: {
        if (a.name == "time") {
          recorder_.emit("driver", obs::ParamSet{a.name, std::to_string(std::get<std::int64_t>(*a.value))});
          wait_ticks(static_cast<std::uint64_t>(std::get<std::int64_t>(*a.value)));
          return;
        }
        world_.apply_param(a.name, *a.value, rng_, a.sample);
        recorder_.emit("driver", obs::ParamSet{a.name, std::get<bool>(*a.value) ? "true" : "false"});
        finish(ActionStatus::done);
        break;
      }
    }
  }
}

DriveLog Driver::drive_log() const {
  DriveLog log{records_, ActionStatus::done};
  for (auto& r : log.actions) {
    if (r.status == ActionStatus::pending) {
      r.status = ActionStatus::truncated_at_horizon;
      log.completion = ActionStatus::truncated_at_horizon;
    }
  }
  return log;
}

}  // namespace cdv
