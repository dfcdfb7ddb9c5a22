#pragma once

#include <string>
#include <utility>

#include "cdv/kernel.hpp"
#include "cdv/observation.hpp"

namespace cdv {

/// Kind and payload columns used when an observation is written to the event log.
std::pair<std::string, std::string> describe(const ObservationData& data);

/// Appends observations to both the kernel log and the typed trace.
class Recorder {
 public:
  explicit Recorder(Kernel& kernel) : kernel_(kernel) {}

  void emit(const std::string& source, ObservationData data) {
    auto [kind, payload] = describe(data);
    kernel_.record(source, std::move(kind), std::move(payload));
    trace_.events.push_back(Observation{kernel_.now(), std::move(data)});
  }

  Trace& trace() { return trace_; }
  const Trace& trace() const { return trace_; }

 private:
  Kernel& kernel_;
  Trace trace_;
};

}  // namespace cdv
