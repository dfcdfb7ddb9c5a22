#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdv/observation.hpp"

namespace cdv {

enum class MonitorId : std::uint8_t { R1, R2, R3, R4, R5 };
inline constexpr std::size_t kMonitorCount = 5;
inline constexpr std::array<MonitorId, kMonitorCount> kAllMonitors = {MonitorId::R1, MonitorId::R2, MonitorId::R3,
                                                                     MonitorId::R4, MonitorId::R5};
std::string_view monitor_name(MonitorId id);
/// Requirement text each monitor checks.
std::string_view monitor_requirement(MonitorId id);

enum class Verdict : std::uint8_t { P, F, NT, I };
std::string_view verdict_name(Verdict v);

/// Windows are [arming, arming + window) in ticks.
struct MonitorConfig {
  std::uint64_t release_window = 60;      // R1: 3 s
  std::uint64_t no_release_window = 40;   // R2: 2 s
  std::uint64_t decision_threshold = 640; // R3
  double min_hand_distance = 0.05;        // R5, metres
};

struct Arming {
  SimTime at;
  std::optional<SimTime> deadline;
  std::optional<Verdict> result;  // P or F once resolved
  std::optional<SimTime> resolved_at;
};

enum class MonitorPhase : std::uint8_t { idle, armed, resolved };

struct MonitorState {
  MonitorId id;
  std::vector<Arming> armings;
  bool sense_seen = false;

  MonitorPhase phase() const;
};

MonitorState initial_state(MonitorId id);

/// Advances one monitor over the next event of the ordered stream.
MonitorState observe(MonitorState state, const Observation& event, const MonitorConfig& config = {});

/// Settles windows that closed before `end` (first unobserved tick).
MonitorState close(MonitorState state, SimTime end);

/// Any F -> F; else any unresolved arming -> I; else any P -> P; else NT.
Verdict aggregate(const MonitorState& state);

inline Verdict finalize(const MonitorState& state, SimTime end) { return aggregate(close(state, end)); }

struct MonitorRecord {
  MonitorId id;
  std::vector<Arming> armings;
  Verdict verdict;
};

struct MonitorReport {
  std::string test_id;
  std::array<MonitorRecord, kMonitorCount> records;

  const MonitorRecord& operator[](MonitorId id) const { return records[static_cast<std::size_t>(id)]; }
};

/// Runs all five monitors over a complete trace.
MonitorReport check_trace(const Trace& trace, std::string test_id, const MonitorConfig& config = {});

/// One JSON object per monitor per line.
std::string to_jsonl(const MonitorReport& report);

}  // namespace cdv
