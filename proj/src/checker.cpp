#include "cdv/checker.hpp"

#include <nlohmann/json.hpp>

namespace cdv {

std::string_view monitor_name(MonitorId id) {
  static constexpr std::string_view names[] = {"R1", "R2", "R3", "R4", "R5"};
  return names[static_cast<std::size_t>(id)];
}

std::string_view monitor_requirement(MonitorId id) {
  switch (id) {
    case MonitorId::R1: return "gaze, pressure and location sensed correct => object released";
    case MonitorId::R2: return "gaze, pressure or location sensed incorrect => object not released";
    case MonitorId::R3: return "decision made before the time threshold";
    case MonitorId::R4: return "robot times out, decides to release, or decides not to release";
    case MonitorId::R5: return "gripper not closed while the human hand is too close";
  }
  return "";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::P: return "P";
    case Verdict::F: return "F";
    case Verdict::NT: return "NT";
    case Verdict::I: return "I";
  }
  return "?";
}

MonitorPhase MonitorState::phase() const {
  if (armings.empty()) return MonitorPhase::idle;
  for (const auto& a : armings) {
    if (!a.result) return MonitorPhase::armed;
  }
  return MonitorPhase::resolved;
}

MonitorState initial_state(MonitorId id) { return MonitorState{id, {}, false}; }

namespace {

Verdict lapse_result(MonitorId id) { return id == MonitorId::R2 ? Verdict::P : Verdict::F; }

void settle_until(MonitorState& s, SimTime t) {
  for (auto& a : s.armings) {
    if (!a.result && a.deadline && *a.deadline <= t) {
      a.result = lapse_result(s.id);
      a.resolved_at = *a.deadline;
    }
  }
}

void resolve_open(MonitorState& s, Verdict v, SimTime t) {
  for (auto& a : s.armings) {
    if (!a.result) {
      a.result = v;
      a.resolved_at = t;
    }
  }
}

}  // namespace

MonitorState observe(MonitorState s, const Observation& e, const MonitorConfig& cfg) {
  settle_until(s, e.time);
  const auto& d = e.data;
  switch (s.id) {
    case MonitorId::R1:
    case MonitorId::R2:
      if (auto* r = std::get_if<obs::SensorsRead>(&d)) {
        if (!r->snapshot.available) break;
        const bool ok = r->snapshot.all_ok();
        if (ok == (s.id == MonitorId::R1)) {
          const auto window = s.id == MonitorId::R1 ? cfg.release_window : cfg.no_release_window;
          s.armings.push_back(Arming{e.time, e.time + window, std::nullopt, std::nullopt});
        }
      } else if (std::holds_alternative<obs::Release>(d)) {
        resolve_open(s, s.id == MonitorId::R1 ? Verdict::P : Verdict::F, e.time);
      }
      break;
    case MonitorId::R3:
      if (auto* st = std::get_if<obs::StateEntered>(&d); st && st->state == RobotState::sense && !s.sense_seen) {
        s.sense_seen = true;
        s.armings.push_back(Arming{e.time, e.time + cfg.decision_threshold, std::nullopt, std::nullopt});
      } else if (std::holds_alternative<obs::Outcome>(d)) {
        resolve_open(s, Verdict::P, e.time);
      }
      break;
    case MonitorId::R4:
      if (auto* st = std::get_if<obs::StateEntered>(&d)) {
        if (st->state == RobotState::reset) s.armings.push_back(Arming{e.time, std::nullopt, std::nullopt, std::nullopt});
        if (st->state == RobotState::done) resolve_open(s, Verdict::F, e.time);
      } else if (std::holds_alternative<obs::Outcome>(d)) {
        resolve_open(s, Verdict::P, e.time);
      }
      break;
    case MonitorId::R5:
      if (auto* g = std::get_if<obs::GripperClose>(&d)) {
        const Verdict v = g->hand_distance < cfg.min_hand_distance ? Verdict::F : Verdict::P;
        s.armings.push_back(Arming{e.time, std::nullopt, v, e.time});
      }
      break;
  }
  return s;
}

MonitorState close(MonitorState s, SimTime end) {
  settle_until(s, end);
  return s;
}

Verdict aggregate(const MonitorState& s) {
  bool any_p = false, any_open = false;
  for (const auto& a : s.armings) {
    if (!a.result) any_open = true;
    else if (*a.result == Verdict::F) return Verdict::F;
    else any_p = true;
  }
  if (any_open) return Verdict::I;
  return any_p ? Verdict::P : Verdict::NT;
}

MonitorReport check_trace(const Trace& trace, std::string test_id, const MonitorConfig& config) {
  MonitorReport report;
  report.test_id = std::move(test_id);
  for (MonitorId id : kAllMonitors) {
    MonitorState s = initial_state(id);
    for (const auto& e : trace.events) s = observe(std::move(s), e, config);
    s = close(std::move(s), trace.end);
    report.records[static_cast<std::size_t>(id)] = MonitorRecord{id, s.armings, aggregate(s)};
  }
  return report;
}

std::string to_jsonl(const MonitorReport& report) {
  std::string out;
  for (const auto& r : report.records) {
    nlohmann::ordered_json j;
    j["test_id"] = report.test_id;
    j["monitor"] = monitor_name(r.id);
    auto activations = nlohmann::ordered_json::array();
    auto resolutions = nlohmann::ordered_json::array();
    for (const auto& a : r.armings) {
      activations.push_back(a.at.ticks);
      nlohmann::ordered_json res;
      res["armed"] = a.at.ticks;
      res["result"] = a.result ? verdict_name(*a.result) : verdict_name(Verdict::I);
      if (a.resolved_at) res["at"] = a.resolved_at->ticks;
      resolutions.push_back(std::move(res));
    }
    j["activations"] = std::move(activations);
    j["resolutions"] = std::move(resolutions);
    j["verdict"] = verdict_name(r.verdict);
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace cdv
