#include "cdv/recorder.hpp"

#include <cstdio>

namespace cdv {

namespace {

const char* flag(bool b) { return b ? "T" : "F"; }

}  // namespace

std::pair<std::string, std::string> describe(const ObservationData& data) {
  if (auto* s = std::get_if<obs::StateEntered>(&data)) return {"state", std::string(state_name(s->state))};
  if (auto* s = std::get_if<obs::SensorsRead>(&data)) {
    const auto& snap = s->snapshot;
    if (!snap.available) return {"sensors", "unavailable"};
    return {"sensors", std::string(flag(snap.gaze_ok)) + flag(snap.pressure_ok) + flag(snap.location_ok)};
  }
  if (auto* g = std::get_if<obs::GripperClose>(&data)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", g->hand_distance);
    return {"gripper_close", buf};
  }
  if (std::holds_alternative<obs::Release>(data)) return {"release", ""};
  if (auto* o = std::get_if<obs::Outcome>(&data)) return {"outcome", std::string(outcome_name(o->kind))};
  if (auto* s = std::get_if<obs::SignalSent>(&data)) return {"signal", s->sender + ":" + s->name};
  const auto& p = std::get<obs::ParamSet>(data);
  return {"param", p.name + "=" + p.value};
}

}  // namespace cdv
