#include "cdv/world.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cdv {

namespace {

double grid_sample(Rng& rng, int lo_milli, int hi_milli) {
  std::uniform_int_distribution<int> d(lo_milli, hi_milli);
  return d(rng) / 1000.0;
}

double wrap_deg(double a) {
  a = std::fmod(a, 360.0);
  if (a < 0) a += 360.0;
  return a;
}

}  // namespace

double bearing_deg(const Eigen::Vector3d& from, const Eigen::Vector3d& to) {
  const Eigen::Vector3d d = to - from;
  return wrap_deg(std::atan2(d.y(), d.x()) * 180.0 / std::numbers::pi);
}

double angle_between_deg(double a, double b) {
  double d = std::fabs(wrap_deg(a) - wrap_deg(b));
  return d > 180.0 ? 360.0 - d : d;
}

Layout load_layout(std::istream& in) {
  Layout layout;
  std::map<std::string, Eigen::Vector3d*> slots = {
      {"robotHome", &layout.robot_home}, {"robotHand", &layout.robot_hand}, {"object", &layout.object},
      {"handover", &layout.handover},    {"humanHand", &layout.human_hand}, {"humanHead", &layout.human_head}};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    if (key.empty()) continue;
    if (eq == std::string::npos) throw ConfigError("layout line " + std::to_string(lineno) + ": expected '='");
    auto it = slots.find(key);
    if (it == slots.end()) throw ConfigError("layout line " + std::to_string(lineno) + ": unknown entity '" + key + "'");
    std::istringstream values(line.substr(eq + 1));
    double x, y, z;
    if (!(values >> x >> y >> z) || !std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
      throw ConfigError("layout line " + std::to_string(lineno) + ": expected three finite coordinates");
    }
    *it->second = Eigen::Vector3d(x, y, z);
    double yaw;
    if (values >> yaw) {
      if (key != "humanHead") throw ConfigError("layout line " + std::to_string(lineno) + ": only heads have a yaw");
      layout.human_head_yaw = wrap_deg(yaw);
    }
  }
  return layout;
}

Layout load_layout_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open layout file '" + path + "'");
  return load_layout(in);
}

GazeParams sample_gaze(bool correct, Rng& rng) {
  if (correct) return {grid_sample(rng, 100, 200), grid_sample(rng, 500, 600), grid_sample(rng, 15000, 39999)};
  return {grid_sample(rng, 300, 500), grid_sample(rng, 900, 1200), grid_sample(rng, 60000, 119999)};
}

double sample_hand_radius(bool near, Rng& rng) {
  return near ? grid_sample(rng, 60, 120) : grid_sample(rng, 300, 500);
}

World::World(Layout layout) : layout_(std::move(layout)) {
  state_.robot_hand.position = layout_.robot_hand;
  state_.object.position = layout_.object;
  state_.human_hand.position = layout_.human_hand;
  state_.human_head.position = layout_.human_head;
  state_.human_head.yaw_deg = layout_.human_head_yaw;
}

Eigen::Vector3d World::approach_direction() const {
  Eigen::Vector3d d = layout_.human_head - layout_.object;
  d.z() = 0.0;
  if (d.norm() < 1e-9) return Eigen::Vector3d::UnitX();
  return d.normalized();
}

void World::place_head(const GazeParams& gaze) {
  const Eigen::Vector3d& obj = state_.object.position;
  state_.human_head.position = obj + gaze.distance * approach_direction() + gaze.offset * Eigen::Vector3d::UnitZ();
  state_.human_head.yaw_deg = wrap_deg(bearing_deg(state_.human_head.position, obj) + gaze.angle);
}

void World::place_hand(double radius) {
  state_.human_hand.position = state_.object.position + radius * approach_direction();
  track_object();
}

void World::apply_param(std::string_view name, const ParamValue& value, Rng& rng, std::span<const double> sample) {
  if (name == "time") {
    if (!std::holds_alternative<std::int64_t>(value)) throw std::invalid_argument("time expects an integer");
    return;  // pacing is the driver's job
  }
  if (!std::holds_alternative<bool>(value)) throw std::invalid_argument(std::string(name) + " expects true/false");
  const bool b = std::get<bool>(value);
  if (name == "honTask") {
    state_.hon_task = b;
  } else if (name == "hgazeOk") {
    GazeParams g = sample.size() == 3 ? GazeParams{sample[0], sample[1], sample[2]} : sample_gaze(b, rng);
    place_head(g);
  } else if (name == "hlocationOk") {
    place_hand(sample.size() == 1 ? sample[0] : sample_hand_radius(b, rng));
  } else if (name == "hpressureOk") {
    state_.human_holding = b;
    if (!b && holder_ == Holder::human) holder_ = Holder::none;
  } else {
    throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
  }
}

bool World::gaze_predicate() const {
  const Eigen::Vector3d& head = state_.human_head.position;
  const Eigen::Vector3d& obj = state_.object.position;
  const double dist = (obj - head).norm();
  const double dev = angle_between_deg(state_.human_head.yaw_deg, bearing_deg(head, obj));
  return dev < kGazeMaxAngleDeg && dist >= kGazeMinDistance && dist <= kGazeMaxDistance;
}

bool World::location_predicate() const {
  return (state_.human_hand.position - state_.object.position).norm() < kLocationThreshold;
}

bool World::pressure_predicate() const { return state_.human_holding && state_.robot_holding; }

SensorSnapshot World::read_sensors() const {
  if (!state_.hon_task) return SensorSnapshot{};
  return SensorSnapshot{gaze_predicate(), pressure_predicate(), location_predicate(), true};
}

double World::human_robot_hand_distance() const {
  return (state_.human_hand.position - state_.robot_hand.position).norm();
}

void World::track_object() {
  if (holder_ == Holder::robot) state_.object.position = state_.robot_hand.position;
  if (holder_ == Holder::human) state_.object.position = state_.human_hand.position;
}

void World::move_arm(const Eigen::Vector3d& target) {
  state_.robot_hand.position = target;
  track_object();
}

void World::set_gripper(Gripper command) {
  state_.gripper = command;
  if (command == Gripper::closed) {
    if ((state_.object.position - state_.robot_hand.position).norm() < kGraspReach) {
      state_.robot_holding = true;
      holder_ = Holder::robot;
    }
  } else {
    if (state_.robot_holding) {
      state_.robot_holding = false;
      holder_ = state_.human_holding ? Holder::human : Holder::none;
    }
  }
  track_object();
}

std::uint32_t World::command(MotionKind kind, ProcessId requester) {
  if (!kernel_) throw KernelError("world is not attached to a kernel");
  const std::uint32_t id = next_motion_++;
  pending_[id] = {kind, requester};
  kernel_->schedule_after(self_, kMotionTicks, MotionDone{id});
  return id;
}

void World::handle(const Event& event, Kernel& kernel) {
  const auto* done = std::get_if<MotionDone>(&event.payload);
  if (!done) return;
  auto it = pending_.find(done->motion);
  if (it == pending_.end()) return;
  const auto [kind, requester] = it->second;
  pending_.erase(it);
  switch (kind) {
    case MotionKind::arm_home:
      set_gripper(Gripper::open);
      move_arm(layout_.robot_home);
      break;
    case MotionKind::arm_to_object: move_arm(state_.object.position); break;
    case MotionKind::arm_to_handover: move_arm(layout_.handover); break;
    case MotionKind::gripper_close: set_gripper(Gripper::closed); break;
    case MotionKind::gripper_open: set_gripper(Gripper::open); break;
  }
  kernel.schedule_asap(requester, MotionDone{done->motion});
}

}  // namespace cdv
