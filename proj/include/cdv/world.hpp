#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <istream>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "cdv/kernel.hpp"
#include "cdv/observation.hpp"

namespace cdv {

using Rng = std::mt19937_64;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double yaw_deg = 0.0;  // heads only, [0, 360)
};

/// Head placement relative to the object: vertical offset (m), horizontal
/// distance (m) and gaze deviation (deg).
struct GazeParams {
  double offset = 0.0;
  double distance = 0.0;
  double angle = 0.0;
};

enum class Gripper : std::uint8_t { open, closed };

struct WorldState {
  Pose robot_hand;
  Gripper gripper = Gripper::open;
  Pose object;
  Pose human_hand;
  Pose human_head;
  bool robot_holding = false;
  bool human_holding = false;
  bool hon_task = false;
};

/// Fixed positions the kinematic model moves between.
struct Layout {
  Eigen::Vector3d robot_home{0.0, 0.0, 1.0};
  Eigen::Vector3d robot_hand{0.0, 0.0, 1.0};
  Eigen::Vector3d object{0.45, 0.0, 0.75};
  Eigen::Vector3d handover{0.75, 0.0, 1.05};
  Eigen::Vector3d human_hand{1.4, 0.25, 0.9};
  Eigen::Vector3d human_head{1.6, 0.0, 1.6};
  double human_head_yaw = 0.0;
};

/// Reads `entity = x y z [yaw]` lines; entities not mentioned keep defaults.
Layout load_layout(std::istream& in);
Layout load_layout_file(const std::string& path);

// Sensor predicate thresholds.
inline constexpr double kGazeMaxAngleDeg = 45.0;
inline constexpr double kGazeMinDistance = 0.4;
inline constexpr double kGazeMaxDistance = 0.7;
inline constexpr double kLocationThreshold = 0.15;
inline constexpr double kGraspReach = 0.05;
inline constexpr std::uint64_t kMotionTicks = 10;

/// Samples are drawn on a 1e-3 grid so they print and parse back exactly.
GazeParams sample_gaze(bool correct, Rng& rng);
/// Distance from the object at which the human hand is placed.
double sample_hand_radius(bool near, Rng& rng);

using ParamValue = std::variant<std::int64_t, bool>;

enum class MotionKind : std::uint8_t { arm_home, arm_to_object, arm_to_handover, gripper_close, gripper_open };

/// Kinematic-lite stand-in for the physics simulator. Perfect sensors.
class World : public Process {
 public:
  explicit World(Layout layout = {});

  const WorldState& state() const { return state_; }
  const Layout& layout() const { return layout_; }

  /// Adjusts geometry so the requested human-side predicate holds. An explicit
  /// `sample` (gaze triple or hand radius) overrides drawing from `rng`.
  /// Throws std::invalid_argument on an unknown name or a mistyped value.
  void apply_param(std::string_view name, const ParamValue& value, Rng& rng, std::span<const double> sample = {});

  SensorSnapshot read_sensors() const;
  double human_robot_hand_distance() const;

  // Ground-truth predicates, independent of topic availability.
  bool gaze_predicate() const;
  bool location_predicate() const;
  bool pressure_predicate() const;

  void place_head(const GazeParams& gaze);
  void place_hand(double radius);

  // Immediate effects of a completed motion.
  void move_arm(const Eigen::Vector3d& target);
  void set_gripper(Gripper command);

  // Kernel-facing: completes after kMotionTicks and answers `requester`
  // with MotionDone carrying the returned id.
  void attach(Kernel& kernel, ProcessId self) {
    kernel_ = &kernel;
    self_ = self;
  }
  std::uint32_t command(MotionKind kind, ProcessId requester);
  void handle(const Event& event, Kernel& kernel) override;

 private:
  enum class Holder : std::uint8_t { none, robot, human };

  void track_object();
  Eigen::Vector3d approach_direction() const;

  Layout layout_;
  WorldState state_;
  Holder holder_ = Holder::none;
  Kernel* kernel_ = nullptr;
  ProcessId self_ = 0;
  std::uint32_t next_motion_ = 0;
  std::map<std::uint32_t, std::pair<MotionKind, ProcessId>> pending_;
};

/// Angle of the horizontal bearing from `from` to `to`, in [0, 360).
double bearing_deg(const Eigen::Vector3d& from, const Eigen::Vector3d& to);
/// Absolute angular difference folded into [0, 180].
double angle_between_deg(double a, double b);

}  // namespace cdv
