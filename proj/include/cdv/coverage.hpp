#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cdv/checker.hpp"
#include "cdv/observation.hpp"
#include "cdv/sut.hpp"

namespace cdv {

class VersionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CoverageModel : std::uint8_t { block, state, transition, path, assertion, situation };
inline constexpr std::array<CoverageModel, 6> kAllCoverageModels = {
    CoverageModel::block, CoverageModel::state,     CoverageModel::transition,
    CoverageModel::path,  CoverageModel::assertion, CoverageModel::situation};
std::string_view model_name(CoverageModel m);
/// Throws ConfigError naming the valid models.
CoverageModel parse_model(std::string_view name);

/// External-event cross product: the driver's last gaze/pressure/location
/// intents plus whether activation and readiness were signalled.
struct SituationKey {
  bool gaze_ok = false;
  bool pressure_ok = false;
  bool location_ok = false;
  bool activated = false;
  bool ready_sent = false;

  std::size_t index() const;
  static SituationKey from_index(std::size_t i);
  friend bool operator==(const SituationKey&, const SituationKey&) = default;
};
inline constexpr std::size_t kSituationCount = 32;

/// Acyclic controller paths from reset to done, self-loops collapsed.
std::span<const std::vector<RobotState>> path_table();

struct CoverageReport {
  std::string table = std::string(kInstrumentationVersion);
  std::vector<std::uint64_t> blocks = std::vector<std::uint64_t>(block_table().size());
  std::vector<std::uint64_t> states = std::vector<std::uint64_t>(kRobotStateCount);
  std::vector<std::uint64_t> transitions = std::vector<std::uint64_t>(transition_table().size());
  std::vector<std::uint64_t> paths = std::vector<std::uint64_t>(path_table().size());
  std::vector<std::uint64_t> assertions = std::vector<std::uint64_t>(kMonitorCount);
  std::vector<std::uint64_t> situations = std::vector<std::uint64_t>(kSituationCount);
  std::uint64_t tests = 0;

  const std::vector<std::uint64_t>& cells(CoverageModel m) const;
  std::vector<std::uint64_t>& cells(CoverageModel m);
  friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

std::string cell_name(CoverageModel m, std::size_t i);

/// Single-test report. Assertion counts are the monitors' activation counts.
CoverageReport collect(const Trace& trace, std::span<const std::uint64_t> block_hits,
                       std::span<const StateTransition> transitions, const MonitorReport& monitors);

/// Pointwise sum; throws VersionError when the tables differ.
CoverageReport merge(const CoverageReport& a, const CoverageReport& b);

double percent(const CoverageReport& r, CoverageModel m);
std::vector<std::string> holes(const CoverageReport& r, CoverageModel m);

/// `model,cell,hits` rows preceded by `meta` rows for the table and test count.
std::string to_csv(const CoverageReport& r);
CoverageReport from_csv(std::string_view text);
std::string summary_json(const CoverageReport& r);

}  // namespace cdv
