#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdv/coverage.hpp"
#include "cdv/ta_model.hpp"
#include "cdv/testbench.hpp"

namespace cdv {

/// Seed used when neither --seed nor CDV_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 2;

enum class Strategy : std::uint8_t { pseudorandom, constrained, model_based };
std::string_view strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);

struct CampaignConfig {
  Strategy strategy = Strategy::pseudorandom;
  std::size_t count = 100;
  std::uint64_t seed = kDefaultSeed;
  std::string constraints;  // required for constrained
  std::string model;        // required for model-based
  std::string queries;      // required for model-based
  std::size_t bound = 5000;
  RunConfig run{};
  std::string out;  // empty: nothing written
};

struct QueryResult {
  ta::ReachabilityQuery query;
  ta::CheckResult result;
  std::optional<TestTemplate> tmpl;  // projection of the witness, if any
};

/// Environment components whose labelled edges become test actions.
inline const std::vector<std::string> kProjectionComponents = {"workflow", "gaze", "location", "pressure", "sensors"};

std::vector<QueryResult> model_check(const std::string& model_path, const std::string& queries_path,
                                     std::size_t bound);

/// Generates the suite for a config; model-based suites have one test per
/// reachable query and ignore `count`.
std::vector<Test> generate(const CampaignConfig& config);

using VerdictMatrix = std::array<std::array<std::uint64_t, 4>, kMonitorCount>;

struct CampaignSummary {
  std::vector<MonitorReport> reports;
  CoverageReport coverage;
  VerdictMatrix matrix{};
  bool any_fail = false;
};

/// Runs the tests in order and, when `out` is set, writes the suite, the
/// per-test logs and monitor reports, coverage and the verdict matrix.
CampaignSummary run_tests(const std::vector<Test>& tests, const RunConfig& run, const std::string& out);
CampaignSummary run_campaign(const CampaignConfig& config);

std::string verdicts_csv(const VerdictMatrix& m);
std::string campaign_json(const CampaignSummary& s);

/// Writes tests plus a manifest listing them in execution order.
void write_suite(const std::vector<Test>& tests, const std::string& dir);
std::vector<Test> load_manifest(const std::string& path);

/// Hole listing for one coverage model. With a templates directory, the
/// first template whose run covers a hole yields a suggested prefix stub.
std::string show_holes(const std::string& report_path, std::string_view model, const std::string& templates_dir,
                       const RunConfig& run = {});

/// Merges coverage CSV files in the given order.
CoverageReport merge_reports(const std::vector<std::string>& paths);

}  // namespace cdv
