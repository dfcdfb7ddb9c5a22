#include <doctest.h>

#include "cdv/driver.hpp"
#include "helpers.hpp"

using namespace cdv;
using namespace cdv::testing;

TEST_CASE("signal aliases") {
  CHECK(canonical_signal("activateRobot") == "startRobot");
  CHECK(canonical_signal("humanIsReady") == "humanIsReady");
}

TEST_CASE("example test completes every action in order") {
  const RunResult r = run_test(make_test(kHandoverTest));
  CHECK(r.drive.completion == ActionStatus::done);
  REQUIRE(r.drive.actions.size() == 9);
  const std::uint64_t starts[] = {0, 0, 40, 41, 41, 51, 51, 51, 51};
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(r.drive.actions[i].status == ActionStatus::done);
    CHECK(r.drive.actions[i].start->ticks == starts[i]);
  }
  CHECK(r.drive.actions[2].finish->ticks == 41);
}

TEST_CASE("activateRobot is delivered before the robot informs the human") {
  const RunResult r = run_test(make_test(kHandoverTest));
  const std::string log = r.log.serialize();
  const auto start = log.find("robot.in:startRobot");
  const auto inform = log.find("robot.out:informHumanOfHandoverStart");
  REQUIRE(start != std::string::npos);
  REQUIRE(inform != std::string::npos);
  CHECK(start < inform);
}

TEST_CASE("a wait that is never answered times out and the test continues") {
  const RunResult r = run_test(make_test("receivesignal informHumanOfHandoverStart\nsetparam honTask = true\n"));
  REQUIRE(r.drive.actions.size() == 2);
  CHECK(r.drive.actions[0].status == ActionStatus::timed_out_waiting);
  CHECK(r.drive.actions[0].finish->ticks == 600);
  CHECK(r.drive.actions[1].status == ActionStatus::done);
}

TEST_CASE("actions beyond the horizon are reported as truncated") {
  RunConfig cfg;
  cfg.horizon = 100;
  const RunResult r = run_test(make_test("setparam time = 500\nsendsignal activateRobot\n"), cfg);
  CHECK(r.drive.completion == ActionStatus::truncated_at_horizon);
  CHECK(r.drive.actions[0].status == ActionStatus::truncated_at_horizon);
  CHECK(r.drive.actions[1].status == ActionStatus::truncated_at_horizon);
  CHECK(r.trace.end.ticks == 101);
}

TEST_CASE("validation rejects actions the driver cannot execute") {
  Test t;
  t.actions.push_back({Verb::setparam, "hgazeOk", ParamValue{std::int64_t{3}}, {}});
  try {
    validate_test(t);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 1);
  }
  t.actions = {{Verb::sendsignal, "activateRobot", std::nullopt, {}}, {Verb::setparam, "time", std::nullopt, {}}};
  try {
    validate_test(t);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("explicit samples make runs independent of the test seed") {
  const std::string text = "setparam hgazeOk = true (0.150,0.550,20.000)\nsetparam hlocationOk = true (0.080)\n";
  const RunResult a = run_test(make_test(text, 1));
  const RunResult b = run_test(make_test(text, 99));
  CHECK(a.log.serialize() == b.log.serialize());
}

TEST_CASE("unsampled parameters draw from the test seed") {
  const std::string text = kHandoverTest;
  CHECK(run_test(make_test(text, 5)).log.serialize() == run_test(make_test(text, 5)).log.serialize());
}
