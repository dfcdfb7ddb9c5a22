#include <doctest.h>

#include "cdv/checker.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace cdv;
using namespace cdv::testing;

TEST_CASE("monitors agree with the brute-force oracle on random traces") {
  std::mt19937_64 rng(2024);
  const MonitorConfig configs[] = {MonitorConfig{}, MonitorConfig{5, 3, 20, 0.05}};
  std::size_t checked = 0;
  std::array<std::array<int, 4>, kMonitorCount> seen{};
  for (int i = 0; i < 3000; ++i) {
    const Trace tr = random_trace(rng);
    const MonitorConfig& cfg = configs[i % 2];
    const MonitorReport rep = check_trace(tr, "r", cfg);
    for (MonitorId id : kAllMonitors) {
      CAPTURE(i);
      CAPTURE(monitor_name(id));
      CHECK(rep[id].verdict == oracle(id, tr, cfg));
      ++seen[static_cast<std::size_t>(id)][static_cast<std::size_t>(rep[id].verdict)];
      ++checked;
    }
  }
  CHECK(checked == 15000);
  // R5 resolves on the spot, so it never ends inconclusive.
  for (std::size_t m = 0; m < kMonitorCount; ++m) {
    for (std::size_t v = 0; v < 4; ++v) {
      if (m == 4 && v == 3) continue;
      CAPTURE(m);
      CAPTURE(v);
      CHECK(seen[m][v] > 20);
    }
  }
}

TEST_CASE("example handover test satisfies every requirement") {
  const RunResult r = run_test(make_test(kHandoverTest));
  CHECK(r.monitors[MonitorId::R1].verdict == Verdict::P);
  CHECK(r.monitors[MonitorId::R2].verdict == Verdict::NT);
  CHECK(r.monitors[MonitorId::R3].verdict == Verdict::P);
  CHECK(r.monitors[MonitorId::R4].verdict == Verdict::P);
  CHECK(r.monitors[MonitorId::R5].verdict == Verdict::P);
}

TEST_CASE("R1 window is half-open") {
  auto run = [](std::uint64_t release_at) {
    Trace tr;
    tr.events.push_back({SimTime{10}, obs::SensorsRead{{true, true, true, true}}});
    tr.events.push_back({SimTime{release_at}, obs::Release{}});
    tr.end = SimTime{1000};
    return check_trace(tr, "w")[MonitorId::R1].verdict;
  };
  CHECK(run(10) == Verdict::P);
  CHECK(run(69) == Verdict::P);
  CHECK(run(70) == Verdict::F);
}

TEST_CASE("open windows at the end of a trace are inconclusive") {
  Trace tr;
  tr.events.push_back({SimTime{100}, obs::SensorsRead{{true, false, true, true}}});
  tr.end = SimTime{120};
  CHECK(check_trace(tr, "i")[MonitorId::R2].verdict == Verdict::I);
  tr.end = SimTime{140};
  CHECK(check_trace(tr, "i")[MonitorId::R2].verdict == Verdict::P);
}

TEST_CASE("unavailable snapshots arm nothing") {
  Trace tr;
  tr.events.push_back({SimTime{0}, obs::SensorsRead{{true, true, true, false}}});
  tr.end = SimTime{500};
  const MonitorReport rep = check_trace(tr, "u");
  CHECK(rep[MonitorId::R1].verdict == Verdict::NT);
  CHECK(rep[MonitorId::R2].verdict == Verdict::NT);
}

TEST_CASE("R4 fails when the controller finishes without an outcome") {
  Trace tr;
  tr.events.push_back({SimTime{0}, obs::StateEntered{RobotState::reset}});
  tr.events.push_back({SimTime{5}, obs::StateEntered{RobotState::done}});
  tr.end = SimTime{10};
  CHECK(check_trace(tr, "d")[MonitorId::R4].verdict == Verdict::F);
}

TEST_CASE("R5 flags a grasp with the human hand too close") {
  Trace tr;
  tr.events.push_back({SimTime{20}, obs::GripperClose{0.049}});
  tr.end = SimTime{30};
  CHECK(check_trace(tr, "g")[MonitorId::R5].verdict == Verdict::F);
}

TEST_CASE("incremental observation matches whole-trace checking") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Trace tr = random_trace(rng);
    for (MonitorId id : kAllMonitors) {
      MonitorState s = initial_state(id);
      for (const auto& e : tr.events) s = observe(s, e);
      CHECK(finalize(s, tr.end) == check_trace(tr, "x")[id].verdict);
    }
  }
}

TEST_CASE("reports serialise one line per monitor") {
  const RunResult r = run_test(make_test(kHandoverTest, 1, "handover"));
  const std::string j = to_jsonl(r.monitors);
  CHECK(std::count(j.begin(), j.end(), '\n') == 5);
  CHECK(j.find(R"({"test_id":"handover","monitor":"R1","activations":[51],"resolutions":[{"armed":51,"result":"P","at":51}],"verdict":"P"})") !=
        std::string::npos);
}
