#include <doctest.h>

#include <functional>
#include <random>

#include "cdv/kernel.hpp"

using namespace cdv;

namespace {

// Records every dispatch as "<tick>:<name>:<token>" and runs an optional hook.
struct Probe : Process {
  std::string name;
  std::vector<std::string>* out;
  std::function<void(const Event&, Kernel&)> hook;

  Probe(std::string n, std::vector<std::string>& o) : name(std::move(n)), out(&o) {}

  void handle(const Event& e, Kernel& k) override {
    std::string token = std::holds_alternative<Tick>(e.payload) ? std::to_string(std::get<Tick>(e.payload).token)
                                                               : payload_kind(e.payload);
    out->push_back(std::to_string(e.time.ticks) + ":" + name + ":" + token);
    if (hook) hook(e, k);
  }
};

}  // namespace

TEST_CASE("tick quantum is 50 ms") {
  CHECK(SimTime{40}.seconds() == doctest::Approx(2.0));
  CHECK(SimTime::from_seconds(3).ticks == 60);
}

TEST_CASE("same-tick events dispatch by priority then process then insertion") {
  std::vector<std::string> seen;
  Kernel k;
  Probe mon("mon", seen), sut("sut", seen), drv("drv", seen), world("world", seen);
  const auto m = k.add_process("mon", Priority::monitors, mon);
  const auto s = k.add_process("sut", Priority::sut, sut);
  const auto d = k.add_process("drv", Priority::driver, drv);
  const auto w = k.add_process("world", Priority::world, world);
  k.schedule({SimTime{5}, m, 0, Tick{1}});
  k.schedule({SimTime{5}, s, 0, Tick{2}});
  k.schedule({SimTime{5}, s, 0, Tick{3}});
  k.schedule({SimTime{5}, d, 0, Tick{4}});
  k.schedule({SimTime{5}, w, 0, Tick{5}});
  k.schedule({SimTime{1}, m, 0, Tick{6}});
  k.run_until(SimTime{10});
  CHECK(seen == std::vector<std::string>{"1:mon:6", "5:world:5", "5:drv:4", "5:sut:2", "5:sut:3", "5:mon:1"});
}

TEST_CASE("scheduling into the past is rejected") {
  std::vector<std::string> seen;
  Kernel k;
  Probe a("a", seen);
  const auto id = k.add_process("a", Priority::sut, a);
  bool threw = false;
  a.hook = [&](const Event& e, Kernel& kk) {
    if (e.time.ticks != 10) return;
    try {
      kk.schedule({SimTime{9}, id, 0, Tick{99}});
    } catch (const KernelError&) {
      threw = true;
    }
  };
  k.schedule({SimTime{10}, id, 0, Tick{0}});
  k.run_until(SimTime{20});
  CHECK(threw);
}

TEST_CASE("schedule_asap lands this tick only for later dispatch slots") {
  std::vector<std::string> seen;
  Kernel k;
  Probe drv("drv", seen), sut("sut", seen);
  const auto d = k.add_process("drv", Priority::driver, drv);
  const auto s = k.add_process("sut", Priority::sut, sut);
  sut.hook = [&](const Event& e, Kernel& kk) {
    if (e.time.ticks == 3 && std::get<Tick>(e.payload).token == 0) kk.schedule_asap(d, Tick{7});
  };
  drv.hook = [&](const Event& e, Kernel& kk) {
    if (e.time.ticks == 3) kk.schedule_asap(s, Tick{8});
  };
  k.schedule({SimTime{3}, d, 0, Tick{0}});
  k.schedule({SimTime{3}, s, 0, Tick{0}});
  k.run_until(SimTime{10});
  CHECK(seen == std::vector<std::string>{"3:drv:0", "3:sut:0", "3:sut:8", "4:drv:7"});
}

TEST_CASE("time = 40 is dispatched at 2.0 s") {
  std::vector<std::string> seen;
  Kernel k;
  Probe p("p", seen);
  const auto id = k.add_process("p", Priority::driver, p);
  k.schedule_after(id, 40, Tick{1});
  k.run_until(SimTime{100});
  REQUIRE(seen.size() == 1);
  CHECK(seen[0] == "40:p:1");
  CHECK(k.now().seconds() == doctest::Approx(2.0));
}

TEST_CASE("events past the horizon stay queued") {
  std::vector<std::string> seen;
  Kernel k;
  Probe p("p", seen);
  const auto id = k.add_process("p", Priority::driver, p);
  k.schedule_after(id, 50, Tick{1});
  k.run_until(SimTime{49});
  CHECK(seen.empty());
  k.run_until(SimTime{50});
  CHECK(seen.size() == 1);
}

TEST_CASE("channels are FIFO and listeners are notified") {
  std::vector<std::string> seen;
  Kernel k;
  Probe p("p", seen);
  const auto id = k.add_process("p", Priority::sut, p);
  k.listen("robot.in", id);
  k.send("robot.in", "a", "test");
  k.send("robot.in", "b", "test");
  CHECK(k.channel("robot.in").size() == 2);
  CHECK(k.channel("robot.in").pop() == "a");
  CHECK(k.channel("robot.in").drain() == std::vector<std::string>{"b"});
  k.run_until(SimTime{5});
  CHECK(seen.size() == 2);
}

TEST_CASE("dispatch order is a total order over shuffled insertions") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> seen;
    Kernel k;
    Probe a("a", seen), b("b", seen);
    const auto ia = k.add_process("a", Priority::sut, a);
    const auto ib = k.add_process("b", Priority::driver, b);
    std::vector<Event> events;
    for (std::uint64_t i = 0; i < 20; ++i) events.push_back({SimTime{rng() % 5}, (rng() & 1) ? ia : ib, 0, Tick{i}});
    for (const auto& e : events) k.schedule(e);
    k.run_until(SimTime{10});
    REQUIRE(seen.size() == 20);
    for (std::size_t i = 1; i < seen.size(); ++i) {
      const auto t0 = std::stoul(seen[i - 1]), t1 = std::stoul(seen[i]);
      CHECK(t0 <= t1);
      if (t0 == t1 && seen[i - 1].find(":a:") != std::string::npos) CHECK(seen[i].find(":a:") != std::string::npos);
    }
  }
}
