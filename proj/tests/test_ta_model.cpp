#include <doctest.h>

#include "cdv/ta_model.hpp"

using namespace cdv;
using namespace cdv::ta;

namespace {

const std::string kModel = std::string(CDV_SOURCE_DIR) + "/models/handover.ta";
const std::string kQueries = std::string(CDV_SOURCE_DIR) + "/models/requirements.q";
const std::vector<std::string> kKeep = {"workflow", "gaze", "location", "pressure", "sensors"};

int error_line(const std::string& text) {
  try {
    parse_network(text);
  } catch (const ModelError& e) {
    return e.line();
  }
  return -1;
}

const Witness& witness_of(const CheckResult& r) {
  REQUIRE(std::holds_alternative<Witness>(r));
  return std::get<Witness>(r);
}

ReachabilityQuery query(const Network& net, const std::string& text) { return parse_queries(net, text).at(0); }

}  // namespace

TEST_CASE("parse errors carry the offending line") {
  CHECK(error_line("var a = 0\nfoo bar\n") == 2);
  CHECK(error_line("automaton A\nloc l\nedge l -> m\n") == 3);
  CHECK(error_line("automaton A\nloc l\nedge l -> l guard b == 1\n") == 3);
  CHECK(error_line("var a = 0\nautomaton A\nclock x\nloc l inv x <= a\n") == 4);
  CHECK(error_line("var a = 0\nautomaton A\nloc l\nedge l -> l do a = 1\nautomaton B\nloc m\nedge m -> m do a = 2\n") == 7);
  CHECK(error_line("automaton A\nclock x\nloc l\nautomaton B\nloc m\nedge m -> m guard x > 1\n") == 6);
  CHECK(error_line("automaton A\nloc l\nedge l -> l sync c\n") == 3);
  CHECK(error_line("automaton A\nloc l\nedge l -> l act jump now\n") == 3);
  CHECK(error_line("var a = x\n") == 1);
  CHECK(error_line("var a = 0\nvar a = 1\n") == 2);
  CHECK(error_line("automaton A\nloc l\nedge l -> l guard (1 == 1\n") == 3);
}

TEST_CASE("shipped model has the six handover components") {
  const Network net = load_network_file(kModel);
  CHECK_NOTHROW(require_handover_components(net));
  CHECK(net.clock_cap == std::vector<int>{601, 11});
  CHECK_THROWS_AS(require_handover_components(parse_network("automaton robot\nloc a\n")), ModelError);
}

TEST_CASE("queries") {
  const Network net = load_network_file(kModel);
  const auto qs = load_queries_file(net, kQueries);
  REQUIRE(qs.size() == 4);
  CHECK(qs[0].label == "R1");
  CHECK(qs[3].label == "R4");
  CHECK_THROWS_AS(parse_queries(net, "AG true\n"), ModelError);
  CHECK_THROWS_AS(parse_queries(net, "EF robot.x > 3\n"), ModelError);
  CHECK_THROWS_AS(parse_queries(net, "EF x > 3\n"), ModelError);
  CHECK_THROWS_AS(parse_queries(net, "EF nosuch == 1\n"), ModelError);
}

TEST_CASE("EF false is unreachable after exhausting the state space") {
  const Network net = load_network_file(kModel);
  const CheckResult r = check_ef(net, query(net, "EF false"), 100000);
  REQUIRE(std::holds_alternative<Unreachable>(r));
  CHECK(std::get<Unreachable>(r).exhausted);
  CHECK(std::get<Unreachable>(r).visited > 1000);
}

TEST_CASE("a bound of one step is not enough for R1") {
  const Network net = load_network_file(kModel);
  const CheckResult r = check_ef(net, load_queries_file(net, kQueries)[0], 1);
  REQUIRE(std::holds_alternative<Unreachable>(r));
  CHECK_FALSE(std::get<Unreachable>(r).exhausted);
}

TEST_CASE("state limit raises a resource error") {
  const Network net = load_network_file(kModel);
  CHECK_THROWS_AS(check_ef(net, query(net, "EF false"), 100000, 500), ResourceError);
}

TEST_CASE("every witness replays through successors and is shortest") {
  const Network net = load_network_file(kModel);
  for (const auto& q : load_queries_file(net, kQueries)) {
    CAPTURE(q.label);
    const Witness w = witness_of(check_ef(net, q, 5000));
    REQUIRE(w.states.size() == w.transitions.size() + 1);
    CHECK(w.states.front() == initial_state(net));
    for (std::size_t i = 0; i < w.transitions.size(); ++i) {
      const auto next = successors(net, w.states[i]);
      const bool found = std::any_of(next.begin(), next.end(), [&](const Successor& s) {
        return s.transition == w.transitions[i] && s.state == w.states[i + 1];
      });
      CHECK(found);
    }
    CHECK(q.predicate->eval(w.states.back()) != 0);
    const CheckResult shorter = check_ef(net, q, w.transitions.size() - 1);
    CHECK(std::holds_alternative<Unreachable>(shorter));
  }
}

TEST_CASE("R1 witness projects onto the example handover test") {
  const Network net = load_network_file(kModel);
  const Witness w = witness_of(check_ef(net, load_queries_file(net, kQueries)[0], 5000));
  CHECK(serialize_template(project(net, w, kKeep)) ==
        "sendsignal activateRobot\n"
        "setparam time = 40\n"
        "receivesignal informHumanOfHandoverStart\n"
        "sendsignal humanIsReady\n"
        "setparam time = 10\n"
        "setparam honTask = true\n"
        "setparam hgazeOk = TRUE\n"
        "setparam hpressureOk = TRUE\n"
        "setparam hlocationOk = TRUE\n");
}

TEST_CASE("R4 witness is an idle wait until the first timeout") {
  const Network net = load_network_file(kModel);
  const Witness w = witness_of(check_ef(net, load_queries_file(net, kQueries)[3], 5000));
  CHECK(serialize_template(project(net, w, kKeep)) == "setparam time = 610\n");
  const std::string unknown[] = {"human"};
  CHECK_THROWS_AS(project(net, w, unknown), ModelError);
}

TEST_CASE("invariants stop time and urgent locations force progress") {
  const Network net = parse_network(
      "automaton A\nclock x\nloc a inv x <= 2\nloc b inv x <= 0\nloc c\n"
      "edge a -> b guard x >= 2 do x = 0\nedge b -> c\n");
  State s = initial_state(net);
  auto next = successors(net, s);
  REQUIRE(next.size() == 1);
  CHECK(next[0].transition.kind == Transition::Kind::delay);
  s = successors(net, next[0].state)[0].state;
  next = successors(net, s);
  REQUIRE(next.size() == 1);
  CHECK(next[0].transition.kind == Transition::Kind::edge);
  next = successors(net, next[0].state);
  REQUIRE(next.size() == 1);
  CHECK(next[0].transition.kind == Transition::Kind::edge);
  // c has no invariant and x is not read there, so delays leave the state unchanged.
  const State c = next[0].state;
  next = successors(net, c);
  REQUIRE(next.size() == 1);
  CHECK(next[0].state == c);
}

TEST_CASE("successor order and synchronisation semantics") {
  const Network net = parse_network(
      "var v = 0\nvar w = 0\nvar u = 0\n"
      "automaton S\nloc a\nloc b\nedge a -> b sync go! do v = 5\nedge a -> a do u = 1\n"
      "automaton R\nloc p\nloc q\nedge p -> q sync go? do w = v + 1\n");
  const auto next = successors(net, initial_state(net));
  REQUIRE(next.size() == 3);
  CHECK(next[0].transition.kind == Transition::Kind::edge);
  CHECK(next[0].state.vars == std::vector<int>{0, 0, 1});
  CHECK(next[1].transition.kind == Transition::Kind::sync);
  CHECK(next[1].state.vars == std::vector<int>{5, 6, 0});
  CHECK(next[1].state.locations == std::vector<int>{1, 1});
  CHECK(next[2].transition.kind == Transition::Kind::delay);
  CHECK(describe_transition(net, next[1].transition) == "S: a -> b [go] R: p -> q");
}

TEST_CASE("clocks inactive in a location are normalised") {
  const Network net = parse_network(
      "automaton A\nclock x\nloc a\nloc b\nloc c\n"
      "edge a -> b do x = 0\nedge b -> c guard x >= 3\n");
  const ReachabilityQuery never = parse_queries(net, "EF false\n").at(0);
  const CheckResult r = check_ef(net, never, 100);
  REQUIRE(std::holds_alternative<Unreachable>(r));
  // a: x inactive (1 state); b: x in 0..4 capped (5 states); c: x inactive (1 state).
  CHECK(std::get<Unreachable>(r).visited == 7);
}
