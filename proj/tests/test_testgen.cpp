#include <doctest.h>

#include <map>

#include "cdv/testgen.hpp"
#include "cdv/world.hpp"

using namespace cdv;

namespace {

const char* kPrefix =
    "prefix: sendsignal activateRobot; setparam time = 40; receivesignal informHumanOfHandoverStart; "
    "sendsignal humanIsReady\n";

}  // namespace

TEST_CASE("alphabet has the eight workflow actions") {
  CHECK(action_alphabet().size() == 8);
  CHECK(find_slot(Verb::setparam, "hgazeOk"));
  CHECK_FALSE(find_slot(Verb::sendsignal, "hgazeOk"));
  CHECK(test_id(7) == "t0007");
}

TEST_CASE("pseudorandom suites are reproducible and prefix-stable") {
  const auto a = gen_pseudorandom(9, 50);
  const auto b = gen_pseudorandom(9, 50);
  const auto c = gen_pseudorandom(9, 20);
  const auto d = gen_pseudorandom(10, 50);
  REQUIRE(a.size() == 50);
  int differ = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(serialize_test(a[i]) == serialize_test(b[i]));
    if (i < c.size()) CHECK(serialize_test(a[i]) == serialize_test(c[i]));
    differ += serialize_test(a[i]) != serialize_test(d[i]);
  }
  CHECK(differ > 40);
}

TEST_CASE("lengths stay inside the range and values inside their domains") {
  for (const Test& t : gen_pseudorandom(3, 200, {2, 6})) {
    CHECK(t.actions.size() >= 2);
    CHECK(t.actions.size() <= 6);
    for (const Action& a : t.actions) {
      CHECK(find_slot(a.verb, a.name));
      if (a.name == "time") {
        const auto n = std::get<std::int64_t>(*a.value);
        CHECK((n >= kTimeMin && n <= kTimeMax));
      }
    }
    CHECK(parse_test(serialize_test(t)).actions == t.actions);
  }
}

TEST_CASE("constrained suites start with the mandatory prefix") {
  const auto constraints = parse_constraints(kPrefix);
  for (const Test& t : gen_constrained(4, 100, constraints)) {
    REQUIRE(t.actions.size() >= 4);
    CHECK(t.actions[0].name == "activateRobot");
    CHECK(t.actions[1].value == ParamValue{std::int64_t{40}});
    CHECK(t.actions[2].verb == Verb::receivesignal);
    CHECK(t.actions[3].name == "humanIsReady");
  }
}

TEST_CASE("weights bias the draw") {
  const auto constraints = parse_constraints("weight: setparam honTask 50\nlength: 20 20\n");
  std::size_t hon = 0, total = 0;
  for (const Test& t : gen_constrained(5, 50, constraints)) {
    for (const Action& a : t.actions) {
      hon += a.name == "honTask";
      ++total;
    }
  }
  CHECK(static_cast<double>(hon) / static_cast<double>(total) > 0.8);
}

TEST_CASE("inconsistent or malformed constraints are rejected") {
  CHECK_THROWS_AS(gen_constrained(1, 5, parse_constraints(std::string(kPrefix) + "length: 1 3\n")), ConfigError);
  CHECK_THROWS_AS(gen_pseudorandom(1, 0), ConfigError);
  auto message = [](const std::string& text) {
    try {
      parse_constraints(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("length: 3 4\nweight: setparam mood 2\n").find("line 2") != std::string::npos);
  CHECK(message("weight: setparam honTask -1\n").find("positive") != std::string::npos);
  CHECK(message("prefix: jump\n").find("line 1") != std::string::npos);
  CHECK(message("avoid: x\n").find("unknown constraint") != std::string::npos);
  CHECK(message("length: 0 4\n") != "");
}

TEST_CASE("instantiation draws samples that realise TRUE and FALSE") {
  const TestTemplate tmpl =
      parse_template("setparam hgazeOk = TRUE\nsetparam hlocationOk = FALSE\nsetparam time = ANY\nsetparam honTask = ANY\n");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Test t = instantiate(tmpl, seed);
    REQUIRE(t.actions.size() == 4);
    World w;
    Rng rng(0);
    w.apply_param("hgazeOk", *t.actions[0].value, rng, t.actions[0].sample);
    w.apply_param("hlocationOk", *t.actions[1].value, rng, t.actions[1].sample);
    CHECK(w.gaze_predicate());
    CHECK_FALSE(w.location_predicate());
    const auto n = std::get<std::int64_t>(*t.actions[2].value);
    CHECK((n >= kTimeMin && n <= kTimeMax));
    CHECK(std::holds_alternative<bool>(*t.actions[3].value));
  }
  CHECK(serialize_test(instantiate(tmpl, 3)) == serialize_test(instantiate(tmpl, 3)));
}

TEST_CASE("instantiation rejects values a template cannot bind") {
  TestTemplate bad;
  bad.actions.push_back({Verb::setparam, "hgazeOk", "MAYBE"});
  CHECK_THROWS_AS(instantiate(bad, 1), TemplateError);
  bad.actions = {{Verb::sendsignal, "activateRobot", "TRUE"}};
  CHECK_THROWS_AS(instantiate(bad, 1), TemplateError);
}
