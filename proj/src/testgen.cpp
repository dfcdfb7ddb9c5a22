#include "cdv/testgen.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "cdv/sut.hpp"

namespace cdv {

namespace {

constexpr std::array<ActionSlot, 8> kAlphabet = {{
    {Verb::sendsignal, "activateRobot"},
    {Verb::sendsignal, "humanIsReady"},
    {Verb::receivesignal, "informHumanOfHandoverStart"},
    {Verb::setparam, "time"},
    {Verb::setparam, "honTask"},
    {Verb::setparam, "hgazeOk"},
    {Verb::setparam, "hpressureOk"},
    {Verb::setparam, "hlocationOk"},
}};

Rng test_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x68616e64u};
  return Rng(seq);
}

std::vector<double> draw_sample(std::string_view name, bool value, Rng& rng) {
  if (name == "hgazeOk") {
    GazeParams g = sample_gaze(value, rng);
    return {g.offset, g.distance, g.angle};
  }
  if (name == "hlocationOk") return {sample_hand_radius(value, rng)};
  return {};
}

Action draw_action(const ActionSlot& slot, Rng& rng) {
  Action a{slot.verb, std::string(slot.name), std::nullopt, {}};
  if (slot.verb != Verb::setparam) return a;
  if (slot.name == "time") {
    a.value = std::uniform_int_distribution<std::int64_t>(kTimeMin, kTimeMax)(rng);
  } else {
    const bool b = std::bernoulli_distribution(0.5)(rng);
    a.value = b;
    a.sample = draw_sample(slot.name, b, rng);
  }
  return a;
}

struct Plan {
  std::vector<Action> prefix;
  std::vector<double> weights;
  LengthRange length;
};

Test generate_one(const Plan& plan, std::uint64_t seed, std::size_t index) {
  Rng rng = test_rng(seed, index);
  Test t;
  t.id = test_id(index);
  t.seed = rng();
  const std::size_t len = std::uniform_int_distribution<std::size_t>(plan.length.min, plan.length.max)(rng);
  t.actions = plan.prefix;
  std::discrete_distribution<std::size_t> pick(plan.weights.begin(), plan.weights.end());
  while (t.actions.size() < len) t.actions.push_back(draw_action(kAlphabet[pick(rng)], rng));
  return t;
}

std::vector<Test> generate(const Plan& plan, std::uint64_t seed, std::size_t n) {
  if (n == 0) throw ConfigError("test count must be at least 1");
  std::vector<Test> suite;
  suite.reserve(n);
  for (std::size_t i = 0; i < n; ++i) suite.push_back(generate_one(plan, seed, i));
  return suite;
}

void check_in_alphabet(const Action& a) {
  if (!find_slot(a.verb, a.name)) throw ConfigError("action '" + serialize_action(a) + "' is not in the alphabet");
  if (a.name == "time") {
    auto n = std::get<std::int64_t>(*a.value);
    if (n < kTimeMin || n > kTimeMax) throw ConfigError("time value outside [1, 200]");
  }
}

}  // namespace

std::span<const ActionSlot> action_alphabet() { return kAlphabet; }

std::string slot_key(const ActionSlot& slot) { return std::string(verb_name(slot.verb)) + " " + std::string(slot.name); }

std::optional<std::size_t> find_slot(Verb verb, std::string_view name) {
  for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
    if (kAlphabet[i].verb == verb && kAlphabet[i].name == name) return i;
  }
  return std::nullopt;
}

std::string test_id(std::size_t index) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "t%04zu", index);
  return buf;
}

std::vector<Constraint> parse_constraints(std::string_view text) {
  std::vector<Constraint> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { return ConfigError("constraints line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto colon = line.find(':');
    std::istringstream head(line.substr(0, colon));
    std::string kind;
    head >> kind;
    if (kind.empty()) continue;
    if (colon == std::string::npos) throw fail("expected '<kind>: ...'");
    const std::string body = line.substr(colon + 1);
    if (kind == "prefix") {
      MandatoryPrefix p;
      std::string joined = body;
      std::replace(joined.begin(), joined.end(), ';', '\n');
      try {
        p.actions = parse_test(joined).actions;
      } catch (const FormatError& e) {
        throw fail(e.what());
      }
      for (const auto& a : p.actions) check_in_alphabet(a);
      out.emplace_back(std::move(p));
    } else if (kind == "weight") {
      std::istringstream b(body);
      std::vector<std::string> words;
      for (std::string w; b >> w;) words.push_back(w);
      if (words.size() != 3) throw fail("expected 'weight: <verb> <name> <w>'");
      auto verb = words[0] == "sendsignal" ? std::optional(Verb::sendsignal)
                  : words[0] == "setparam" ? std::optional(Verb::setparam)
                  : words[0] == "receivesignal" ? std::optional(Verb::receivesignal)
                                                : std::nullopt;
      if (!verb || !find_slot(*verb, words[1])) throw fail("'" + words[0] + " " + words[1] + "' is not in the alphabet");
      double w = 0;
      try {
        w = std::stod(words[2]);
      } catch (...) {
        throw fail("weight must be a number");
      }
      if (!(w > 0)) throw fail("weight must be positive");
      out.emplace_back(Weight{words[0] + " " + words[1], w});
    } else if (kind == "length") {
      std::istringstream b(body);
      long long lo = -1, hi = -1;
      if (!(b >> lo >> hi) || lo < 1 || hi < lo) throw fail("expected 'length: <min> <max>' with 1 <= min <= max");
      out.emplace_back(LengthRange{static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)});
    } else {
      throw fail("unknown constraint kind '" + kind + "'");
    }
  }
  return out;
}

std::vector<Constraint> load_constraints_file(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  return parse_constraints(text);
}

std::vector<Test> gen_pseudorandom(std::uint64_t seed, std::size_t n, LengthRange length) {
  return gen_constrained(seed, n, std::array<Constraint, 1>{length});
}

std::vector<Test> gen_constrained(std::uint64_t seed, std::size_t n, std::span<const Constraint> constraints) {
  Plan plan;
  plan.weights.assign(kAlphabet.size(), 1.0);
  for (const auto& c : constraints) {
    if (auto* p = std::get_if<MandatoryPrefix>(&c)) {
      for (const auto& a : p->actions) check_in_alphabet(a);
      plan.prefix.insert(plan.prefix.end(), p->actions.begin(), p->actions.end());
    } else if (auto* w = std::get_if<Weight>(&c)) {
      bool found = false;
      for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
        if (slot_key(kAlphabet[i]) == w->slot) {
          plan.weights[i] = w->weight;
          found = true;
        }
      }
      if (!found || !(w->weight > 0)) throw ConfigError("invalid weight for '" + w->slot + "'");
    } else {
      plan.length = std::get<LengthRange>(c);
    }
  }
  if (plan.length.min < 1 || plan.length.max < plan.length.min) throw ConfigError("invalid length range");
  if (plan.length.max < plan.prefix.size()) {
    throw ConfigError("length range max " + std::to_string(plan.length.max) + " is shorter than the mandatory prefix (" +
                      std::to_string(plan.prefix.size()) + " actions)");
  }
  plan.length.min = std::max(plan.length.min, plan.prefix.size());
  return generate(plan, seed, n);
}

Test instantiate(const TestTemplate& tmpl, std::uint64_t seed) {
  Rng rng(seed);
  Test t;
  t.seed = rng();
  for (std::size_t i = 0; i < tmpl.actions.size(); ++i) {
    const TemplateAction& ta = tmpl.actions[i];
    Action a{ta.verb, ta.name, std::nullopt, {}};
    if (ta.verb == Verb::setparam) {
      const std::string& v = ta.value;
      auto fail = [&] { return TemplateError("template action " + std::to_string(i + 1) + ": unbound value '" + v + "' for " + ta.name); };
      if (ta.name == "time") {
        if (v == "ANY") {
          a.value = std::uniform_int_distribution<std::int64_t>(kTimeMin, kTimeMax)(rng);
        } else {
          std::int64_t n = 0;
          auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
          if (ec != std::errc{} || p != v.data() + v.size() || n < 1) throw fail();
          a.value = n;
        }
      } else if (v == "true" || v == "false") {
        a.value = v == "true";
      } else if (v == "TRUE" || v == "FALSE" || v == "ANY") {
        const bool b = v == "ANY" ? std::bernoulli_distribution(0.5)(rng) : v == "TRUE";
        a.value = b;
        if (ta.name != "honTask") a.sample = draw_sample(ta.name, b, rng);
      } else {
        throw fail();
      }
    } else if (!ta.value.empty()) {
      throw TemplateError("template action " + std::to_string(i + 1) + ": signal actions take no value");
    }
    t.actions.push_back(std::move(a));
  }
  return t;
}

}  // namespace cdv
