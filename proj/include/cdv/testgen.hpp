#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cdv/test_format.hpp"
#include "cdv/world.hpp"

namespace cdv {

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A legal action kind; values are drawn from the slot's domain.
struct ActionSlot {
  Verb verb;
  std::string_view name;
};

/// The handover workflow's high-level actions.
std::span<const ActionSlot> action_alphabet();
/// "sendsignal humanIsReady", "setparam time", ...
std::string slot_key(const ActionSlot& slot);
std::optional<std::size_t> find_slot(Verb verb, std::string_view name);

inline constexpr std::int64_t kTimeMin = 1;
inline constexpr std::int64_t kTimeMax = 200;

struct MandatoryPrefix {
  std::vector<Action> actions;
};
struct Weight {
  std::string slot;
  double weight = 1.0;
};
struct LengthRange {
  std::size_t min = 5;
  std::size_t max = 20;
};
using Constraint = std::variant<MandatoryPrefix, Weight, LengthRange>;

/// `prefix: <action>; ...`, `weight: <action> <w>`, `length: <min> <max>`.
std::vector<Constraint> parse_constraints(std::string_view text);
std::vector<Constraint> load_constraints_file(const std::string& path);

/// i.i.d. actions, uniform slots and values, length uniform over `length`.
std::vector<Test> gen_pseudorandom(std::uint64_t seed, std::size_t n, LengthRange length = {});

/// Mandatory prefix first, then weighted draws. Throws ConfigError for
/// inconsistent constraints.
std::vector<Test> gen_constrained(std::uint64_t seed, std::size_t n, std::span<const Constraint> constraints);

/// Resolves symbolic values: TRUE/FALSE draw a concrete sample from the true
/// or false ranges, ANY draws a time in [kTimeMin, kTimeMax] or a fair boolean.
Test instantiate(const TestTemplate& tmpl, std::uint64_t seed);

/// Identifier of test `index` within a suite.
std::string test_id(std::size_t index);

}  // namespace cdv
