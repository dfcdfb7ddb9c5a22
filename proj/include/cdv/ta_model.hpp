#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cdv/test_format.hpp"

/// Networks of integer-clock timed automata: parsing, successor enumeration,
/// bounded EF reachability with shortest witnesses, witness projection.
namespace cdv::ta {

class ModelError : public std::runtime_error {
 public:
  ModelError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t visited, std::size_t frontier, std::size_t depth)
      : std::runtime_error(what), visited_(visited), frontier_(frontier), depth_(depth) {}
  std::size_t visited() const { return visited_; }
  std::size_t frontier() const { return frontier_; }
  std::size_t depth() const { return depth_; }

 private:
  std::size_t visited_, frontier_, depth_;
};

struct State {
  std::vector<int> locations;  // per automaton
  std::vector<int> vars;
  std::vector<int> clocks;
  friend bool operator==(const State&, const State&) = default;
};

enum class Op : std::uint8_t {
  constant, var, clock, at_location,
  logical_not, negate,
  add, sub, lt, le, gt, ge, eq, ne, logical_and, logical_or,
};

struct Expr {
  Op op = Op::constant;
  int value = 0;  // constant, or var/clock/automaton index
  int location = 0;
  std::shared_ptr<const Expr> lhs, rhs;

  int eval(const State& s) const;
};
using ExprPtr = std::shared_ptr<const Expr>;

struct Assignment {
  bool clock = false;
  int target = 0;
  ExprPtr value;
};

struct SyncLabel {
  std::string channel;
  bool send = false;
};

struct Edge {
  int source = 0;
  int target = 0;
  ExprPtr guard;  // null means true
  std::optional<SyncLabel> sync;
  std::vector<Assignment> updates;
  std::string action;  // abstract test action this edge stands for, if any
  int line = 0;
};

struct Location {
  std::string name;
  ExprPtr invariant;  // null means true
};

struct Automaton {
  std::string name;
  std::vector<Location> locations;
  int initial = 0;
  std::vector<Edge> edges;
  std::vector<int> owned_clocks;
  /// active[location][i] for owned_clocks[i]; inactive clocks are held at 0.
  std::vector<std::vector<bool>> active;

  std::optional<int> find_location(std::string_view n) const;
};

struct Network {
  std::vector<Automaton> automata;
  std::vector<std::string> var_names;
  std::vector<int> var_init;
  std::vector<std::string> clock_names;
  /// One past the largest constant each clock is compared with.
  std::vector<int> clock_cap;

  std::optional<int> find_automaton(std::string_view n) const;
  std::optional<int> find_var(std::string_view n) const;
  std::optional<int> find_clock(std::string_view n) const;
};

/// Parses the model text format; throws ModelError with the offending line.
Network parse_network(std::string_view text);
Network load_network_file(const std::string& path);

/// Throws ModelError unless the network is the six-component handover model.
void require_handover_components(const Network& net);
inline constexpr std::string_view kHandoverComponents[] = {"robot", "workflow", "gaze", "location", "pressure", "sensors"};

/// Parses a predicate over variables and `automaton.location` tests.
ExprPtr parse_predicate(const Network& net, std::string_view text);

State initial_state(const Network& net);

struct Transition {
  enum class Kind : std::uint8_t { delay, edge, sync };
  Kind kind = Kind::delay;
  int automaton = -1;
  int edge = -1;
  int partner_automaton = -1;  // receiving side of a sync
  int partner_edge = -1;
  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Successor {
  Transition transition;
  State state;
};

/// Enabled steps in a fixed order: internal edges by automaton then edge
/// order, then synchronisations by sender, then the unit delay.
std::vector<Successor> successors(const Network& net, const State& state);

struct ReachabilityQuery {
  std::string label;
  std::string text;
  ExprPtr predicate;
};

/// `[label:] EF <predicate>` per line; `#` comments.
std::vector<ReachabilityQuery> parse_queries(const Network& net, std::string_view text);
std::vector<ReachabilityQuery> load_queries_file(const Network& net, const std::string& path);

struct Witness {
  std::vector<State> states;  // states.size() == transitions.size() + 1
  std::vector<Transition> transitions;
};

struct Unreachable {
  bool exhausted = false;  // true: no reachable state satisfies; false: bound hit
  std::size_t visited = 0;
  std::size_t depth = 0;
};

using CheckResult = std::variant<Witness, Unreachable>;

/// Breadth-first search; returns a shortest witness within `bound` steps.
CheckResult check_ef(const Network& net, const ReachabilityQuery& query, std::size_t bound,
                     std::size_t state_limit = 5'000'000);

/// Environment-side projection: keeps labelled edges of `keep` components,
/// folds runs of delays into `setparam time = N`.
TestTemplate project(const Network& net, const Witness& witness, std::span<const std::string> keep);

std::string describe_transition(const Network& net, const Transition& t);
std::string describe_state(const Network& net, const State& s);
std::string format_witness(const Network& net, const Witness& w);

}  // namespace cdv::ta
