#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "cdv/ta_model.hpp"

namespace cdv::ta {

namespace {

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](int v) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(v)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (int v : s.locations) mix(v);
    for (int v : s.vars) mix(v);
    for (int v : s.clocks) mix(v);
    return h;
  }
};

bool holds(const ExprPtr& e, const State& s) { return !e || e->eval(s) != 0; }

bool invariants_hold(const Network& net, const State& s) {
  for (std::size_t a = 0; a < net.automata.size(); ++a) {
    if (!holds(net.automata[a].locations[s.locations[a]].invariant, s)) return false;
  }
  return true;
}

void normalize(const Network& net, State& s) {
  for (std::size_t a = 0; a < net.automata.size(); ++a) {
    const Automaton& aut = net.automata[a];
    const auto& active = aut.active[s.locations[a]];
    for (std::size_t k = 0; k < aut.owned_clocks.size(); ++k) {
      if (!active[k]) s.clocks[aut.owned_clocks[k]] = 0;
    }
  }
}

void apply(const Edge& e, int automaton, State& s) {
  // Right-hand sides see the state before this edge's own updates.
  const State before = s;
  for (const Assignment& u : e.updates) {
    (u.clock ? s.clocks : s.vars)[u.target] = u.value->eval(before);
  }
  s.locations[automaton] = e.target;
}

bool enabled(const Edge& e, int automaton, const State& s) {
  return s.locations[automaton] == e.source && holds(e.guard, s);
}

}  // namespace

std::vector<Successor> successors(const Network& net, const State& state) {
  std::vector<Successor> out;
  const int n = static_cast<int>(net.automata.size());
  auto finish = [&](Transition t, State next) {
    normalize(net, next);
    if (invariants_hold(net, next)) out.push_back({t, std::move(next)});
  };

  for (int a = 0; a < n; ++a) {
    const auto& edges = net.automata[a].edges;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      if (edges[i].sync || !enabled(edges[i], a, state)) continue;
      State next = state;
      apply(edges[i], a, next);
      finish({Transition::Kind::edge, a, i}, std::move(next));
    }
  }

  for (int a = 0; a < n; ++a) {
    const auto& edges = net.automata[a].edges;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      const Edge& send = edges[i];
      if (!send.sync || !send.sync->send || !enabled(send, a, state)) continue;
      for (int b = 0; b < n; ++b) {
        if (b == a) continue;
        const auto& redges = net.automata[b].edges;
        for (int j = 0; j < static_cast<int>(redges.size()); ++j) {
          const Edge& recv = redges[j];
          if (!recv.sync || recv.sync->send || recv.sync->channel != send.sync->channel) continue;
          if (!enabled(recv, b, state)) continue;
          State next = state;
          apply(send, a, next);
          apply(recv, b, next);
          finish({Transition::Kind::sync, a, i, b, j}, std::move(next));
        }
      }
    }
  }

  State delayed = state;
  for (std::size_t c = 0; c < delayed.clocks.size(); ++c) {
    delayed.clocks[c] = std::min(delayed.clocks[c] + 1, net.clock_cap[c]);
  }
  finish({}, std::move(delayed));
  return out;
}

CheckResult check_ef(const Network& net, const ReachabilityQuery& query, std::size_t bound, std::size_t state_limit) {
  struct Node {
    State state;
    std::size_t parent;
    Transition via;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<State, std::size_t, StateHash> index;

  auto witness_to = [&](std::size_t i) {
    Witness w;
    for (std::size_t k = i;; k = nodes[k].parent) {
      w.states.push_back(nodes[k].state);
      if (k == 0) break;
      w.transitions.push_back(nodes[k].via);
    }
    std::reverse(w.states.begin(), w.states.end());
    std::reverse(w.transitions.begin(), w.transitions.end());
    return w;
  };

  State init = initial_state(net);
  normalize(net, init);
  nodes.push_back({init, 0, {}, 0});
  index.emplace(init, 0);
  if (holds(query.predicate, init)) return witness_to(0);

  bool truncated = false;
  std::size_t max_depth = 0;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const std::size_t depth = nodes[head].depth;
    std::vector<Successor> next = successors(net, nodes[head].state);
    if (depth >= bound) {
      truncated = truncated || !next.empty();
      continue;
    }
    for (Successor& s : next) {
      if (index.count(s.state)) continue;
      if (nodes.size() >= state_limit) {
        throw ResourceError("state limit of " + std::to_string(state_limit) + " reached", nodes.size(),
                            nodes.size() - head, depth);
      }
      const std::size_t id = nodes.size();
      index.emplace(s.state, id);
      nodes.push_back({std::move(s.state), head, s.transition, depth + 1});
      max_depth = std::max(max_depth, depth + 1);
      if (holds(query.predicate, nodes[id].state)) return witness_to(id);
    }
  }
  return Unreachable{!truncated, nodes.size(), max_depth};
}

TestTemplate project(const Network& net, const Witness& witness, std::span<const std::string> keep) {
  std::vector<bool> kept(net.automata.size(), false);
  for (const std::string& k : keep) {
    auto a = net.find_automaton(k);
    if (!a) throw ModelError(0, "unknown component '" + k + "'");
    kept[*a] = true;
  }
  TestTemplate out;
  std::size_t pending = 0;
  auto emit = [&](int automaton, int edge) {
    if (automaton < 0 || !kept[automaton]) return;
    const std::string& act = net.automata[automaton].edges[edge].action;
    if (act.empty()) return;
    if (pending > 0) {
      out.actions.push_back({Verb::setparam, "time", std::to_string(pending)});
      pending = 0;
    }
    out.actions.push_back(parse_template(act).actions.front());
  };
  for (const Transition& t : witness.transitions) {
    if (t.kind == Transition::Kind::delay) {
      ++pending;
      continue;
    }
    emit(t.automaton, t.edge);
    if (t.kind == Transition::Kind::sync) emit(t.partner_automaton, t.partner_edge);
  }
  if (pending > 0) out.actions.push_back({Verb::setparam, "time", std::to_string(pending)});
  return out;
}

std::string describe_transition(const Network& net, const Transition& t) {
  if (t.kind == Transition::Kind::delay) return "delay 1";
  auto edge_text = [&](int a, int e) {
    const Automaton& aut = net.automata[a];
    const Edge& edge = aut.edges[e];
    return aut.name + ": " + aut.locations[edge.source].name + " -> " + aut.locations[edge.target].name;
  };
  std::string s = edge_text(t.automaton, t.edge);
  if (t.kind == Transition::Kind::sync) {
    s += " [" + net.automata[t.automaton].edges[t.edge].sync->channel + "] " +
         edge_text(t.partner_automaton, t.partner_edge);
  }
  return s;
}

std::string describe_state(const Network& net, const State& s) {
  std::ostringstream out;
  for (std::size_t a = 0; a < net.automata.size(); ++a) {
    out << (a ? " " : "") << net.automata[a].name << '.' << net.automata[a].locations[s.locations[a]].name;
  }
  out << " |";
  for (std::size_t v = 0; v < s.vars.size(); ++v) out << ' ' << net.var_names[v] << '=' << s.vars[v];
  out << " |";
  for (std::size_t c = 0; c < s.clocks.size(); ++c) out << ' ' << net.clock_names[c] << '=' << s.clocks[c];
  return out.str();
}

std::string format_witness(const Network& net, const Witness& w) {
  std::ostringstream out;
  out << "0 " << describe_state(net, w.states.front()) << '\n';
  for (std::size_t i = 0; i < w.transitions.size(); ++i) {
    out << "  " << describe_transition(net, w.transitions[i]) << '\n';
    out << i + 1 << ' ' << describe_state(net, w.states[i + 1]) << '\n';
  }
  return out.str();
}

}  // namespace cdv::ta
