#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "cdv/test_format.hpp"
#include "ta_internal.hpp"

namespace cdv::ta {

std::optional<int> Automaton::find_location(std::string_view n) const {
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (locations[i].name == n) return static_cast<int>(i);
  }
  return std::nullopt;
}

namespace {

template <class Seq, class Get>
std::optional<int> find_in(const Seq& seq, std::string_view n, Get get) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (get(seq[i]) == n) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Line {
  int number;
  std::string keyword;
  std::string rest;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string t = trim(raw);
    if (t.empty()) continue;
    const auto sp = t.find_first_of(" \t");
    out.push_back({n, t.substr(0, sp), sp == std::string::npos ? "" : trim(t.substr(sp))});
  }
  return out;
}

// Splits an edge line into its clauses; `act` swallows the rest of the line.
struct EdgeClauses {
  std::string head, guard, sync, updates, act;
};

EdgeClauses split_edge(const std::string& rest, int line) {
  static const std::string keys[] = {"guard", "sync", "do", "act"};
  EdgeClauses c;
  std::string* current = &c.head;
  std::set<std::string> seen;
  std::size_t i = 0;
  while (i < rest.size()) {
    const auto b = rest.find_first_not_of(" \t", i);
    if (b == std::string::npos) break;
    auto e = rest.find_first_of(" \t", b);
    if (e == std::string::npos) e = rest.size();
    const std::string word = rest.substr(b, e - b);
    const bool is_key = current != &c.act && std::find(std::begin(keys), std::end(keys), word) != std::end(keys);
    if (is_key) {
      if (!seen.insert(word).second) throw ModelError(line, "duplicate '" + word + "' clause");
      current = word == "guard" ? &c.guard : word == "sync" ? &c.sync : word == "do" ? &c.updates : &c.act;
    } else {
      if (!current->empty()) *current += ' ';
      *current += word;
    }
    i = e;
  }
  return c;
}

void check_clock_owner(const Expr& e, const Network& net, const std::vector<int>& owner, int automaton, int line) {
  std::vector<bool> used(net.clock_names.size(), false);
  detail::collect_clocks(e, used);
  for (std::size_t c = 0; c < used.size(); ++c) {
    if (used[c] && owner[c] >= 0 && owner[c] != automaton) {
      throw ModelError(line, "clock '" + net.clock_names[c] + "' belongs to another automaton");
    }
  }
}

void compute_active_clocks(Network& net) {
  for (std::size_t a = 0; a < net.automata.size(); ++a) {
    Automaton& aut = net.automata[a];
    const std::size_t nl = aut.locations.size();
    aut.active.assign(nl, std::vector<bool>(aut.owned_clocks.size(), false));
    for (std::size_t k = 0; k < aut.owned_clocks.size(); ++k) {
      const int c = aut.owned_clocks[k];
      std::vector<bool> read(nl, false);
      for (std::size_t l = 0; l < nl; ++l) {
        std::vector<bool> used(net.clock_names.size(), false);
        if (aut.locations[l].invariant) detail::collect_clocks(*aut.locations[l].invariant, used);
        read[l] = used[c];
      }
      for (const Edge& e : aut.edges) {
        std::vector<bool> used(net.clock_names.size(), false);
        if (e.guard) detail::collect_clocks(*e.guard, used);
        for (const Assignment& u : e.updates) detail::collect_clocks(*u.value, used);
        if (used[c]) read[e.source] = true;
      }
      std::vector<bool> active = read;
      for (bool changed = true; changed;) {
        changed = false;
        for (const Edge& e : aut.edges) {
          const bool reset = std::any_of(e.updates.begin(), e.updates.end(),
                                         [&](const Assignment& u) { return u.clock && u.target == c; });
          if (!reset && active[e.target] && !active[e.source]) {
            active[e.source] = true;
            changed = true;
          }
        }
      }
      for (std::size_t l = 0; l < nl; ++l) aut.active[l][k] = active[l];
    }
  }
}

}  // namespace

std::optional<int> Network::find_automaton(std::string_view n) const {
  return find_in(automata, n, [](const Automaton& a) -> std::string_view { return a.name; });
}
std::optional<int> Network::find_var(std::string_view n) const {
  return find_in(var_names, n, [](const std::string& s) -> std::string_view { return s; });
}
std::optional<int> Network::find_clock(std::string_view n) const {
  return find_in(clock_names, n, [](const std::string& s) -> std::string_view { return s; });
}

Network parse_network(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  Network net;
  std::vector<int> owner;  // per clock; -1 for global
  std::set<std::string> names;
  auto declare = [&](const std::string& name, int line) {
    if (!is_identifier(name)) throw ModelError(line, "invalid name '" + name + "'");
    if (!names.insert(name).second) throw ModelError(line, "'" + name + "' declared twice");
  };

  // Pass 1: declarations, automata and their locations.
  int current = -1;
  for (const Line& l : lines) {
    if (l.keyword == "var") {
      const auto eq = l.rest.find('=');
      const std::string name = trim(l.rest.substr(0, eq));
      declare(name, l.number);
      int init = 0;
      if (eq != std::string::npos) {
        const std::string v = trim(l.rest.substr(eq + 1));
        try {
          std::size_t used = 0;
          init = std::stoi(v, &used);
          if (used != v.size()) throw std::invalid_argument(v);
        } catch (const std::exception&) {
          throw ModelError(l.number, "bad initial value '" + v + "'");
        }
      }
      net.var_names.push_back(name);
      net.var_init.push_back(init);
    } else if (l.keyword == "clock") {
      declare(l.rest, l.number);
      net.clock_names.push_back(l.rest);
      owner.push_back(current);
      if (current >= 0) net.automata[current].owned_clocks.push_back(static_cast<int>(net.clock_names.size()) - 1);
    } else if (l.keyword == "automaton") {
      declare(l.rest, l.number);
      net.automata.push_back({});
      net.automata.back().name = l.rest;
      current = static_cast<int>(net.automata.size()) - 1;
    } else if (l.keyword == "loc") {
      if (current < 0) throw ModelError(l.number, "location outside an automaton");
      const auto sp = l.rest.find_first_of(" \t");
      const std::string name = l.rest.substr(0, sp);
      if (!is_identifier(name)) throw ModelError(l.number, "invalid location name '" + name + "'");
      if (net.automata[current].find_location(name)) throw ModelError(l.number, "location '" + name + "' declared twice");
      net.automata[current].locations.push_back({name, nullptr});
    } else if (l.keyword == "init" || l.keyword == "edge") {
      if (current < 0) throw ModelError(l.number, "'" + l.keyword + "' outside an automaton");
    } else {
      throw ModelError(l.number, "unknown keyword '" + l.keyword + "'");
    }
  }
  for (const Automaton& a : net.automata) {
    if (a.locations.empty()) throw ModelError(0, "automaton '" + a.name + "' has no locations");
  }

  // Pass 2: invariants, initial locations, edges.
  std::vector<int> var_writer(net.var_names.size(), -1);
  std::vector<int> clock_writer(net.clock_names.size(), -1);
  net.clock_cap.assign(net.clock_names.size(), 0);
  std::vector<int> max_const(net.clock_names.size(), 0);
  std::vector<bool> init_seen(net.automata.size(), false);
  current = -1;
  int loc_index = 0;
  for (const Line& l : lines) {
    if (l.keyword == "automaton") {
      ++current;
      loc_index = 0;
      continue;
    }
    if (current < 0) continue;
    Automaton& aut = net.automata[current];
    if (l.keyword == "loc") {
      const auto sp = l.rest.find_first_of(" \t");
      if (sp != std::string::npos) {
        const std::string tail = trim(l.rest.substr(sp));
        if (tail.rfind("inv", 0) != 0 || (tail.size() > 3 && !std::isspace(static_cast<unsigned char>(tail[3])))) {
          throw ModelError(l.number, "expected 'inv' after location name");
        }
        auto inv = detail::parse_expression(net, trim(tail.substr(3)), l.number, true);
        detail::collect_clock_bounds(*inv, max_const, l.number);
        check_clock_owner(*inv, net, owner, current, l.number);
        aut.locations[loc_index].invariant = inv;
      }
      ++loc_index;
    } else if (l.keyword == "init") {
      auto loc = aut.find_location(l.rest);
      if (!loc) throw ModelError(l.number, "unknown location '" + l.rest + "'");
      if (init_seen[current]) throw ModelError(l.number, "initial location given twice");
      init_seen[current] = true;
      aut.initial = *loc;
    } else if (l.keyword == "edge") {
      const EdgeClauses c = split_edge(l.rest, l.number);
      const auto arrow = c.head.find("->");
      if (arrow == std::string::npos) throw ModelError(l.number, "expected 'SRC -> DST'");
      const std::string src = trim(c.head.substr(0, arrow));
      const std::string dst = trim(c.head.substr(arrow + 2));
      Edge e;
      e.line = l.number;
      auto s = aut.find_location(src);
      auto d = aut.find_location(dst);
      if (!s) throw ModelError(l.number, "unknown location '" + src + "'");
      if (!d) throw ModelError(l.number, "unknown location '" + dst + "'");
      e.source = *s;
      e.target = *d;
      if (!c.guard.empty()) {
        e.guard = detail::parse_expression(net, c.guard, l.number, true);
        detail::collect_clock_bounds(*e.guard, max_const, l.number);
        check_clock_owner(*e.guard, net, owner, current, l.number);
      }
      if (!c.sync.empty()) {
        const char dir = c.sync.back();
        const std::string ch = trim(c.sync.substr(0, c.sync.size() - 1));
        if ((dir != '!' && dir != '?') || !is_identifier(ch)) throw ModelError(l.number, "bad sync label '" + c.sync + "'");
        e.sync = SyncLabel{ch, dir == '!'};
      }
      if (!c.updates.empty()) {
        std::istringstream parts(c.updates);
        std::string part;
        while (std::getline(parts, part, ',')) {
          const auto eq = part.find('=');
          if (eq == std::string::npos) throw ModelError(l.number, "bad assignment '" + trim(part) + "'");
          const std::string target = trim(part.substr(0, eq));
          Assignment a;
          if (auto v = net.find_var(target)) {
            if (var_writer[*v] >= 0 && var_writer[*v] != current) {
              throw ModelError(l.number, "variable '" + target + "' written by more than one automaton");
            }
            var_writer[*v] = current;
            a.target = *v;
          } else if (auto k = net.find_clock(target)) {
            if ((owner[*k] >= 0 && owner[*k] != current) || (clock_writer[*k] >= 0 && clock_writer[*k] != current)) {
              throw ModelError(l.number, "clock '" + target + "' reset by more than one automaton");
            }
            clock_writer[*k] = current;
            a.clock = true;
            a.target = *k;
          } else {
            throw ModelError(l.number, "undeclared assignment target '" + target + "'");
          }
          a.value = detail::parse_expression(net, trim(part.substr(eq + 1)), l.number, false);
          if (a.clock && a.value->op != Op::constant) throw ModelError(l.number, "clocks may only be reset to constants");
          e.updates.push_back(std::move(a));
        }
      }
      if (!c.act.empty()) {
        try {
          const TestTemplate t = parse_template(c.act);
          if (t.actions.size() != 1) throw ModelError(l.number, "act must name exactly one test action");
        } catch (const FormatError& err) {
          throw ModelError(l.number, std::string("bad act: ") + err.what());
        }
        e.action = c.act;
      }
      aut.edges.push_back(std::move(e));
    }
  }
  for (std::size_t k = 0; k < max_const.size(); ++k) net.clock_cap[k] = max_const[k] + 1;
  compute_active_clocks(net);
  return net;
}

Network load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(0, "cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

void require_handover_components(const Network& net) {
  std::set<std::string> want(std::begin(kHandoverComponents), std::end(kHandoverComponents));
  std::set<std::string> have;
  for (const Automaton& a : net.automata) have.insert(a.name);
  for (const std::string& w : want) {
    if (!have.count(w)) throw ModelError(0, "model lacks component '" + w + "'");
  }
  for (const std::string& h : have) {
    if (!want.count(h)) throw ModelError(0, "unexpected component '" + h + "'");
  }
}

ExprPtr parse_predicate(const Network& net, std::string_view text) {
  return detail::parse_expression(net, text, 0, false);
}

State initial_state(const Network& net) {
  State s;
  for (const Automaton& a : net.automata) s.locations.push_back(a.initial);
  s.vars = net.var_init;
  s.clocks.assign(net.clock_names.size(), 0);
  return s;
}

std::vector<ReachabilityQuery> parse_queries(const Network& net, std::string_view text) {
  std::vector<ReachabilityQuery> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string t = trim(raw);
    if (t.empty()) continue;
    ReachabilityQuery q;
    if (auto colon = t.find(':'); colon != std::string::npos) {
      q.label = trim(t.substr(0, colon));
      if (!is_identifier(q.label)) throw ModelError(n, "bad query label '" + q.label + "'");
      t = trim(t.substr(colon + 1));
    }
    if (t.rfind("EF", 0) != 0 || t.size() < 3 || !std::isspace(static_cast<unsigned char>(t[2]))) {
      throw ModelError(n, "only 'EF <predicate>' queries are supported");
    }
    q.text = t;
    q.predicate = detail::parse_expression(net, trim(t.substr(2)), n, false);
    if (q.label.empty()) q.label = "q" + std::to_string(out.size() + 1);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<ReachabilityQuery> load_queries_file(const Network& net, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(0, "cannot open query file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_queries(net, ss.str());
}

}  // namespace cdv::ta
