#include "cdv/coverage.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "cdv/world.hpp"

namespace cdv {

namespace {

using RS = RobotState;

const std::vector<std::vector<RobotState>> kPaths = {
    {RS::reset, RS::receive_signal_1, RS::done},
    {RS::reset, RS::receive_signal_1, RS::move, RS::send_signal, RS::receive_signal_2, RS::done},
    {RS::reset, RS::receive_signal_1, RS::move, RS::send_signal, RS::receive_signal_2, RS::sense, RS::done},
    {RS::reset, RS::receive_signal_1, RS::move, RS::send_signal, RS::receive_signal_2, RS::sense, RS::decide,
     RS::done},
    {RS::reset, RS::receive_signal_1, RS::move, RS::send_signal, RS::receive_signal_2, RS::sense, RS::decide,
     RS::release, RS::done},
};

constexpr std::string_view kModelNames[] = {"block", "state", "transition", "path", "assertion", "situation"};

char flag(bool b) { return b ? 'T' : 'F'; }

}  // namespace

std::string_view model_name(CoverageModel m) { return kModelNames[static_cast<std::size_t>(m)]; }

CoverageModel parse_model(std::string_view name) {
  for (CoverageModel m : kAllCoverageModels) {
    if (model_name(m) == name) return m;
  }
  std::string valid;
  for (CoverageModel m : kAllCoverageModels) valid += (valid.empty() ? "" : ", ") + std::string(model_name(m));
  throw ConfigError("unknown coverage model '" + std::string(name) + "' (valid: " + valid + ")");
}

std::size_t SituationKey::index() const {
  return (gaze_ok ? 16u : 0u) | (pressure_ok ? 8u : 0u) | (location_ok ? 4u : 0u) | (activated ? 2u : 0u) |
         (ready_sent ? 1u : 0u);
}

SituationKey SituationKey::from_index(std::size_t i) {
  return {(i & 16) != 0, (i & 8) != 0, (i & 4) != 0, (i & 2) != 0, (i & 1) != 0};
}

std::span<const std::vector<RobotState>> path_table() { return kPaths; }

const std::vector<std::uint64_t>& CoverageReport::cells(CoverageModel m) const {
  switch (m) {
    case CoverageModel::block: return blocks;
    case CoverageModel::state: return states;
    case CoverageModel::transition: return transitions;
    case CoverageModel::path: return paths;
    case CoverageModel::assertion: return assertions;
    case CoverageModel::situation: break;
  }
  return situations;
}

std::vector<std::uint64_t>& CoverageReport::cells(CoverageModel m) {
  return const_cast<std::vector<std::uint64_t>&>(std::as_const(*this).cells(m));
}

std::string cell_name(CoverageModel m, std::size_t i) {
  switch (m) {
    case CoverageModel::block: {
      const BlockId b = block_table()[i].id;
      return std::string(state_name(b.state)) + "." + std::to_string(b.arm);
    }
    case CoverageModel::state: return std::string(state_name(kAllRobotStates[i]));
    case CoverageModel::transition: {
      const StateTransition t = transition_table()[i];
      return std::string(state_name(t.from)) + "->" + std::string(state_name(t.to));
    }
    case CoverageModel::path: {
      std::string s;
      for (RobotState st : kPaths[i]) s += (s.empty() ? "" : ">") + std::string(state_name(st));
      return s;
    }
    case CoverageModel::assertion: return std::string(monitor_name(kAllMonitors[i]));
    case CoverageModel::situation: break;
  }
  const SituationKey k = SituationKey::from_index(i);
  return std::string("gaze=") + flag(k.gaze_ok) + "|pressure=" + flag(k.pressure_ok) + "|location=" +
         flag(k.location_ok) + "|activated=" + flag(k.activated) + "|ready=" + flag(k.ready_sent);
}

CoverageReport collect(const Trace& trace, std::span<const std::uint64_t> block_hits,
                       std::span<const StateTransition> transitions, const MonitorReport& monitors) {
  CoverageReport r;
  r.tests = 1;
  if (block_hits.size() != r.blocks.size()) throw VersionError("block hit vector does not match the block table");
  std::copy(block_hits.begin(), block_hits.end(), r.blocks.begin());
  for (const StateTransition& t : transitions) ++r.transitions[transition_index(t)];
  for (std::size_t m = 0; m < kMonitorCount; ++m) r.assertions[m] = monitors.records[m].armings.size();

  std::vector<RobotState> path;
  SituationKey key;
  ++r.situations[key.index()];
  for (const Observation& o : trace.events) {
    if (const auto* s = std::get_if<obs::StateEntered>(&o.data)) {
      ++r.states[static_cast<std::size_t>(s->state)];
      if (path.empty() || path.back() != s->state) path.push_back(s->state);
    } else if (const auto* p = std::get_if<obs::ParamSet>(&o.data)) {
      const bool v = p->value == "true";
      if (p->name == "hgazeOk") key.gaze_ok = v;
      else if (p->name == "hpressureOk") key.pressure_ok = v;
      else if (p->name == "hlocationOk") key.location_ok = v;
      ++r.situations[key.index()];
    } else if (const auto* sig = std::get_if<obs::SignalSent>(&o.data); sig && sig->sender == "driver") {
      if (sig->name == kStartRobot) key.activated = true;
      else if (sig->name == kHumanIsReady) key.ready_sent = true;
      ++r.situations[key.index()];
    }
  }
  for (std::size_t i = 0; i < kPaths.size(); ++i) {
    if (path == kPaths[i]) ++r.paths[i];
  }
  return r;
}

CoverageReport merge(const CoverageReport& a, const CoverageReport& b) {
  if (a.table != b.table) throw VersionError("cannot merge coverage from tables '" + a.table + "' and '" + b.table + "'");
  CoverageReport r = a;
  for (CoverageModel m : kAllCoverageModels) {
    auto& dst = r.cells(m);
    const auto& src = b.cells(m);
    if (dst.size() != src.size()) throw VersionError("coverage model sizes differ");
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  r.tests += b.tests;
  return r;
}

double percent(const CoverageReport& r, CoverageModel m) {
  const auto& c = r.cells(m);
  const auto hit = std::count_if(c.begin(), c.end(), [](std::uint64_t n) { return n > 0; });
  return c.empty() ? 0.0 : 100.0 * static_cast<double>(hit) / static_cast<double>(c.size());
}

std::vector<std::string> holes(const CoverageReport& r, CoverageModel m) {
  std::vector<std::string> out;
  const auto& c = r.cells(m);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) out.push_back(cell_name(m, i));
  }
  return out;
}

std::string to_csv(const CoverageReport& r) {
  std::ostringstream out;
  out << "model,cell,hits\n";
  out << "meta,table," << r.table << "\n";
  out << "meta,tests," << r.tests << "\n";
  for (CoverageModel m : kAllCoverageModels) {
    const auto& c = r.cells(m);
    for (std::size_t i = 0; i < c.size(); ++i) out << model_name(m) << ',' << cell_name(m, i) << ',' << c[i] << '\n';
  }
  return out.str();
}

CoverageReport from_csv(std::string_view text) {
  CoverageReport r;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { return ConfigError("coverage line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || (lineno == 1 && line == "model,cell,hits")) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.rfind(',');
    if (c1 == std::string::npos || c1 == c2) throw fail("expected 'model,cell,hits'");
    const std::string model = line.substr(0, c1), cell = line.substr(c1 + 1, c2 - c1 - 1), hits = line.substr(c2 + 1);
    if (model == "meta") {
      if (cell == "table") r.table = hits;
      else if (cell == "tests") r.tests = std::stoull(hits);
      else throw fail("unknown meta row '" + cell + "'");
      continue;
    }
    const CoverageModel m = parse_model(model);
    auto& cells = r.cells(m);
    bool found = false;
    for (std::size_t i = 0; i < cells.size() && !found; ++i) {
      if (cell_name(m, i) == cell) {
        try {
          std::size_t used = 0;
          cells[i] = std::stoull(hits, &used);
          if (used != hits.size()) throw std::invalid_argument(hits);
        } catch (const std::exception&) {
          throw fail("bad hit count '" + hits + "'");
        }
        found = true;
      }
    }
    if (!found) throw VersionError("coverage cell '" + model + "," + cell + "' is not in table " + r.table);
  }
  if (r.table != kInstrumentationVersion) throw VersionError("coverage file uses table '" + r.table + "'");
  return r;
}

std::string summary_json(const CoverageReport& r) {
  nlohmann::ordered_json j;
  j["table"] = r.table;
  j["tests"] = r.tests;
  nlohmann::ordered_json pct;
  for (CoverageModel m : kAllCoverageModels) pct[std::string(model_name(m))] = percent(r, m);
  j["percent"] = std::move(pct);
  nlohmann::ordered_json hl;
  for (CoverageModel m : kAllCoverageModels) hl[std::string(model_name(m))] = holes(r, m);
  j["holes"] = std::move(hl);
  return j.dump(2) + "\n";
}

}  // namespace cdv
