#include "cdv/campaign.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cdv/testgen.hpp"

namespace cdv {

namespace fs = std::filesystem;

namespace {

void require_file(const std::string& path, std::string_view what) {
  if (path.empty()) throw ConfigError(std::string(what) + " file is required");
  if (!fs::is_regular_file(path)) throw ConfigError(std::string(what) + " file '" + path + "' not found");
}

std::string json_line(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// Actions up to and including the last signal action, made concrete.
std::vector<TemplateAction> signal_prefix(const TestTemplate& t) {
  std::size_t end = 0;
  for (std::size_t i = 0; i < t.actions.size(); ++i) {
    if (t.actions[i].verb != Verb::setparam) end = i + 1;
  }
  std::vector<TemplateAction> out;
  for (std::size_t i = 0; i < end; ++i) {
    TemplateAction a = t.actions[i];
    if (a.value == "ANY") continue;
    if (a.value == "TRUE") a.value = "true";
    if (a.value == "FALSE") a.value = "false";
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::pseudorandom: return "pseudorandom";
    case Strategy::constrained: return "constrained";
    case Strategy::model_based: break;
  }
  return "model-based";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::pseudorandom, Strategy::constrained, Strategy::model_based}) {
    if (strategy_name(s) == name) return s;
  }
  throw ConfigError("unknown strategy '" + std::string(name) + "' (valid: pseudorandom, constrained, model-based)");
}

std::vector<QueryResult> model_check(const std::string& model_path, const std::string& queries_path,
                                     std::size_t bound) {
  require_file(model_path, "model");
  require_file(queries_path, "queries");
  const ta::Network net = ta::load_network_file(model_path);
  ta::require_handover_components(net);
  std::vector<QueryResult> out;
  for (ta::ReachabilityQuery& q : ta::load_queries_file(net, queries_path)) {
    QueryResult r{std::move(q), ta::Unreachable{}, std::nullopt};
    r.result = ta::check_ef(net, r.query, bound);
    if (const auto* w = std::get_if<ta::Witness>(&r.result)) r.tmpl = ta::project(net, *w, kProjectionComponents);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Test> generate(const CampaignConfig& config) {
  if (config.count < 1) throw ConfigError("test count must be at least 1");
  switch (config.strategy) {
    case Strategy::pseudorandom: return gen_pseudorandom(config.seed, config.count);
    case Strategy::constrained: {
      require_file(config.constraints, "constraints");
      const auto constraints = load_constraints_file(config.constraints);
      return gen_constrained(config.seed, config.count, constraints);
    }
    case Strategy::model_based: break;
  }
  std::vector<Test> tests;
  for (const QueryResult& r : model_check(config.model, config.queries, config.bound)) {
    if (!r.tmpl) continue;
    Test t = instantiate(*r.tmpl, config.seed + tests.size());
    t.id = test_id(tests.size());
    tests.push_back(std::move(t));
  }
  return tests;
}

void write_suite(const std::vector<Test>& tests, const std::string& dir) {
  fs::create_directories(fs::path(dir) / "tests");
  std::string manifest;
  for (const Test& t : tests) {
    const std::string rel = "tests/" + t.id + ".test";
    write_text_file((fs::path(dir) / rel).string(), serialize_test(t));
    manifest += rel + "\n";
  }
  write_text_file((fs::path(dir) / "manifest.txt").string(), manifest);
}

std::vector<Test> load_manifest(const std::string& path) {
  require_file(path, "manifest");
  const fs::path base = fs::path(path).parent_path();
  std::istringstream in(read_text_file(path));
  std::vector<Test> tests;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const fs::path p = fs::path(line).is_absolute() ? fs::path(line) : base / line;
    try {
      tests.push_back(load_test_file(p.string()));
    } catch (const FormatError& e) {
      throw FormatError(e.line(), p.string() + ": " + e.what());
    }
  }
  if (tests.empty()) throw ConfigError("manifest '" + path + "' lists no tests");
  return tests;
}

CampaignSummary run_tests(const std::vector<Test>& tests, const RunConfig& run, const std::string& out) {
  for (const Test& t : tests) validate_test(t);
  CampaignSummary s;
  std::string jsonl;
  if (!out.empty()) {
    write_suite(tests, out);
    fs::create_directories(fs::path(out) / "logs");
  }
  for (const Test& t : tests) {
    RunResult r = run_test(t, run);
    for (std::size_t m = 0; m < kMonitorCount; ++m) {
      const Verdict v = r.monitors.records[m].verdict;
      ++s.matrix[m][static_cast<std::size_t>(v)];
      s.any_fail = s.any_fail || v == Verdict::F;
    }
    s.coverage = merge(s.coverage, r.coverage);
    if (!out.empty()) {
      write_text_file((fs::path(out) / "logs" / (t.id + ".log")).string(), r.log.serialize());
      jsonl += to_jsonl(r.monitors);
    }
    s.reports.push_back(std::move(r.monitors));
  }
  if (!out.empty()) {
    write_text_file((fs::path(out) / "monitors.jsonl").string(), jsonl);
    write_text_file((fs::path(out) / "coverage.csv").string(), to_csv(s.coverage));
    write_text_file((fs::path(out) / "verdicts.csv").string(), verdicts_csv(s.matrix));
    write_text_file((fs::path(out) / "summary.json").string(), campaign_json(s));
  }
  return s;
}

CampaignSummary run_campaign(const CampaignConfig& config) {
  return run_tests(generate(config), config.run, config.out);
}

std::string verdicts_csv(const VerdictMatrix& m) {
  std::string out = "requirement,P,F,NT,I\n";
  for (std::size_t i = 0; i < kMonitorCount; ++i) {
    out += std::string(monitor_name(kAllMonitors[i]));
    for (std::uint64_t n : m[i]) out += "," + std::to_string(n);
    out += "\n";
  }
  return out;
}

std::string campaign_json(const CampaignSummary& s) {
  nlohmann::ordered_json j;
  j["tests"] = s.reports.size();
  nlohmann::ordered_json verdicts;
  for (std::size_t i = 0; i < kMonitorCount; ++i) {
    nlohmann::ordered_json row;
    for (Verdict v : {Verdict::P, Verdict::F, Verdict::NT, Verdict::I}) {
      row[std::string(verdict_name(v))] = s.matrix[i][static_cast<std::size_t>(v)];
    }
    verdicts[std::string(monitor_name(kAllMonitors[i]))] = std::move(row);
  }
  j["verdicts"] = std::move(verdicts);
  j["any_fail"] = s.any_fail;
  nlohmann::ordered_json pct;
  for (CoverageModel m : kAllCoverageModels) pct[std::string(model_name(m))] = percent(s.coverage, m);
  j["coverage"] = std::move(pct);
  return json_line(j);
}

std::string show_holes(const std::string& report_path, std::string_view model, const std::string& templates_dir,
                       const RunConfig& run) {
  const CoverageModel m = parse_model(model);
  require_file(report_path, "coverage report");
  const CoverageReport report = from_csv(read_text_file(report_path));
  const auto missing = holes(report, m);
  std::ostringstream out;
  if (missing.empty()) {
    out << "no " << model << " holes\n";
    return out.str();
  }
  out << model << " holes (" << missing.size() << " of " << report.cells(m).size() << "):\n";
  for (const std::string& h : missing) out << "  " << h << "\n";
  if (templates_dir.empty()) return out.str();
  if (!fs::is_directory(templates_dir)) throw ConfigError("templates directory '" + templates_dir + "' not found");

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(templates_dir)) {
    if (e.path().extension() == ".template") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    const TestTemplate tmpl = parse_template(read_text_file(f.string()));
    const auto prefix = signal_prefix(tmpl);
    if (prefix.empty()) continue;
    Test t = instantiate(tmpl, kDefaultSeed);
    t.id = f.stem().string();
    const CoverageReport covered = run_test(t, run).coverage;
    const auto& cells = covered.cells(m);
    const auto& before = report.cells(m);
    bool useful = false;
    for (std::size_t i = 0; i < cells.size(); ++i) useful = useful || (before[i] == 0 && cells[i] > 0);
    if (!useful) continue;
    out << "suggested constraints (from " << f.filename().string() << "):\nprefix: ";
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      out << (i ? "; " : "") << verb_name(prefix[i].verb) << ' ' << prefix[i].name;
      if (!prefix[i].value.empty()) out << " = " << prefix[i].value;
    }
    out << "\n";
    return out.str();
  }
  out << "no template covers these holes\n";
  return out.str();
}

CoverageReport merge_reports(const std::vector<std::string>& paths) {
  if (paths.empty()) throw ConfigError("no coverage reports given");
  CoverageReport total;
  for (const std::string& p : paths) {
    require_file(p, "coverage report");
    total = merge(total, from_csv(read_text_file(p)));
  }
  return total;
}

}  // namespace cdv
