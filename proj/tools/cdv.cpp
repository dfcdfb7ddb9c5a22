#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "cdv/campaign.hpp"
#include "cdv/testgen.hpp"

namespace fs = std::filesystem;
using namespace cdv;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CDV_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("CDV_SEED is not an unsigned integer: '") + env + "'");
  }
  return kDefaultSeed;
}

struct Options {
  std::string strategy = "pseudorandom";
  std::size_t count = 100;
  std::optional<std::uint64_t> seed;
  std::string constraints, model = "models/handover.ta", queries = "models/requirements.q";
  std::size_t bound = 5000;
  std::uint64_t horizon = kDefaultHorizon;
  std::string out, manifest, layout;
};

void add_generation(CLI::App* app, Options& o) {
  app->add_option("--strategy", o.strategy, "pseudorandom | constrained | model-based");
  app->add_option("--count", o.count, "number of tests");
  app->add_option("--seed", o.seed, "campaign seed (falls back to CDV_SEED)");
  app->add_option("--constraints", o.constraints, "constraint file");
  app->add_option("--model", o.model, "timed-automata model");
  app->add_option("--queries", o.queries, "reachability queries");
  app->add_option("--bound", o.bound, "model-checking depth bound");
}

CampaignConfig make_config(const Options& o) {
  CampaignConfig c;
  c.strategy = parse_strategy(o.strategy);
  c.count = o.count;
  c.seed = resolve_seed(o.seed);
  c.constraints = o.constraints;
  c.model = o.model;
  c.queries = o.queries;
  c.bound = o.bound;
  c.run.horizon = o.horizon;
  if (!o.layout.empty()) c.run.layout = load_layout_file(o.layout);
  c.out = o.out;
  return c;
}

void print_matrix(const CampaignSummary& s) {
  std::cout << verdicts_csv(s.matrix);
  for (CoverageModel m : kAllCoverageModels) {
    std::cout << model_name(m) << " coverage " << percent(s.coverage, m) << "%\n";
  }
}

int cmd_check(const Options& o) {
  const auto results = model_check(o.model, o.queries, o.bound);
  const ta::Network net = ta::load_network_file(o.model);
  if (!o.out.empty()) fs::create_directories(o.out);
  for (const QueryResult& r : results) {
    std::cout << r.query.label << "\t" << r.query.text << "\t";
    if (const auto* w = std::get_if<ta::Witness>(&r.result)) {
      std::cout << "T\twitness " << w->transitions.size() << " steps\n";
      if (!o.out.empty()) {
        write_text_file((fs::path(o.out) / (r.query.label + ".template")).string(), serialize_template(*r.tmpl));
        write_text_file((fs::path(o.out) / (r.query.label + ".witness")).string(), ta::format_witness(net, *w));
      }
    } else {
      const auto& u = std::get<ta::Unreachable>(r.result);
      std::cout << (u.exhausted ? "Unreachable" : "Unreachable within bound") << "\t" << u.visited << " states, depth "
                << u.depth << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage-driven verification testbench for a robot-to-human handover controller"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "generate a test suite");
  add_generation(gen, o);
  gen->add_option("--out", o.out, "output directory")->required();

  auto* run = app.add_subcommand("run", "generate (or load) and run a campaign");
  add_generation(run, o);
  run->add_option("--manifest", o.manifest, "run the tests listed in a manifest instead of generating");
  run->add_option("--horizon", o.horizon, "simulation horizon in ticks");
  run->add_option("--layout", o.layout, "world layout file");
  run->add_option("--out", o.out, "output directory");

  auto* check = app.add_subcommand("check", "model-check reachability queries");
  check->add_option("--model", o.model, "timed-automata model");
  check->add_option("--queries", o.queries, "reachability queries");
  check->add_option("--bound", o.bound, "depth bound");
  check->add_option("--out", o.out, "directory for templates and witnesses");

  std::string report_path, cov_model = "block", templates;
  auto* hl = app.add_subcommand("holes", "list coverage holes");
  hl->add_option("report", report_path, "coverage.csv")->required();
  hl->add_option("coverage-model", cov_model, "block | state | transition | path | assertion | situation");
  hl->add_option("--templates", templates, "directory of model-based templates for suggestions");

  std::vector<std::string> inputs;
  auto* rep = app.add_subcommand("report", "merge coverage reports");
  rep->add_option("reports", inputs, "coverage.csv files")->required();
  rep->add_option("--out", o.out, "directory for the merged report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      const auto tests = generate(make_config(o));
      write_suite(tests, o.out);
      std::cout << tests.size() << " tests written to " << o.out << "\n";
      return 0;
    }
    if (*run) {
      CampaignSummary s;
      if (!o.manifest.empty()) {
        CampaignConfig c = make_config(o);
        s = run_tests(load_manifest(o.manifest), c.run, c.out);
      } else {
        s = run_campaign(make_config(o));
      }
      print_matrix(s);
      return s.any_fail ? 1 : 0;
    }
    if (*check) return cmd_check(o);
    if (*hl) {
      std::cout << show_holes(report_path, cov_model, templates);
      return 0;
    }
    if (*rep) {
      const CoverageReport merged = merge_reports(inputs);
      if (!o.out.empty()) {
        fs::create_directories(o.out);
        write_text_file((fs::path(o.out) / "coverage.csv").string(), to_csv(merged));
        write_text_file((fs::path(o.out) / "summary.json").string(), summary_json(merged));
      }
      std::cout << summary_json(merged);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "cdv: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
