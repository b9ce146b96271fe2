#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rdlab/cli/commands.hpp"
#include "rdlab/rdlab.hpp"

namespace {

using namespace rdlab;
using namespace rdlab::cli;

struct Common {
  std::string config;
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "Configuration file (JSON)");
  app->add_option("--scenario", c.scenario, "Built-in scenario name");
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("overrides", c.overrides, "Dotted-path overrides, e.g. scheme.dt=1e-4");
}

json user_document(const Common& c, json fallback = json::object()) {
  json doc = c.config.empty() ? std::move(fallback) : load_config_file(c.config);
  if (!c.scenario.empty()) doc["scenario"] = c.scenario;
  if (c.seed) doc["seed"] = *c.seed;
  apply_overrides(doc, c.overrides);
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rdlab: reaction-diffusion systems, structural checks and proof-functional diagnostics"};
  app.require_subcommand(1);
  CommandOptions opts;
  app.add_option("--out", opts.out, "Output root directory (default: $RDLAB_OUTPUT_ROOT)");
  app.add_option("--workers", opts.workers, "Parallel runs for sweep (default: hardware threads)");

  Common common;
  std::vector<std::string> axes;
  std::string report_dir;
  auto* check = app.add_subcommand("check", "Check the structural assumptions of a system");
  auto* run = app.add_subcommand("run", "Integrate a configuration and write its artifacts");
  auto* sweep = app.add_subcommand("sweep", "Run the Cartesian product of parameter axes");
  auto* report = app.add_subcommand("report", "Summarize a run directory");
  auto* gn = app.add_subcommand("gn-test", "Modified Gagliardo-Nirenberg property suite");
  auto* energy = app.add_subcommand("energy-test", "L^p-energy inequality monitor");
  for (auto* sub : {check, run, sweep, gn, energy}) {
    add_common(sub, common);
    sub->add_option("--out", opts.out, "Output root directory");
    sub->add_option("--workers", opts.workers, "Parallel runs for sweep");
  }
  sweep->add_option("--axis", axes, "Axis path=v1,v2,... (repeatable)")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  report->add_option("dir", report_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (report->parsed()) return cmd_report(report_dir, std::cout);
    if (gn->parsed()) {
      json fallback{{"scenario", "heat-mms"}, {"grid", {{"n", 512}}}};
      return cmd_gn_test(resolve_config(user_document(common, fallback)), std::cout);
    }
    const RunConfig cfg = resolve_config(user_document(common));
    if (check->parsed()) return cmd_check(cfg, opts, std::cout);
    if (run->parsed()) return cmd_run(cfg, opts, std::cout);
    if (energy->parsed()) return cmd_energy_test(cfg, std::cout);
    if (sweep->parsed()) {
      std::vector<SweepAxis> parsed;
      for (const auto& a : axes) parsed.push_back(parse_axis(a));
      return cmd_sweep(user_document(common), parsed, opts, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "crash: " << e.what() << '\n';
    return exit_crash;
  }
  return exit_crash;
}
