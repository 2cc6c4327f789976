/* Copyright 2026 The govsim Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "govsim/commands.hpp"

namespace {

using govsim::cli::GenProfilesConfig;
using govsim::cli::ParetoConfig;
using govsim::cli::ReportKind;
using govsim::cli::RunConfig;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "govsim - joint sub-network/DVFS governor simulation for latency-"
      "constrained inference on heterogeneous embedded platforms"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir = "out";
  bool quiet = false;
  app.add_flag_callback("--quiet", [&] { quiet = true; },
                        "Suppress progress output");
  auto* seed_opt = app.add_option(
      "--seed", seed, "Seed for synthetic profiles (overrides the scenario)");
  app.add_option("--out", out_dir, "Output directory");

  auto* sim = app.add_subcommand("simulate", "Replay a scenario per governor");
  sim->fallthrough();
  std::string sim_scenario;
  std::vector<std::string> sim_governors;
  std::vector<std::string> sim_reports;
  std::string sim_reference = "performance";
  sim->add_option("--scenario", sim_scenario, "Scenario JSON file")->required();
  sim->add_option("--governor", sim_governors,
                  "Governor to run (repeatable): dynamic, performance, schedutil")
      ->required();
  sim->add_option("--report", sim_reports,
                  "Reports to write (repeatable): summary, timeline, pareto");
  sim->add_option("--reference", sim_reference,
                  "Reference governor for comparison deltas");

  auto* par = app.add_subcommand("pareto", "Export the operating-point frontier");
  par->fallthrough();
  std::string par_scenario;
  double par_alpha = 0.0;
  bool par_alpha_given = false;
  par->add_option("--scenario", par_scenario, "Scenario JSON file")->required();
  auto* alpha_opt =
      par->add_option("--alpha", par_alpha, "Contention factor in (0, 1]");

  auto* gen = app.add_subcommand("gen-profiles", "Generate synthetic profiles");
  gen->fallthrough();
  std::string gen_spec;
  gen->add_option("--spec", gen_spec, "Generator spec JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? govsim::cli::kExitOk : govsim::cli::kExitUsage;
  }
  seed_given = seed_opt->count() > 0;
  par_alpha_given = alpha_opt->count() > 0;

  if (sim->parsed()) {
    RunConfig config;
    config.scenario_path = sim_scenario;
    config.governors = sim_governors;
    config.out_dir = out_dir;
    config.reference = sim_reference;
    config.quiet = quiet;
    if (seed_given) config.seed = seed;
    if (!sim_reports.empty()) {
      config.reports.clear();
      for (const auto& r : sim_reports) {
        if (r == "summary") {
          config.reports.insert(ReportKind::Summary);
        } else if (r == "timeline") {
          config.reports.insert(ReportKind::Timeline);
        } else if (r == "pareto") {
          config.reports.insert(ReportKind::Pareto);
        } else {
          std::cerr << "simulate: unknown report '" << r
                    << "' (expected summary, timeline or pareto)\n";
          return govsim::cli::kExitUsage;
        }
      }
    }
    return govsim::cli::cmd_simulate(config, std::cout, std::cerr);
  }
  if (par->parsed()) {
    ParetoConfig config;
    config.scenario_path = par_scenario;
    config.out_dir = out_dir;
    config.quiet = quiet;
    if (seed_given) config.seed = seed;
    if (par_alpha_given) config.alpha = par_alpha;
    return govsim::cli::cmd_pareto(config, std::cout, std::cerr);
  }
  GenProfilesConfig config;
  config.spec_path = gen_spec;
  config.out_dir = out_dir;
  config.seed = seed;
  config.quiet = quiet;
  return govsim::cli::cmd_gen_profiles(config, std::cout, std::cerr);
}
