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

#include "govsim/commands.hpp"

#include <algorithm>
#include <future>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

#include "govsim/errors.hpp"
#include "govsim/pareto.hpp"
#include "govsim/report.hpp"
#include "govsim/scenario_io.hpp"
#include "govsim/simulator.hpp"

namespace govsim::cli {

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitUsage;
  if (dynamic_cast<const ValidationError*>(&e)) return kExitUsage;
  return kExitRuntime;
}

std::string valid_governor_list() {
  std::string names;
  for (const auto& n : governor_names()) {
    if (!names.empty()) names += ", ";
    names += n;
  }
  return names;
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.governors.empty())
      throw ValidationError("simulate", {"no governor requested"});
    std::set<std::string> unique;
    for (const auto& name : config.governors) {
      if (std::find(governor_names().begin(), governor_names().end(), name) ==
          governor_names().end())
        throw ValidationError(
            "unknown governor '" + name + "'",
            {"valid governors: " + valid_governor_list()});
      if (!unique.insert(name).second)
        throw ValidationError("simulate",
                              {"governor '" + name + "' requested twice"});
    }
    if (config.governors.size() > 1 && !unique.count(config.reference))
      throw ValidationError(
          "simulate", {"reference governor '" + config.reference +
                       "' must be in the run set for a comparison"});

    const Scenario scenario = load_scenario(config.scenario_path);
    const ProfileSet profiles = make_profiles(scenario, config.seed);

    // Surface configuration problems before any run starts.
    std::vector<std::unique_ptr<Governor>> governors;
    for (const auto& name : config.governors)
      governors.push_back(make_governor(name, profiles, scenario.platform,
                                        scenario.initial_target,
                                        scenario.tunables));

    // Runs are independent; only report writing is serialized below.
    std::vector<SimResult> results(governors.size());
    if (governors.size() > 1) {
      std::vector<std::future<SimResult>> futures;
      for (auto& gov : governors) {
        futures.push_back(
            std::async(std::launch::async, [&scenario, &profiles, g = gov.get()] {
              return run_simulation(scenario, profiles, *g);
            }));
      }
      for (std::size_t i = 0; i < futures.size(); ++i)
        results[i] = futures[i].get();
    } else {
      results[0] = run_simulation(scenario, profiles, *governors[0]);
    }

    namespace fs = std::filesystem;
    std::vector<std::pair<std::string, Metrics>> per_governor;
    for (std::size_t i = 0; i < governors.size(); ++i) {
      const std::string& name = config.governors[i];
      const fs::path dir = config.out_dir / name;
      fs::create_directories(dir);
      if (config.reports.count(ReportKind::Summary))
        write_text_file(dir / "summary.json",
                        summary_to_json_text(name, scenario.name,
                                             results[i].metrics));
      if (config.reports.count(ReportKind::Timeline))
        write_text_file(dir / "timeline.csv",
                        timeline_to_csv(results[i].timeline, scenario.platform));
      if (config.reports.count(ReportKind::Pareto))
        write_text_file(dir / "pareto.csv",
                        pareto_to_csv(build_pareto(profiles, scenario.platform,
                                                   scenario.initial_alpha),
                                      scenario.platform));
      per_governor.emplace_back(name, results[i].metrics);
      if (!config.quiet)
        out << name << ": energy "
            << format_double(results[i].metrics.total_energy_j) << " J, miss rate "
            << format_double(results[i].metrics.deadline_miss_rate) << ", mean "
            << format_double(results[i].metrics.mean_latency_ms) << " ms\n";
    }

    if (per_governor.size() > 1) {
      const auto report = compare_governors(per_governor, config.reference);
      write_text_file(config.out_dir / "comparison.json",
                      comparison_to_json_text(report));
      if (!config.quiet)
        out << "comparison vs " << config.reference << " written\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "simulate: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_pareto(const ParetoConfig& config, std::ostream& out,
               std::ostream& err) {
  try {
    const Scenario scenario = load_scenario(config.scenario_path);
    const ProfileSet profiles = make_profiles(scenario, config.seed);
    const double alpha = config.alpha.value_or(scenario.initial_alpha);
    if (!(alpha > 0.0) || alpha > 1.0)
      throw ValidationError("pareto", {"alpha must be in (0, 1]"});
    const auto frontier = build_pareto(profiles, scenario.platform, alpha);
    std::filesystem::create_directories(config.out_dir);
    write_text_file(config.out_dir / "pareto.csv",
                    pareto_to_csv(frontier, scenario.platform));
    if (!config.quiet)
      out << "pareto: " << frontier.size() << " points at alpha "
          << format_double(alpha) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "pareto: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_gen_profiles(const GenProfilesConfig& config, std::ostream& out,
                     std::ostream& err) {
  try {
    const GeneratorSpec spec = load_generator_spec(config.spec_path);
    const ProfileSet set = generate_profiles(config.seed, spec);
    std::filesystem::create_directories(config.out_dir);
    set.save(config.out_dir / "profiles.csv", config.out_dir / "accuracy.csv");
    if (!config.quiet)
      out << "generated " << set.entries().size() << " profile rows for "
          << set.subnets().size() << " subnets\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "gen-profiles: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace govsim::cli
