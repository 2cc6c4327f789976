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

// The subcommand implementations behind the govsim CLI. Kept in the core
// library so they can be driven directly from tests; the binary only parses
// arguments into these configs.

#ifndef GOVSIM_COMMANDS_HPP_
#define GOVSIM_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace govsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;  // I/O failures
inline constexpr int kExitUsage = 2;    // validation / configuration errors

enum class ReportKind { Summary, Timeline, Pareto };

struct RunConfig {
  std::filesystem::path scenario_path;
  std::vector<std::string> governors;
  std::filesystem::path out_dir;
  std::set<ReportKind> reports{ReportKind::Summary, ReportKind::Timeline};
  std::optional<std::uint64_t> seed;  // overrides a synthetic source's seed
  std::string reference = "performance";
  bool quiet = false;
};

struct ParetoConfig {
  std::filesystem::path scenario_path;
  std::filesystem::path out_dir;
  std::optional<double> alpha;  // default: the scenario's initial alpha
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct GenProfilesConfig {
  std::filesystem::path spec_path;
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  bool quiet = false;
};

// Each returns a process exit status; diagnostics go to `err`, progress to
// `out` (suppressed by quiet).
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_pareto(const ParetoConfig& config, std::ostream& out, std::ostream& err);
int cmd_gen_profiles(const GenProfilesConfig& config, std::ostream& out,
                     std::ostream& err);

}  // namespace govsim::cli

#endif  // GOVSIM_COMMANDS_HPP_
