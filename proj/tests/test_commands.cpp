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

#include <sstream>
#include <string>

#include <doctest.h>

#include "govsim/commands.hpp"
#include "govsim/report.hpp"
#include "test_util.hpp"

using namespace govsim;
using namespace govsim::cli;

namespace {

// Small self-contained scenario written next to the test's temp output.
void write_mini_scenario(const std::filesystem::path& dir) {
  write_text_file(dir / "mini.json", R"({
    "duration_s": 5.0,
    "control_period_s": 0.05,
    "target": {"latency_ms": 25.0},
    "platform": {
      "devices": [
        {"id": "cpu0", "kind": "cpu", "cores": 2,
         "freqs": [{"hz": 1e9, "volts": 0.7, "idle_w": 0.2},
                   {"hz": 2e9, "volts": 1.0, "idle_w": 0.4}]}
      ],
      "thermal": {"r_th": 2.0, "c_th": 10.0, "t_ambient": 25.0,
                  "t_throttle": 85.0, "t_release": 80.0, "throttle_cap": 0}
    },
    "profiles": {"seed": 5, "subnets": 3,
                 "base_latency_ms": [4.0, 20.0],
                 "busy_power_w": [1.0, 4.0],
                 "accuracy_pct": [60.0, 75.0]}
  })");
}

void write_pair_scenario(const std::filesystem::path& dir) {
  write_text_file(dir / "pair_profiles.csv",
                  "subnet,device,freq_hz,latency_ms,busy_power_w\n"
                  "fast,cpu0,1e+09,10,2\n"
                  "slow,cpu0,1e+09,20,2\n");
  write_text_file(dir / "pair_accuracy.csv", "subnet,top1\nfast,70\nslow,60\n");
  write_text_file(dir / "pair.json", R"({
    "duration_s": 1.0,
    "target": {"latency_ms": 25.0},
    "platform": {
      "devices": [
        {"id": "cpu0", "kind": "cpu", "cores": 1,
         "freqs": [{"hz": 1e9, "volts": 0.7, "idle_w": 0.2}]}
      ],
      "thermal": {"r_th": 2.0, "c_th": 10.0, "t_ambient": 25.0,
                  "t_throttle": 85.0, "t_release": 80.0, "throttle_cap": 0}
    },
    "profiles": {"file": "pair_profiles.csv", "accuracy": "pair_accuracy.csv"}
  })");
}

}  // namespace

TEST_CASE("cmd_simulate: happy path writes summary and timeline") {
  testutil::TempDir tmp;
  write_mini_scenario(tmp.path());
  RunConfig config;
  config.scenario_path = tmp.path() / "mini.json";
  config.governors = {"dynamic"};
  config.out_dir = tmp.path() / "r";
  config.quiet = true;
  std::ostringstream out, err;
  CHECK(cmd_simulate(config, out, err) == kExitOk);
  CHECK(std::filesystem::exists(tmp.path() / "r" / "dynamic" / "summary.json"));
  CHECK(std::filesystem::exists(tmp.path() / "r" / "dynamic" / "timeline.csv"));
  CHECK_FALSE(std::filesystem::exists(tmp.path() / "r" / "comparison.json"));
}

TEST_CASE("cmd_simulate: report selection controls the emitted files") {
  testutil::TempDir tmp;
  write_mini_scenario(tmp.path());
  RunConfig config;
  config.scenario_path = tmp.path() / "mini.json";
  config.governors = {"dynamic"};
  config.out_dir = tmp.path() / "r";
  config.reports = {ReportKind::Summary, ReportKind::Pareto};
  config.quiet = true;
  std::ostringstream out, err;
  CHECK(cmd_simulate(config, out, err) == kExitOk);
  CHECK(std::filesystem::exists(tmp.path() / "r" / "dynamic" / "summary.json"));
  CHECK(std::filesystem::exists(tmp.path() / "r" / "dynamic" / "pareto.csv"));
  CHECK_FALSE(
      std::filesystem::exists(tmp.path() / "r" / "dynamic" / "timeline.csv"));
  const auto rows = pareto_rows_from_csv(
      read_text_file(tmp.path() / "r" / "dynamic" / "pareto.csv"));
  CHECK(!rows.empty());
}

TEST_CASE("cmd_simulate: unknown governor exits 2 and lists valid names") {
  testutil::TempDir tmp;
  write_mini_scenario(tmp.path());
  RunConfig config;
  config.scenario_path = tmp.path() / "mini.json";
  config.governors = {"turbo"};
  config.out_dir = tmp.path() / "r";
  std::ostringstream out, err;
  CHECK(cmd_simulate(config, out, err) == kExitUsage);
  const std::string msg = err.str();
  CHECK(msg.find("turbo") != std::string::npos);
  CHECK(msg.find("dynamic") != std::string::npos);
  CHECK(msg.find("performance") != std::string::npos);
  CHECK(msg.find("schedutil") != std::string::npos);
}

TEST_CASE("cmd_simulate: unreadable scenario is a usage error") {
  testutil::TempDir tmp;
  RunConfig config;
  config.scenario_path = tmp.path() / "missing.json";
  config.governors = {"dynamic"};
  config.out_dir = tmp.path() / "r";
  std::ostringstream out, err;
  CHECK(cmd_simulate(config, out, err) == kExitUsage);
}

TEST_CASE("cmd_simulate: three governors produce a comparison") {
  testutil::TempDir tmp;
  write_mini_scenario(tmp.path());
  RunConfig config;
  config.scenario_path = tmp.path() / "mini.json";
  config.governors = {"dynamic", "performance", "schedutil"};
  config.out_dir = tmp.path() / "r";
  config.quiet = true;
  std::ostringstream out, err;
  REQUIRE(cmd_simulate(config, out, err) == kExitOk);

  for (const char* g : {"dynamic", "performance", "schedutil"}) {
    CHECK(std::filesystem::exists(tmp.path() / "r" / g / "summary.json"));
    CHECK(std::filesystem::exists(tmp.path() / "r" / g / "timeline.csv"));
  }
  const ComparisonReport report = comparison_from_json_text(
      read_text_file(tmp.path() / "r" / "comparison.json"));
  CHECK(report.reference == "performance");

  // Deltas recomputed from the emitted summaries must match exactly.
  std::vector<std::pair<std::string, Metrics>> per_gov;
  for (const char* g : {"dynamic", "performance", "schedutil"}) {
    per_gov.emplace_back(g, metrics_from_summary_json(read_text_file(
                                tmp.path() / "r" / g / "summary.json")));
  }
  const ComparisonReport recomputed = compare_governors(per_gov, "performance");
  REQUIRE(recomputed.deltas.size() == report.deltas.size());
  for (std::size_t i = 0; i < report.deltas.size(); ++i) {
    CHECK(report.deltas[i].first == recomputed.deltas[i].first);
    CHECK(report.deltas[i].second == recomputed.deltas[i].second);
  }
}

TEST_CASE("cmd_simulate: comparison needs the reference governor") {
  testutil::TempDir tmp;
  write_mini_scenario(tmp.path());
  RunConfig config;
  config.scenario_path = tmp.path() / "mini.json";
  config.governors = {"dynamic", "schedutil"};  // reference defaults to performance
  config.out_dir = tmp.path() / "r";
  std::ostringstream out, err;
  CHECK(cmd_simulate(config, out, err) == kExitUsage);

  config.reference = "dynamic";
  std::ostringstream out2, err2;
  CHECK(cmd_simulate(config, out2, err2) == kExitOk);
}

TEST_CASE("cmd_pareto: dominated pair exports one row") {
  testutil::TempDir tmp;
  write_pair_scenario(tmp.path());
  ParetoConfig config;
  config.scenario_path = tmp.path() / "pair.json";
  config.out_dir = tmp.path() / "r";
  config.quiet = true;
  std::ostringstream out, err;
  REQUIRE(cmd_pareto(config, out, err) == kExitOk);
  const auto rows =
      pareto_rows_from_csv(read_text_file(tmp.path() / "r" / "pareto.csv"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].subnet == "fast");
}

TEST_CASE("cmd_pareto: halving alpha doubles latency, keeps accuracy") {
  testutil::TempDir tmp;
  write_mini_scenario(tmp.path());
  ParetoConfig config;
  config.scenario_path = tmp.path() / "mini.json";
  config.quiet = true;

  config.out_dir = tmp.path() / "a1";
  std::ostringstream out, err;
  REQUIRE(cmd_pareto(config, out, err) == kExitOk);
  config.out_dir = tmp.path() / "a05";
  config.alpha = 0.5;
  REQUIRE(cmd_pareto(config, out, err) == kExitOk);

  const auto full =
      pareto_rows_from_csv(read_text_file(tmp.path() / "a1" / "pareto.csv"));
  const auto half =
      pareto_rows_from_csv(read_text_file(tmp.path() / "a05" / "pareto.csv"));
  REQUIRE(!full.empty());
  REQUIRE(full.size() == half.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(half[i].subnet == full[i].subnet);
    CHECK(half[i].device == full[i].device);
    CHECK(half[i].top1 == full[i].top1);
    CHECK(half[i].latency_ms == 2.0 * full[i].latency_ms);
  }
  // Out-of-range alpha is rejected.
  config.alpha = 1.5;
  std::ostringstream out2, err2;
  CHECK(cmd_pareto(config, out2, err2) == kExitUsage);
}

TEST_CASE("cmd_gen_profiles: deterministic, loadable output") {
  testutil::TempDir tmp;
  GenProfilesConfig config;
  config.spec_path = testutil::scenario_dir() / "gen_basic.json";
  config.seed = 1;
  config.quiet = true;

  config.out_dir = tmp.path() / "g1";
  std::ostringstream out, err;
  REQUIRE(cmd_gen_profiles(config, out, err) == kExitOk);
  config.out_dir = tmp.path() / "g2";
  REQUIRE(cmd_gen_profiles(config, out, err) == kExitOk);

  // Byte-identical across invocations with the same seed.
  CHECK(read_text_file(tmp.path() / "g1" / "profiles.csv") ==
        read_text_file(tmp.path() / "g2" / "profiles.csv"));
  CHECK(read_text_file(tmp.path() / "g1" / "accuracy.csv") ==
        read_text_file(tmp.path() / "g2" / "accuracy.csv"));

  // Loadable with zero violations against a matching platform.
  Platform p;
  p.devices.push_back(
      {"cpu0", DeviceKind::CpuCluster, 2, {{1e9, 0.7, 0.2}, {2e9, 1.0, 0.4}}});
  p.devices.push_back(
      {"gpu0", DeviceKind::Gpu, 1, {{8e8, 0.7, 0.2}, {1.2e9, 0.9, 0.4}}});
  p.thermal = {2.0, 10.0, 25.0, 85.0, 80.0, 0};
  const ProfileSet set = ProfileSet::load(tmp.path() / "g1" / "profiles.csv",
                                          tmp.path() / "g1" / "accuracy.csv", p);
  CHECK(set.entries().size() == 3 * 4);
  CHECK(set.validate_against(p).empty());
}

TEST_CASE("cmd_gen_profiles: zero subnets exits 2") {
  testutil::TempDir tmp;
  write_text_file(tmp.path() / "zero.json",
                  R"({"subnets": 0, "devices": [{"id": "d", "freqs_hz": [1e9]}]})");
  GenProfilesConfig config;
  config.spec_path = tmp.path() / "zero.json";
  config.out_dir = tmp.path() / "g";
  config.seed = 1;
  std::ostringstream out, err;
  CHECK(cmd_gen_profiles(config, out, err) == kExitUsage);
}
