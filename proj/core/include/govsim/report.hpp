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

// Report emission and re-ingestion. Every emitted file round-trips through
// its loader without loss: floating-point fields use shortest round-trip
// formatting, and identical inputs produce byte-identical files.

#ifndef GOVSIM_REPORT_HPP_
#define GOVSIM_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "govsim/pareto.hpp"
#include "govsim/platform.hpp"
#include "govsim/simulator.hpp"

namespace govsim {

std::string format_double(double value);
double parse_double(std::string_view text, std::string_view what);

// timeline.csv: `t_s,subnet,device,freq_hz,latency_ms,target_ms,feasible,temp_c,alpha,power_w`
struct TimelineCsvRow {
  double t_s = 0.0;
  std::string subnet;
  std::string device;
  double freq_hz = 0.0;
  double latency_ms = 0.0;
  double target_ms = 0.0;
  bool feasible = false;
  double temp_c = 0.0;
  double alpha = 1.0;
  double power_w = 0.0;

  bool operator==(const TimelineCsvRow&) const = default;
};

std::string timeline_to_csv(const std::vector<TimelineRecord>& timeline,
                            const Platform& platform);
std::vector<TimelineCsvRow> timeline_rows_from_csv(std::string_view text);

// pareto.csv: `latency_ms,top1,energy_mj,subnet,device,freq_hz`
std::string pareto_to_csv(const std::vector<ParetoPoint>& frontier,
                          const Platform& platform);
struct ParetoCsvRow {
  double latency_ms = 0.0;
  double top1 = 0.0;
  double energy_mj = 0.0;
  std::string subnet;
  std::string device;
  double freq_hz = 0.0;

  bool operator==(const ParetoCsvRow&) const = default;
};
std::vector<ParetoCsvRow> pareto_rows_from_csv(std::string_view text);

// summary.json: governor, scenario label, metrics object.
std::string summary_to_json_text(std::string_view governor,
                                 std::string_view scenario_name,
                                 const Metrics& metrics);
Metrics metrics_from_summary_json(std::string_view text);

struct GovernorDeltas {
  // (ref - x) / ref * 100; positive means less than the reference.
  double energy_saving_pct = 0.0;
  double mean_latency_reduction_pct = 0.0;
  // Plain signed differences, governor minus reference.
  double miss_rate_diff = 0.0;
  double served_top1_diff = 0.0;

  bool operator==(const GovernorDeltas&) const = default;
};

struct ComparisonReport {
  std::string reference;
  std::vector<std::pair<std::string, Metrics>> metrics;        // sorted by name
  std::vector<std::pair<std::string, GovernorDeltas>> deltas;  // sorted by name
};

// Throws if the reference governor is not in the run set.
ComparisonReport compare_governors(
    std::vector<std::pair<std::string, Metrics>> per_governor,
    std::string_view reference);
std::string comparison_to_json_text(const ComparisonReport& report);
ComparisonReport comparison_from_json_text(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace govsim

#endif  // GOVSIM_REPORT_HPP_
