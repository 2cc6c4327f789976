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

#include "govsim/report.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "govsim/errors.hpp"
#include "text_util.hpp"

namespace govsim {

namespace {

using nlohmann::json;

constexpr std::string_view kTimelineHeader =
    "t_s,subnet,device,freq_hz,latency_ms,target_ms,feasible,temp_c,alpha,power_w";
constexpr std::string_view kParetoHeader =
    "latency_ms,top1,energy_mj,subnet,device,freq_hz";

json metrics_to_json(const Metrics& m) {
  return json{{"total_energy_j", m.total_energy_j},
              {"post_warmup_energy_j", m.post_warmup_energy_j},
              {"mean_latency_ms", m.mean_latency_ms},
              {"p95_latency_ms", m.p95_latency_ms},
              {"completed_requests", m.completed_requests},
              {"deadline_miss_count", m.deadline_miss_count},
              {"deadline_miss_rate", m.deadline_miss_rate},
              {"mean_served_top1", m.mean_served_top1},
              {"subnet_switch_count", m.subnet_switch_count},
              {"freq_switch_count", m.freq_switch_count}};
}

Metrics metrics_from_json(const json& j) {
  Metrics m;
  m.total_energy_j = j.at("total_energy_j").get<double>();
  m.post_warmup_energy_j = j.at("post_warmup_energy_j").get<double>();
  m.mean_latency_ms = j.at("mean_latency_ms").get<double>();
  m.p95_latency_ms = j.at("p95_latency_ms").get<double>();
  m.completed_requests = j.at("completed_requests").get<std::uint64_t>();
  m.deadline_miss_count = j.at("deadline_miss_count").get<std::uint64_t>();
  m.deadline_miss_rate = j.at("deadline_miss_rate").get<double>();
  m.mean_served_top1 = j.at("mean_served_top1").get<double>();
  m.subnet_switch_count = j.at("subnet_switch_count").get<std::uint64_t>();
  m.freq_switch_count = j.at("freq_switch_count").get<std::uint64_t>();
  return m;
}

json parse_json(std::string_view text, const char* what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw ParseError(std::string(what) + ": malformed JSON");
  return j;
}

}  // namespace

std::string format_double(double value) { return detail::format_double(value); }

double parse_double(std::string_view text, std::string_view what) {
  return detail::parse_double(text, what);
}

std::string timeline_to_csv(const std::vector<TimelineRecord>& timeline,
                            const Platform& platform) {
  std::string out{kTimelineHeader};
  out += '\n';
  for (const auto& rec : timeline) {
    const auto& dev = platform.devices[platform.device_index(rec.point.device)];
    out += detail::format_double(rec.t_s);
    out += ',';
    out += rec.point.subnet;
    out += ',';
    out += rec.point.device;
    out += ',';
    out += detail::format_double(dev.freq_table[rec.point.freq_idx].freq_hz);
    out += ',';
    out += detail::format_double(rec.latency_ms);
    out += ',';
    out += detail::format_double(rec.target_ms);
    out += ',';
    out += rec.feasible ? '1' : '0';
    out += ',';
    out += detail::format_double(rec.temp_c);
    out += ',';
    out += detail::format_double(rec.alpha);
    out += ',';
    out += detail::format_double(rec.power_w);
    out += '\n';
  }
  return out;
}

std::vector<TimelineCsvRow> timeline_rows_from_csv(std::string_view text) {
  auto lines = detail::lines_of(text);
  if (lines.empty() || lines[0] != kTimelineHeader)
    throw ParseError("timeline: expected header '" +
                     std::string(kTimelineHeader) + "'");
  std::vector<TimelineCsvRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = detail::split(lines[i], ',');
    if (f.size() != 10)
      throw ParseError("timeline:" + std::to_string(i + 1) +
                       ": expected 10 fields");
    TimelineCsvRow row;
    row.t_s = detail::parse_double(f[0], "t_s");
    row.subnet = std::string(f[1]);
    row.device = std::string(f[2]);
    row.freq_hz = detail::parse_double(f[3], "freq_hz");
    row.latency_ms = detail::parse_double(f[4], "latency_ms");
    row.target_ms = detail::parse_double(f[5], "target_ms");
    if (f[6] != "0" && f[6] != "1")
      throw ParseError("timeline:" + std::to_string(i + 1) +
                       ": feasible must be 0 or 1");
    row.feasible = f[6] == "1";
    row.temp_c = detail::parse_double(f[7], "temp_c");
    row.alpha = detail::parse_double(f[8], "alpha");
    row.power_w = detail::parse_double(f[9], "power_w");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string pareto_to_csv(const std::vector<ParetoPoint>& frontier,
                          const Platform& platform) {
  std::string out{kParetoHeader};
  out += '\n';
  for (const auto& p : frontier) {
    const auto& dev = platform.devices[platform.device_index(p.point.device)];
    out += detail::format_double(p.latency_ms);
    out += ',';
    out += detail::format_double(p.top1);
    out += ',';
    out += detail::format_double(p.energy_mj);
    out += ',';
    out += p.point.subnet;
    out += ',';
    out += p.point.device;
    out += ',';
    out += detail::format_double(dev.freq_table[p.point.freq_idx].freq_hz);
    out += '\n';
  }
  return out;
}

std::vector<ParetoCsvRow> pareto_rows_from_csv(std::string_view text) {
  auto lines = detail::lines_of(text);
  if (lines.empty() || lines[0] != kParetoHeader)
    throw ParseError("pareto: expected header '" + std::string(kParetoHeader) +
                     "'");
  std::vector<ParetoCsvRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = detail::split(lines[i], ',');
    if (f.size() != 6)
      throw ParseError("pareto:" + std::to_string(i + 1) +
                       ": expected 6 fields");
    rows.push_back({detail::parse_double(f[0], "latency_ms"),
                    detail::parse_double(f[1], "top1"),
                    detail::parse_double(f[2], "energy_mj"), std::string(f[3]),
                    std::string(f[4]), detail::parse_double(f[5], "freq_hz")});
  }
  return rows;
}

std::string summary_to_json_text(std::string_view governor,
                                 std::string_view scenario_name,
                                 const Metrics& metrics) {
  json j{{"governor", governor},
         {"scenario", scenario_name},
         {"metrics", metrics_to_json(metrics)}};
  return j.dump(2) + "\n";
}

Metrics metrics_from_summary_json(std::string_view text) {
  return metrics_from_json(parse_json(text, "summary").at("metrics"));
}

ComparisonReport compare_governors(
    std::vector<std::pair<std::string, Metrics>> per_governor,
    std::string_view reference) {
  std::sort(per_governor.begin(), per_governor.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const Metrics* ref = nullptr;
  for (const auto& [name, m] : per_governor) {
    if (name == reference) ref = &m;
  }
  if (!ref)
    throw ValidationError("comparison",
                          {"reference governor '" + std::string(reference) +
                           "' is not in the run set"});

  ComparisonReport report;
  report.reference = std::string(reference);
  for (const auto& [name, m] : per_governor) {
    GovernorDeltas d;
    d.energy_saving_pct = (ref->total_energy_j - m.total_energy_j) /
                          ref->total_energy_j * 100.0;
    d.mean_latency_reduction_pct = (ref->mean_latency_ms - m.mean_latency_ms) /
                                   ref->mean_latency_ms * 100.0;
    d.miss_rate_diff = m.deadline_miss_rate - ref->deadline_miss_rate;
    d.served_top1_diff = m.mean_served_top1 - ref->mean_served_top1;
    report.metrics.emplace_back(name, m);
    report.deltas.emplace_back(name, d);
  }
  return report;
}

std::string comparison_to_json_text(const ComparisonReport& report) {
  json jmetrics = json::object();
  for (const auto& [name, m] : report.metrics) jmetrics[name] = metrics_to_json(m);
  json jdeltas = json::object();
  for (const auto& [name, d] : report.deltas) {
    jdeltas[name] = {{"energy_saving_pct", d.energy_saving_pct},
                     {"mean_latency_reduction_pct", d.mean_latency_reduction_pct},
                     {"miss_rate_diff", d.miss_rate_diff},
                     {"served_top1_diff", d.served_top1_diff}};
  }
  json j{{"reference", report.reference},
         {"metrics", jmetrics},
         {"deltas", jdeltas}};
  return j.dump(2) + "\n";
}

ComparisonReport comparison_from_json_text(std::string_view text) {
  const json j = parse_json(text, "comparison");
  ComparisonReport report;
  report.reference = j.at("reference").get<std::string>();
  for (const auto& item : j.at("metrics").items())
    report.metrics.emplace_back(item.key(), metrics_from_json(item.value()));
  for (const auto& item : j.at("deltas").items()) {
    GovernorDeltas d;
    d.energy_saving_pct = item.value().at("energy_saving_pct").get<double>();
    d.mean_latency_reduction_pct =
        item.value().at("mean_latency_reduction_pct").get<double>();
    d.miss_rate_diff = item.value().at("miss_rate_diff").get<double>();
    d.served_top1_diff = item.value().at("served_top1_diff").get<double>();
    report.deltas.emplace_back(item.key(), d);
  }
  return report;
}

std::string read_text_file(const std::filesystem::path& path) {
  return detail::read_text_file(path);
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  detail::write_text_file(path, text);
}

}  // namespace govsim
