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

#include "govsim/profile.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "govsim/errors.hpp"
#include "text_util.hpp"

namespace govsim {

namespace {

constexpr std::string_view kProfileHeader =
    "subnet,device,freq_hz,latency_ms,busy_power_w";
constexpr std::string_view kAccuracyHeader = "subnet,top1";

std::vector<std::string> structural_issues(
    const std::vector<ProfileEntry>& entries,
    const std::vector<AccuracyEntry>& accuracies) {
  std::vector<std::string> issues;

  std::set<std::tuple<std::string, std::string, double>> keys;
  std::set<std::string> profiled_subnets;
  for (const auto& e : entries) {
    profiled_subnets.insert(e.subnet);
    if (!(e.latency_ms > 0.0))
      issues.push_back("non-positive latency for (" + e.subnet + ", " +
                       e.device + ", " + detail::format_double(e.freq_hz) + ")");
    if (!(e.busy_power_w > 0.0))
      issues.push_back("non-positive busy power for (" + e.subnet + ", " +
                       e.device + ", " + detail::format_double(e.freq_hz) + ")");
    if (!keys.insert({e.subnet, e.device, e.freq_hz}).second)
      issues.push_back("duplicate profile row (" + e.subnet + ", " + e.device +
                       ", " + detail::format_double(e.freq_hz) + ")");
  }

  std::set<std::string> acc_subnets;
  for (const auto& a : accuracies) {
    if (!acc_subnets.insert(a.subnet).second)
      issues.push_back("duplicate accuracy row for subnet '" + a.subnet + "'");
    if (a.top1 < 0.0 || a.top1 > 100.0)
      issues.push_back("top1 out of [0, 100] for subnet '" + a.subnet + "'");
  }
  for (const auto& s : profiled_subnets) {
    if (!acc_subnets.count(s))
      issues.push_back("missing accuracy for subnet '" + s + "'");
  }
  return issues;
}

}  // namespace

ProfileSet::ProfileSet(std::vector<ProfileEntry> entries,
                       std::vector<AccuracyEntry> accuracies,
                       std::string provenance, std::vector<SubnetId> subnets)
    : entries_(std::move(entries)),
      accuracies_(std::move(accuracies)),
      subnets_(std::move(subnets)),
      provenance_(std::move(provenance)) {
  auto issues = structural_issues(entries_, accuracies_);
  if (subnets_.empty()) {
    for (const auto& a : accuracies_) subnets_.push_back({a.subnet, ""});
  } else {
    std::set<std::string> names;
    for (const auto& s : subnets_) {
      if (!names.insert(s.name).second)
        issues.push_back("duplicate subnet id '" + s.name + "'");
    }
  }
  if (!issues.empty())
    throw ValidationError("invalid profile set (" + provenance_ + ")", issues);

  for (const auto& e : entries_) {
    by_pair_[{e.subnet, e.device}].push_back(
        {e.freq_hz, e.latency_ms, e.busy_power_w});
  }
  for (auto& [key, points] : by_pair_) {
    std::sort(points.begin(), points.end(),
              [](const FreqPoint& a, const FreqPoint& b) {
                return a.freq_hz < b.freq_hz;
              });
  }
  for (const auto& a : accuracies_) top1_[a.subnet] = a.top1;
}

bool ProfileSet::has_subnet(std::string_view subnet) const noexcept {
  return top1_.find(subnet) != top1_.end();
}

bool ProfileSet::has_pair(std::string_view subnet,
                          std::string_view device) const noexcept {
  return by_pair_.find(PairKey{std::string(subnet), std::string(device)}) !=
         by_pair_.end();
}

double ProfileSet::top1(std::string_view subnet) const {
  auto it = top1_.find(subnet);
  if (it == top1_.end())
    throw ValidationError("unknown subnet",
                          {"no accuracy for subnet '" + std::string(subnet) + "'"});
  return it->second;
}

const std::vector<ProfileSet::FreqPoint>& ProfileSet::points_for(
    std::string_view subnet, std::string_view device) const {
  auto it = by_pair_.find(PairKey{std::string(subnet), std::string(device)});
  if (it == by_pair_.end())
    throw ValidationError(
        "unknown profile pair",
        {"no profile for (" + std::string(subnet) + ", " + std::string(device) + ")"});
  return it->second;
}

double ProfileSet::predict_latency_ms(std::string_view subnet,
                                      std::string_view device,
                                      double freq_hz) const {
  const auto& pts = points_for(subnet, device);
  // Exact hit returns the measured value verbatim.
  for (const auto& p : pts) {
    if (p.freq_hz == freq_hz) return p.latency_ms;
  }
  // Outside the profiled range: constant cycle count through the nearest
  // endpoint, L * f_nearest / f_query.
  if (freq_hz < pts.front().freq_hz)
    return pts.front().latency_ms * (pts.front().freq_hz / freq_hz);
  if (freq_hz > pts.back().freq_hz)
    return pts.back().latency_ms * (pts.back().freq_hz / freq_hz);
  // Between breakpoints: linear in 1/f.
  auto hi = std::lower_bound(pts.begin(), pts.end(), freq_hz,
                             [](const FreqPoint& p, double f) {
                               return p.freq_hz < f;
                             });
  auto lo = hi - 1;
  const double u = 1.0 / freq_hz;
  const double u_lo = 1.0 / lo->freq_hz;
  const double u_hi = 1.0 / hi->freq_hz;
  const double t = (u - u_lo) / (u_hi - u_lo);
  return lo->latency_ms + t * (hi->latency_ms - lo->latency_ms);
}

double ProfileSet::predict_busy_power_w(std::string_view subnet,
                                        std::string_view device,
                                        double freq_hz) const {
  const auto& pts = points_for(subnet, device);
  for (const auto& p : pts) {
    if (p.freq_hz == freq_hz) return p.busy_power_w;
  }
  if (freq_hz <= pts.front().freq_hz) return pts.front().busy_power_w;
  if (freq_hz >= pts.back().freq_hz) return pts.back().busy_power_w;
  auto hi = std::lower_bound(pts.begin(), pts.end(), freq_hz,
                             [](const FreqPoint& p, double f) {
                               return p.freq_hz < f;
                             });
  auto lo = hi - 1;
  const double t = (freq_hz - lo->freq_hz) / (hi->freq_hz - lo->freq_hz);
  return lo->busy_power_w + t * (hi->busy_power_w - lo->busy_power_w);
}

std::vector<std::string> ProfileSet::validate_against(
    const Platform& platform) const {
  std::vector<std::string> issues;
  std::set<std::pair<std::string, double>> reported;
  for (const auto& e : entries_) {
    const DeviceSpec* dev = platform.find_device(e.device);
    if (!dev) {
      if (reported.insert({e.device, -1.0}).second)
        issues.push_back("unknown device '" + e.device + "'");
      continue;
    }
    const bool known_freq =
        std::any_of(dev->freq_table.begin(), dev->freq_table.end(),
                    [&](const FreqLevel& l) { return l.freq_hz == e.freq_hz; });
    if (!known_freq && reported.insert({e.device, e.freq_hz}).second)
      issues.push_back("frequency " + detail::format_double(e.freq_hz) +
                       " not in the table of device '" + e.device + "'");
  }
  return issues;
}

ProfileSet ProfileSet::load(const std::filesystem::path& profiles_csv,
                            const std::filesystem::path& accuracy_csv,
                            const Platform& platform) {
  const std::string ptext = detail::read_text_file(profiles_csv);
  const std::string atext = detail::read_text_file(accuracy_csv);

  std::vector<ProfileEntry> entries;
  {
    auto lines = detail::lines_of(ptext);
    if (lines.empty() || lines[0] != kProfileHeader)
      throw ParseError(profiles_csv.string() + ": expected header '" +
                       std::string(kProfileHeader) + "'");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      auto f = detail::split(lines[i], ',');
      if (f.size() != 5)
        throw ParseError(profiles_csv.string() + ":" + std::to_string(i + 1) +
                         ": expected 5 fields, got " + std::to_string(f.size()));
      entries.push_back({std::string(f[0]), std::string(f[1]),
                         detail::parse_double(f[2], "freq_hz"),
                         detail::parse_double(f[3], "latency_ms"),
                         detail::parse_double(f[4], "busy_power_w")});
    }
  }

  std::vector<AccuracyEntry> accuracies;
  {
    auto lines = detail::lines_of(atext);
    if (lines.empty() || lines[0] != kAccuracyHeader)
      throw ParseError(accuracy_csv.string() + ": expected header '" +
                       std::string(kAccuracyHeader) + "'");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      auto f = detail::split(lines[i], ',');
      if (f.size() != 2)
        throw ParseError(accuracy_csv.string() + ":" + std::to_string(i + 1) +
                         ": expected 2 fields, got " + std::to_string(f.size()));
      accuracies.push_back({std::string(f[0]), detail::parse_double(f[1], "top1")});
    }
  }

  auto issues = structural_issues(entries, accuracies);
  ProfileSet set;
  if (issues.empty()) {
    set = ProfileSet(std::move(entries), std::move(accuracies),
                     profiles_csv.string());
    issues = set.validate_against(platform);
  }
  if (!issues.empty())
    throw ValidationError("invalid profile set (" + profiles_csv.string() + ")",
                          issues);
  return set;
}

void ProfileSet::save(const std::filesystem::path& profiles_csv,
                      const std::filesystem::path& accuracy_csv) const {
  std::string p{kProfileHeader};
  p += '\n';
  for (const auto& e : entries_) {
    p += e.subnet + ',' + e.device + ',' + detail::format_double(e.freq_hz) +
         ',' + detail::format_double(e.latency_ms) + ',' +
         detail::format_double(e.busy_power_w) + '\n';
  }
  std::string a{kAccuracyHeader};
  a += '\n';
  for (const auto& acc : accuracies_) {
    a += acc.subnet + ',' + detail::format_double(acc.top1) + '\n';
  }
  detail::write_text_file(profiles_csv, p);
  detail::write_text_file(accuracy_csv, a);
}

}  // namespace govsim
