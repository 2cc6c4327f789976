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

#include "govsim/governor.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "govsim/errors.hpp"

namespace govsim {

std::string_view to_string(Rationale r) {
  switch (r) {
    case Rationale::TargetMet:
      return "target-met";
    case Rationale::BestEffort:
      return "best-effort";
    case Rationale::AccuracyFloorBinds:
      return "accuracy-floor-binds";
    case Rationale::PowerBudgetBinds:
      return "power-budget-binds";
  }
  return "?";
}

namespace {

// Selection order among feasible points: accuracy first, then energy, then
// the lowest frequency, then (device, subnet) for determinism.
bool objective_before(const CandidatePoint& a, const CandidatePoint& b) {
  return std::make_tuple(-a.top1, a.energy_mj, a.point.freq_idx, a.point.device,
                         a.point.subnet) <
         std::make_tuple(-b.top1, b.energy_mj, b.point.freq_idx, b.point.device,
                         b.point.subnet);
}

bool fastest_before(const CandidatePoint& a, const CandidatePoint& b) {
  return std::make_tuple(a.latency_ms, a.energy_mj, a.point.freq_idx,
                         a.point.device, a.point.subnet) <
         std::make_tuple(b.latency_ms, b.energy_mj, b.point.freq_idx,
                         b.point.device, b.point.subnet);
}

Decision to_decision(const CandidatePoint& c, bool feasible, Rationale why) {
  return {c.point, c.latency_ms, c.energy_mj, feasible, why};
}

std::vector<CandidatePoint> filter_feasible(
    const std::vector<CandidatePoint>& points, const PerformanceTarget& target,
    const Constraints& constraints, bool apply_floor, bool apply_budget) {
  std::vector<CandidatePoint> out;
  for (const auto& c : points) {
    if (c.latency_ms > target.latency_ms) continue;
    if (apply_floor && target.min_top1 && c.top1 < *target.min_top1) continue;
    if (apply_budget && constraints.power_budget_w &&
        c.busy_power_w > *constraints.power_budget_w)
      continue;
    out.push_back(c);
  }
  return out;
}

Decision run_fixed_point(const ProfileSet& profiles, const Platform& platform,
                         const PlatformState& state,
                         const PerformanceTarget& target,
                         const FixedChoice& fixed, std::size_t freq_idx) {
  const auto& dev = platform.devices[platform.device_index(fixed.device)];
  if (state.throttled)
    freq_idx = std::min(freq_idx, platform.thermal.throttle_cap);
  const double f = dev.freq_table[freq_idx].freq_hz;
  const double lat = effective_latency_ms(
      profiles.predict_latency_ms(fixed.subnet, fixed.device, f),
      state.contention);
  const double energy =
      profiles.predict_busy_power_w(fixed.subnet, fixed.device, f) * lat;
  const double top1 = profiles.top1(fixed.subnet);
  const bool feasible = lat <= target.latency_ms &&
                        (!target.min_top1 || top1 >= *target.min_top1);
  return {OperatingPoint{fixed.subnet, fixed.device, freq_idx, dev.core_count},
          lat, energy, feasible,
          feasible ? Rationale::TargetMet : Rationale::BestEffort};
}

}  // namespace

std::vector<CandidatePoint> enumerate_points(const ProfileSet& profiles,
                                             const Platform& platform,
                                             const PlatformState& state) {
  std::vector<CandidatePoint> out;
  for (const auto& dev : platform.devices) {
    std::size_t max_idx = dev.max_freq_idx();
    if (state.throttled)
      max_idx = std::min(max_idx, platform.thermal.throttle_cap);
    for (std::size_t k = 0; k <= max_idx; ++k) {
      const double f = dev.freq_table[k].freq_hz;
      for (const auto& subnet : profiles.subnets()) {
        if (!profiles.has_pair(subnet.name, dev.id)) continue;
        const double base = profiles.predict_latency_ms(subnet.name, dev.id, f);
        const double lat = effective_latency_ms(base, state.contention);
        const double busy = profiles.predict_busy_power_w(subnet.name, dev.id, f);
        out.push_back({OperatingPoint{subnet.name, dev.id, k, dev.core_count},
                       base, lat, busy, busy * lat, profiles.top1(subnet.name)});
      }
    }
  }
  return out;
}

std::vector<CandidatePoint> feasible_points(const ProfileSet& profiles,
                                            const Platform& platform,
                                            const PlatformState& state,
                                            const PerformanceTarget& target,
                                            const Constraints& constraints) {
  return filter_feasible(enumerate_points(profiles, platform, state), target,
                         constraints, /*apply_floor=*/true,
                         /*apply_budget=*/true);
}

Decision select_dynamic(const ProfileSet& profiles, const Platform& platform,
                        const PlatformState& state,
                        const PerformanceTarget& target,
                        const Constraints& constraints,
                        const std::optional<OperatingPoint>& prev,
                        double hysteresis_pct) {
  const auto all = enumerate_points(profiles, platform, state);
  if (all.empty())
    throw ValidationError("select_dynamic",
                          {"empty profile set: no operating points to choose from"});

  const auto feasible =
      filter_feasible(all, target, constraints, true, true);
  if (!feasible.empty()) {
    const auto* winner =
        &*std::min_element(feasible.begin(), feasible.end(), objective_before);
    if (prev) {
      // Switch damping: stay on the previous point when it is feasible,
      // ties the winner's accuracy, and costs at most `hysteresis_pct`
      // more energy.
      const double margin = 1.0 + hysteresis_pct / 100.0;
      for (const auto& c : feasible) {
        if (c.point == *prev && c.top1 == winner->top1 &&
            c.energy_mj <= winner->energy_mj * margin) {
          winner = &c;
          break;
        }
      }
    }
    return to_decision(*winner, true, Rationale::TargetMet);
  }

  // Nothing qualifies: fall back to the fastest point available, and name
  // the optional constraint whose removal alone would have restored
  // feasibility.
  Rationale why = Rationale::BestEffort;
  if (target.min_top1 &&
      !filter_feasible(all, target, constraints, false, true).empty()) {
    why = Rationale::AccuracyFloorBinds;
  } else if (constraints.power_budget_w &&
             !filter_feasible(all, target, constraints, true, false).empty()) {
    why = Rationale::PowerBudgetBinds;
  }
  const auto& fastest =
      *std::min_element(all.begin(), all.end(), fastest_before);
  return to_decision(fastest, false, why);
}

FixedChoice choose_fixed_offline(const ProfileSet& profiles,
                                 const Platform& platform,
                                 const PerformanceTarget& target,
                                 std::string_view designated_device) {
  const auto& dev =
      platform.devices[platform.device_index(designated_device)];
  const double f_max = dev.max_freq_hz();

  const SubnetId* best = nullptr;
  double best_top1 = -1.0;
  const SubnetId* fastest = nullptr;
  double fastest_lat = 0.0;
  for (const auto& subnet : profiles.subnets()) {
    if (!profiles.has_pair(subnet.name, dev.id)) continue;
    const double lat = profiles.predict_latency_ms(subnet.name, dev.id, f_max);
    if (!fastest || lat < fastest_lat) {
      fastest = &subnet;
      fastest_lat = lat;
    }
    const double top1 = profiles.top1(subnet.name);
    if (lat <= target.latency_ms && top1 > best_top1) {
      best = &subnet;
      best_top1 = top1;
    }
  }
  if (!best) best = fastest;  // nothing meets the target offline
  if (!best)
    throw ValidationError("choose_fixed_offline",
                          {"no subnet profiled on device '" + dev.id + "'"});
  return {best->name, dev.id};
}

Decision select_performance_baseline(const ProfileSet& profiles,
                                     const Platform& platform,
                                     const PlatformState& state,
                                     const PerformanceTarget& target,
                                     const FixedChoice& fixed) {
  const auto& dev = platform.devices[platform.device_index(fixed.device)];
  return run_fixed_point(profiles, platform, state, target, fixed,
                         dev.max_freq_idx());
}

Decision select_schedutil_baseline(const ProfileSet& profiles,
                                   const Platform& platform,
                                   const PlatformState& state,
                                   const PerformanceTarget& target,
                                   const FixedChoice& fixed,
                                   double utilization) {
  const auto& dev = platform.devices[platform.device_index(fixed.device)];
  const double requested = 1.25 * dev.max_freq_hz() * utilization;
  // Round up to the nearest available level; saturate at the top one.
  std::size_t idx = dev.max_freq_idx();
  for (std::size_t k = 0; k < dev.freq_table.size(); ++k) {
    if (dev.freq_table[k].freq_hz >= requested) {
      idx = k;
      break;
    }
  }
  return run_fixed_point(profiles, platform, state, target, fixed, idx);
}

double energy_per_inference_mj(const ProfileSet& profiles,
                               const Platform& platform,
                               const OperatingPoint& point, double contention) {
  const auto& dev = platform.devices[platform.device_index(point.device)];
  if (point.freq_idx >= dev.freq_table.size())
    throw ValidationError("energy_per_inference",
                          {"frequency index out of range for device '" +
                           point.device + "'"});
  const double f = dev.freq_table[point.freq_idx].freq_hz;
  const double lat = effective_latency_ms(
      profiles.predict_latency_ms(point.subnet, point.device, f), contention);
  return profiles.predict_busy_power_w(point.subnet, point.device, f) * lat;
}

namespace {

class DynamicGovernor final : public Governor {
 public:
  DynamicGovernor(const ProfileSet& profiles, const Platform& platform,
                  const GovernorTunables& tunables)
      : profiles_(profiles), platform_(platform), tunables_(tunables) {}

  Decision decide(const Observation& obs) override {
    Constraints constraints{tunables_.power_budget_w};
    Decision d = select_dynamic(profiles_, platform_, obs.state, obs.target,
                                constraints, prev_, tunables_.hysteresis_pct);
    prev_ = d.point;
    return d;
  }

  std::string_view name() const noexcept override { return "dynamic"; }

 private:
  const ProfileSet& profiles_;
  const Platform& platform_;
  GovernorTunables tunables_;
  std::optional<OperatingPoint> prev_;
};

class PerformanceGovernor final : public Governor {
 public:
  PerformanceGovernor(const ProfileSet& profiles, const Platform& platform,
                      FixedChoice fixed)
      : profiles_(profiles), platform_(platform), fixed_(std::move(fixed)) {}

  Decision decide(const Observation& obs) override {
    return select_performance_baseline(profiles_, platform_, obs.state,
                                       obs.target, fixed_);
  }

  std::string_view name() const noexcept override { return "performance"; }

 private:
  const ProfileSet& profiles_;
  const Platform& platform_;
  FixedChoice fixed_;
};

class SchedutilGovernor final : public Governor {
 public:
  SchedutilGovernor(const ProfileSet& profiles, const Platform& platform,
                    FixedChoice fixed)
      : profiles_(profiles), platform_(platform), fixed_(std::move(fixed)) {}

  Decision decide(const Observation& obs) override {
    return select_schedutil_baseline(profiles_, platform_, obs.state,
                                     obs.target, fixed_, obs.utilization);
  }

  std::string_view name() const noexcept override { return "schedutil"; }

 private:
  const ProfileSet& profiles_;
  const Platform& platform_;
  FixedChoice fixed_;
};

FixedChoice resolve_fixed(const ProfileSet& profiles, const Platform& platform,
                          const PerformanceTarget& initial_target,
                          const GovernorTunables& tunables) {
  const std::string device = tunables.designated_device.value_or(
      platform.devices.empty() ? std::string() : platform.devices.front().id);
  if (tunables.fixed_subnet) {
    if (!profiles.has_pair(*tunables.fixed_subnet, device))
      throw ValidationError("governor configuration",
                            {"fixed_subnet '" + *tunables.fixed_subnet +
                             "' has no profile on device '" + device + "'"});
    return {*tunables.fixed_subnet, device};
  }
  return choose_fixed_offline(profiles, platform, initial_target, device);
}

}  // namespace

const std::vector<std::string>& governor_names() {
  static const std::vector<std::string> names{"dynamic", "performance",
                                              "schedutil"};
  return names;
}

std::unique_ptr<Governor> make_governor(std::string_view name,
                                        const ProfileSet& profiles,
                                        const Platform& platform,
                                        const PerformanceTarget& initial_target,
                                        const GovernorTunables& tunables) {
  if (name == "dynamic")
    return std::make_unique<DynamicGovernor>(profiles, platform, tunables);
  if (name == "performance")
    return std::make_unique<PerformanceGovernor>(
        profiles, platform,
        resolve_fixed(profiles, platform, initial_target, tunables));
  if (name == "schedutil")
    return std::make_unique<SchedutilGovernor>(
        profiles, platform,
        resolve_fixed(profiles, platform, initial_target, tunables));
  std::string valid;
  for (const auto& n : governor_names()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw ValidationError("unknown governor '" + std::string(name) + "'",
                        {"valid governors: " + valid});
}

}  // namespace govsim
