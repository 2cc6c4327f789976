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

// Deterministic fixed-step engine that replays a scenario (target changes,
// contention episodes, ambient shifts, inference request stream) against a
// governor and accounts latency, energy, accuracy and deadline misses.

#ifndef GOVSIM_SIMULATOR_HPP_
#define GOVSIM_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "govsim/governor.hpp"
#include "govsim/operating_point.hpp"
#include "govsim/platform.hpp"
#include "govsim/profile.hpp"

namespace govsim {

struct TargetChange {
  PerformanceTarget target;
};
struct ContentionSet {
  double alpha = 1.0;
};
struct AmbientSet {
  double t_ambient_c = 25.0;
};

struct Event {
  double at_s = 0.0;
  std::variant<TargetChange, ContentionSet, AmbientSet> change;
};

enum class RequestModel { BackToBack, Periodic };

struct ProfileFiles {
  std::filesystem::path profiles_csv;
  std::filesystem::path accuracy_csv;
};

// Synthetic profiles derived from the scenario's own platform tables.
struct SyntheticSource {
  std::uint64_t seed = 0;
  int subnet_count = 0;
  std::array<double, 2> base_latency_ms{5.0, 30.0};
  std::array<double, 2> busy_power_w{1.0, 6.0};
  std::array<double, 2> accuracy_pct{60.0, 80.0};
  std::map<std::string, double> device_scales;  // per-device latency scale
};

using ProfileSource = std::variant<ProfileFiles, SyntheticSource>;

struct Scenario {
  std::string name;  // report label, usually the file stem
  double duration_s = 0.0;
  double control_period_s = 0.05;
  RequestModel request_model = RequestModel::BackToBack;
  double request_period_s = 0.0;  // Periodic only
  PerformanceTarget initial_target;
  double initial_alpha = 1.0;
  Platform platform;
  ProfileSource profiles;
  GovernorTunables tunables;
  std::vector<Event> events;  // ascending at_s; applied at period boundaries

  std::vector<std::string> collect_issues() const;
  void validate() const;  // throws ValidationError listing every issue
};

// The scenario-driven knobs events act on.
struct LiveConditions {
  PerformanceTarget target;
  double alpha = 1.0;
  ThermalParams thermal;
};

void apply_event(LiveConditions& live, const Event& event);

// One row per control period (decision + period-average power) and one per
// completed request (measured latency). The CSV emission keeps the first
// eight-field shape for both; the trailing members are in-memory only.
struct TimelineRecord {
  double t_s = 0.0;
  OperatingPoint point;
  double latency_ms = 0.0;  // request: measured; period: predicted
  double target_ms = 0.0;
  bool feasible = false;
  double temp_c = 0.0;
  double alpha = 1.0;
  double power_w = 0.0;  // period: average over the step; request: instantaneous

  bool is_request = false;
  double dt_s = 0.0;          // period rows: integration step
  double served_top1 = 0.0;   // request rows: accuracy of the serving subnet
  bool env_changed = false;   // conditions moved while the request was in flight
};

struct Metrics {
  double total_energy_j = 0.0;
  double post_warmup_energy_j = 0.0;  // periods starting at or after the cutoff
  double mean_latency_ms = 0.0;
  double p95_latency_ms = 0.0;
  std::uint64_t completed_requests = 0;
  std::uint64_t deadline_miss_count = 0;
  double deadline_miss_rate = 0.0;
  double mean_served_top1 = 0.0;
  std::uint64_t subnet_switch_count = 0;
  std::uint64_t freq_switch_count = 0;

  bool operator==(const Metrics&) const = default;
};

inline constexpr double kWarmupCutoffS = 5.0;

// Aggregates a timeline. Energy is the rectangular sum of period rows'
// power * dt in timeline order, so it matches the run's accounting exactly.
// Throws on an empty timeline.
Metrics summarize(const std::vector<TimelineRecord>& timeline,
                  double warmup_s = kWarmupCutoffS);

struct SimResult {
  Metrics metrics;
  std::vector<TimelineRecord> timeline;
};

// Loads or generates the scenario's profile set (validated against its
// platform). A synthetic source's seed can be overridden.
ProfileSet make_profiles(const Scenario& scenario,
                         std::optional<std::uint64_t> seed_override = std::nullopt);

SimResult run_simulation(const Scenario& scenario, const ProfileSet& profiles,
                         Governor& governor);

// Convenience wrapper: profiles + governor by name + run.
SimResult run(const Scenario& scenario, std::string_view governor_name,
              std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace govsim

#endif  // GOVSIM_SIMULATOR_HPP_
