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

// Runtime resource-management layer: picks a joint (sub-network, device,
// frequency) operating point for the current latency target under accuracy,
// power and thermal constraints. Baseline policies modelled on the Linux
// `performance` and `schedutil` cpufreq governors are included for
// comparison runs.

#ifndef GOVSIM_GOVERNOR_HPP_
#define GOVSIM_GOVERNOR_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "govsim/operating_point.hpp"
#include "govsim/platform.hpp"
#include "govsim/profile.hpp"

namespace govsim {

struct PerformanceTarget {
  double latency_ms = 0.0;
  std::optional<double> min_top1;  // accuracy floor, percent

  bool operator==(const PerformanceTarget&) const = default;
};

struct Constraints {
  std::optional<double> power_budget_w;  // cap on a point's busy power

  bool operator==(const Constraints&) const = default;
};

enum class Rationale { TargetMet, BestEffort, AccuracyFloorBinds, PowerBudgetBinds };

std::string_view to_string(Rationale r);

struct Decision {
  OperatingPoint point;
  double predicted_latency_ms = 0.0;
  double predicted_energy_mj = 0.0;
  bool feasible = false;  // feasible implies predicted latency <= target
  Rationale rationale = Rationale::BestEffort;
};

// One priced entry of the operating-point space.
struct CandidatePoint {
  OperatingPoint point;
  double base_latency_ms = 0.0;  // at the table frequency, before contention
  double latency_ms = 0.0;       // contention-adjusted prediction
  double busy_power_w = 0.0;
  double energy_mj = 0.0;
  double top1 = 0.0;
};

// The full operating-point space under the current throttle cap: every
// profiled (subnet, device) pair at every permitted frequency index, priced
// at the live contention factor.
std::vector<CandidatePoint> enumerate_points(const ProfileSet& profiles,
                                             const Platform& platform,
                                             const PlatformState& state);

// Survivors of the target/floor/budget filters. An empty result is valid.
std::vector<CandidatePoint> feasible_points(const ProfileSet& profiles,
                                            const Platform& platform,
                                            const PlatformState& state,
                                            const PerformanceTarget& target,
                                            const Constraints& constraints = {});

// Among feasible points: maximal top-1, then minimal energy per inference,
// then lowest frequency index, then lexicographic (device, subnet). A
// previous point whose accuracy ties the winner and whose energy is within
// `hysteresis_pct` of the winner's is kept to damp switching. With nothing
// feasible, returns the globally fastest point as best effort.
// Throws on an empty ProfileSet.
Decision select_dynamic(const ProfileSet& profiles, const Platform& platform,
                        const PlatformState& state,
                        const PerformanceTarget& target,
                        const Constraints& constraints = {},
                        const std::optional<OperatingPoint>& prev = std::nullopt,
                        double hysteresis_pct = 2.0);

// The statically designated (subnet, device) both baselines run.
struct FixedChoice {
  std::string subnet;
  std::string device;
};

// Offline rule for the static-pruning analogue: on the designated device at
// maximum frequency and no contention, the highest-accuracy subnet meeting
// the target; if none does, the fastest one.
FixedChoice choose_fixed_offline(const ProfileSet& profiles,
                                 const Platform& platform,
                                 const PerformanceTarget& target,
                                 std::string_view designated_device);

// Fixed subnet at maximum frequency (throttle cap permitting); feasibility
// re-evaluated against the live contention factor.
Decision select_performance_baseline(const ProfileSet& profiles,
                                     const Platform& platform,
                                     const PlatformState& state,
                                     const PerformanceTarget& target,
                                     const FixedChoice& fixed);

// Frequency law adapted from the mainline schedutil governor: request
// 1.25 * f_max * utilization, rounded up to the nearest available level,
// then throttle-capped. The subnet never changes.
Decision select_schedutil_baseline(const ProfileSet& profiles,
                                   const Platform& platform,
                                   const PlatformState& state,
                                   const PerformanceTarget& target,
                                   const FixedChoice& fixed,
                                   double utilization);

// busy_power * effective latency; W * ms = mJ.
double energy_per_inference_mj(const ProfileSet& profiles,
                               const Platform& platform,
                               const OperatingPoint& point, double contention);

struct GovernorTunables {
  double hysteresis_pct = 2.0;
  std::optional<std::string> designated_device;  // default: first device
  std::optional<std::string> fixed_subnet;       // overrides the offline rule
  std::optional<double> power_budget_w;
};

struct Observation {
  const PlatformState& state;
  PerformanceTarget target;
  double utilization = 1.0;  // busy fraction of the previous control period
};

// Stateful wrapper around the pure selection functions; the dynamic policy
// threads its own `prev` through successive decisions.
class Governor {
 public:
  virtual ~Governor() = default;
  virtual Decision decide(const Observation& obs) = 0;
  virtual std::string_view name() const noexcept = 0;
};

const std::vector<std::string>& governor_names();

// Valid names: "dynamic", "performance", "schedutil". The baselines fix
// their subnet offline from `initial_target`. Throws ValidationError naming
// the valid governors on an unknown name.
std::unique_ptr<Governor> make_governor(std::string_view name,
                                        const ProfileSet& profiles,
                                        const Platform& platform,
                                        const PerformanceTarget& initial_target,
                                        const GovernorTunables& tunables = {});

}  // namespace govsim

#endif  // GOVSIM_GOVERNOR_HPP_
