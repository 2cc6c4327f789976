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

#include "govsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include "govsim/errors.hpp"

namespace govsim {

namespace {

// Absorbs float-grid noise in time and deadline comparisons; far below any
// modelled quantity.
constexpr double kTimeEps = 1e-9;

GeneratorSpec to_generator_spec(const Scenario& scenario,
                                const SyntheticSource& src) {
  GeneratorSpec spec;
  spec.subnet_count = src.subnet_count;
  spec.base_latency_ms = src.base_latency_ms;
  spec.busy_power_w = src.busy_power_w;
  spec.accuracy_pct = src.accuracy_pct;
  for (const auto& dev : scenario.platform.devices) {
    GeneratorDevice g;
    g.id = dev.id;
    for (const auto& lvl : dev.freq_table) g.freqs_hz.push_back(lvl.freq_hz);
    if (auto it = src.device_scales.find(dev.id); it != src.device_scales.end())
      g.latency_scale = it->second;
    spec.devices.push_back(std::move(g));
  }
  return spec;
}

}  // namespace

void apply_event(LiveConditions& live, const Event& event) {
  std::visit(
      [&live](const auto& change) {
        using T = std::decay_t<decltype(change)>;
        if constexpr (std::is_same_v<T, TargetChange>) {
          live.target = change.target;
        } else if constexpr (std::is_same_v<T, ContentionSet>) {
          live.alpha = change.alpha;
        } else {
          live.thermal.t_ambient_c = change.t_ambient_c;
        }
      },
      event.change);
}

std::vector<std::string> Scenario::collect_issues() const {
  std::vector<std::string> issues = platform.collect_issues();
  if (!(duration_s > 0.0)) issues.push_back("duration_s must be > 0");
  if (!(control_period_s > 0.0)) {
    issues.push_back("control_period_s must be > 0");
  } else if (control_period_s > platform.thermal.time_constant_s()) {
    issues.push_back(
        "control_period_s exceeds the thermal stability guard r_th*c_th");
  }
  if (request_model == RequestModel::Periodic && !(request_period_s > 0.0))
    issues.push_back("periodic requests need request_period_s > 0");
  if (!(initial_target.latency_ms > 0.0))
    issues.push_back("initial target latency_ms must be > 0");
  if (initial_target.min_top1 &&
      (*initial_target.min_top1 < 0.0 || *initial_target.min_top1 > 100.0))
    issues.push_back("initial target min_top1 out of [0, 100]");
  if (!(initial_alpha > 0.0) || initial_alpha > 1.0)
    issues.push_back("initial alpha must be in (0, 1]");
  if (tunables.hysteresis_pct < 0.0)
    issues.push_back("hysteresis_pct must be >= 0");
  if (tunables.power_budget_w && !(*tunables.power_budget_w > 0.0))
    issues.push_back("power_budget_w must be > 0");

  double prev_at = 0.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& ev = events[i];
    const std::string where = "event[" + std::to_string(i) + "]: ";
    if (ev.at_s < 0.0) issues.push_back(where + "at_s must be >= 0");
    if (ev.at_s < prev_at) issues.push_back(where + "events not sorted by time");
    prev_at = ev.at_s;
    std::visit(
        [&](const auto& change) {
          using T = std::decay_t<decltype(change)>;
          if constexpr (std::is_same_v<T, TargetChange>) {
            if (!(change.target.latency_ms > 0.0))
              issues.push_back(where + "target latency_ms must be > 0");
            if (change.target.min_top1 && (*change.target.min_top1 < 0.0 ||
                                           *change.target.min_top1 > 100.0))
              issues.push_back(where + "min_top1 out of [0, 100]");
          } else if constexpr (std::is_same_v<T, ContentionSet>) {
            if (!(change.alpha > 0.0) || change.alpha > 1.0)
              issues.push_back(where + "alpha must be in (0, 1]");
          } else {
            if (!(change.t_ambient_c > -273.15) ||
                !std::isfinite(change.t_ambient_c))
              issues.push_back(where + "t_ambient_c not physical");
          }
        },
        ev.change);
  }

  if (const auto* src = std::get_if<SyntheticSource>(&profiles)) {
    for (const auto& [id, scale] : src->device_scales) {
      if (!platform.find_device(id))
        issues.push_back("device_scales names unknown device '" + id + "'");
      if (!(scale > 0.0))
        issues.push_back("device_scales['" + id + "'] must be > 0");
    }
    if (platform.collect_issues().empty()) {
      for (const auto& issue :
           to_generator_spec(*this, *src).collect_issues())
        issues.push_back("profiles: " + issue);
    }
  }
  return issues;
}

void Scenario::validate() const {
  auto issues = collect_issues();
  if (!issues.empty())
    throw ValidationError("invalid scenario '" + name + "'", issues);
}

ProfileSet make_profiles(const Scenario& scenario,
                         std::optional<std::uint64_t> seed_override) {
  if (const auto* files = std::get_if<ProfileFiles>(&scenario.profiles)) {
    return ProfileSet::load(files->profiles_csv, files->accuracy_csv,
                            scenario.platform);
  }
  const auto& src = std::get<SyntheticSource>(scenario.profiles);
  return generate_profiles(seed_override.value_or(src.seed),
                           to_generator_spec(scenario, src));
}

namespace {

struct InFlight {
  std::size_t device = 0;     // index into platform.devices
  std::string subnet;
  double work_cycles = 0.0;   // remaining
  double start_s = 0.0;
  double target_at_start = 0.0;
  double alpha_at_start = 1.0;
  std::size_t freq_at_start = 0;
  bool feasible_at_start = false;
  bool env_changed = false;
};

}  // namespace

SimResult run_simulation(const Scenario& scenario, const ProfileSet& profiles,
                         Governor& governor) {
  scenario.validate();
  const Platform& pf = scenario.platform;
  const bool periodic = scenario.request_model == RequestModel::Periodic;

  LiveConditions live{scenario.initial_target, scenario.initial_alpha,
                      pf.thermal};
  PlatformState st = PlatformState::initial(pf);
  st.contention = live.alpha;

  std::vector<TimelineRecord> timeline;
  std::vector<TimelineRecord> period_requests;
  std::optional<InFlight> fly;
  std::size_t next_event = 0;
  std::uint64_t arrivals = 0;
  double util_prev = 1.0;

  // Period boundaries are always computed as k * dt, never accumulated, so
  // they are bit-identical wherever they are recomputed (records, replays).
  const double dt_nominal = scenario.control_period_s;
  for (std::uint64_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt_nominal;
    if (t >= scenario.duration_s - kTimeEps) break;
    const double t_end = std::min(static_cast<double>(k + 1) * dt_nominal,
                                  scenario.duration_s);
    const double dt = t_end - t;

    // 1. Due events take effect at the period boundary.
    while (next_event < scenario.events.size() &&
           scenario.events[next_event].at_s <= t + kTimeEps) {
      apply_event(live, scenario.events[next_event]);
      ++next_event;
    }
    st.contention = live.alpha;

    // 2. Thermal throttling with hysteresis.
    st = update_throttle(st, live.thermal);

    // 3. The governor sees the observed state and picks a point.
    const Decision decision =
        governor.decide(Observation{st, live.target, util_prev});
    if (decision.feasible &&
        decision.predicted_latency_ms >
            live.target.latency_ms * (1.0 + 1e-12) + kTimeEps)
      throw SimulationError("governor returned feasible=true above the target");

    // 4. Apply the hardware knobs: the chosen device gets the chosen level,
    // idle devices park at their lowest level, and a device still running a
    // request keeps its level until the work moves on.
    const std::size_t dec_dev = pf.device_index(decision.point.device);
    for (std::size_t i = 0; i < pf.devices.size(); ++i) {
      if (i == dec_dev) {
        st.freq_idx[i] = decision.point.freq_idx;
      } else if (!(fly && fly->device == i)) {
        st.freq_idx[i] = 0;
      }
    }
    if (st.throttled) {
      for (auto& idx : st.freq_idx)
        idx = std::min(idx, live.thermal.throttle_cap);
    }

    if (fly && (live.target.latency_ms != fly->target_at_start ||
                st.contention != fly->alpha_at_start ||
                st.freq_idx[fly->device] != fly->freq_at_start)) {
      fly->env_changed = true;
    }

    // 5. Execute the request stream for this period. Work is tracked in
    // cycles so a request spanning frequency changes pro-rates its
    // remainder in 1/f terms.
    period_requests.clear();
    double tau = t;
    double busy_s = 0.0;
    double busy_extra_j = 0.0;  // busy-above-idle energy
    auto idle_of = [&](std::size_t i) {
      return pf.devices[i].freq_table[st.freq_idx[i]].idle_power_w;
    };
    auto start_request = [&](double at) {
      const auto& dev = pf.devices[dec_dev];
      const double f = dev.freq_table[st.freq_idx[dec_dev]].freq_hz;
      const double base_ms =
          profiles.predict_latency_ms(decision.point.subnet, dev.id, f);
      fly = InFlight{dec_dev,
                     decision.point.subnet,
                     base_ms / 1000.0 * f,
                     at,
                     live.target.latency_ms,
                     st.contention,
                     st.freq_idx[dec_dev],
                     decision.feasible,
                     false};
    };
    while (tau < t_end) {
      if (!fly) {
        if (periodic) {
          const double arrival =
              static_cast<double>(arrivals) * scenario.request_period_s;
          if (arrival >= t_end) {
            tau = t_end;
            break;
          }
          if (arrival > tau) tau = arrival;
          ++arrivals;
        }
        start_request(tau);
        continue;
      }
      const auto& dev = pf.devices[fly->device];
      const double f = dev.freq_table[st.freq_idx[fly->device]].freq_hz;
      const double rate = f * st.contention;  // cycles per second
      const double time_to_finish = fly->work_cycles / rate;
      const double busy_p =
          profiles.predict_busy_power_w(fly->subnet, dev.id, f);
      const double idle_p = idle_of(fly->device);
      const double seg = std::min(time_to_finish, t_end - tau);
      busy_s += seg;
      busy_extra_j += (std::max(busy_p, idle_p) - idle_p) * seg;
      if (time_to_finish <= t_end - tau) {
        const double tc = tau + time_to_finish;
        const double latency_ms = (tc - fly->start_s) * 1000.0;
        TimelineRecord rec;
        rec.t_s = tc;
        rec.point = OperatingPoint{fly->subnet, dev.id,
                                   st.freq_idx[fly->device], dev.core_count};
        rec.latency_ms = latency_ms;
        rec.target_ms = live.target.latency_ms;
        rec.feasible = fly->feasible_at_start;
        rec.temp_c = st.temperature_c;
        rec.alpha = st.contention;
        rec.power_w = platform_power_w(
            pf, st, ActiveLoad{fly->device, std::max(busy_p, idle_p)});
        rec.is_request = true;
        rec.served_top1 = profiles.top1(fly->subnet);
        rec.env_changed = fly->env_changed;
        period_requests.push_back(std::move(rec));
        fly.reset();
        tau = tc;
      } else {
        fly->work_cycles -= rate * seg;
        tau = t_end;
      }
    }

    // 6. Rectangular energy accounting; the period-average power is also the
    // thermal input, so one integrand drives both.
    double idle_sum = 0.0;
    for (std::size_t i = 0; i < pf.devices.size(); ++i) idle_sum += idle_of(i);
    const double avg_power_w = idle_sum + busy_extra_j / dt;

    TimelineRecord prec;
    prec.t_s = t;
    prec.point = decision.point;
    prec.latency_ms = decision.predicted_latency_ms;
    prec.target_ms = live.target.latency_ms;
    prec.feasible = decision.feasible;
    prec.temp_c = st.temperature_c;
    prec.alpha = st.contention;
    prec.power_w = avg_power_w;
    prec.dt_s = dt;
    prec.served_top1 = profiles.top1(decision.point.subnet);
    timeline.push_back(std::move(prec));
    for (auto& rec : period_requests) timeline.push_back(std::move(rec));

    st.temperature_c =
        step_thermal(st.temperature_c, avg_power_w, dt, live.thermal);
    util_prev = busy_s / dt;
  }

  return {summarize(timeline), std::move(timeline)};
}

Metrics summarize(const std::vector<TimelineRecord>& timeline, double warmup_s) {
  if (timeline.empty())
    throw SimulationError("summarize: empty timeline");

  Metrics m;
  std::vector<double> latencies;
  double latency_sum = 0.0;
  double top1_sum = 0.0;
  const TimelineRecord* prev_period = nullptr;
  for (const auto& rec : timeline) {
    if (rec.is_request) {
      ++m.completed_requests;
      latencies.push_back(rec.latency_ms);
      latency_sum += rec.latency_ms;
      top1_sum += rec.served_top1;
      if (rec.latency_ms > rec.target_ms + kTimeEps)
        ++m.deadline_miss_count;
    } else {
      m.total_energy_j += rec.power_w * rec.dt_s;
      if (rec.t_s >= warmup_s - 1e-9)
        m.post_warmup_energy_j += rec.power_w * rec.dt_s;
      if (prev_period) {
        if (rec.point.subnet != prev_period->point.subnet)
          ++m.subnet_switch_count;
        if (rec.point.device != prev_period->point.device ||
            rec.point.freq_idx != prev_period->point.freq_idx)
          ++m.freq_switch_count;
      }
      prev_period = &rec;
    }
  }
  if (m.completed_requests > 0) {
    const auto n = latencies.size();
    m.mean_latency_ms = latency_sum / static_cast<double>(n);
    std::sort(latencies.begin(), latencies.end());
    const std::size_t rank =
        static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
    m.p95_latency_ms = latencies[std::max<std::size_t>(rank, 1) - 1];
    m.deadline_miss_rate = static_cast<double>(m.deadline_miss_count) /
                           static_cast<double>(n);
    m.mean_served_top1 = top1_sum / static_cast<double>(n);
  }
  return m;
}

SimResult run(const Scenario& scenario, std::string_view governor_name,
              std::optional<std::uint64_t> seed_override) {
  scenario.validate();
  const ProfileSet profiles = make_profiles(scenario, seed_override);
  auto governor = make_governor(governor_name, profiles, scenario.platform,
                                scenario.initial_target, scenario.tunables);
  return run_simulation(scenario, profiles, *governor);
}

}  // namespace govsim
