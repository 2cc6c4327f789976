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

#include "govsim/platform.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "govsim/errors.hpp"

namespace govsim {

std::string_view to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::CpuCluster:
      return "cpu";
    case DeviceKind::Gpu:
      return "gpu";
  }
  return "?";
}

const DeviceSpec* Platform::find_device(std::string_view id) const noexcept {
  for (const auto& dev : devices) {
    if (dev.id == id) return &dev;
  }
  return nullptr;
}

std::size_t Platform::device_index(std::string_view id) const {
  for (std::size_t i = 0; i < devices.size(); ++i) {
    if (devices[i].id == id) return i;
  }
  throw ValidationError("unknown device",
                        {"device '" + std::string(id) + "' not in platform"});
}

std::vector<std::string> Platform::collect_issues() const {
  std::vector<std::string> issues;
  if (devices.empty()) issues.push_back("platform has no devices");

  std::set<std::string> seen;
  std::size_t min_levels = SIZE_MAX;
  for (const auto& dev : devices) {
    const std::string where = "device '" + dev.id + "': ";
    if (dev.id.empty()) issues.push_back("device with empty id");
    if (!seen.insert(dev.id).second)
      issues.push_back("duplicate device id '" + dev.id + "'");
    if (dev.core_count < 1) issues.push_back(where + "core_count must be >= 1");
    if (dev.kind == DeviceKind::Gpu && dev.core_count != 1)
      issues.push_back(where + "gpu core_count is fixed at 1");
    if (dev.freq_table.empty()) {
      issues.push_back(where + "empty frequency table");
      continue;
    }
    min_levels = std::min(min_levels, dev.freq_table.size());
    for (std::size_t k = 0; k < dev.freq_table.size(); ++k) {
      const auto& lvl = dev.freq_table[k];
      if (!(lvl.freq_hz > 0.0))
        issues.push_back(where + "non-positive frequency at level " +
                         std::to_string(k));
      if (!(lvl.voltage_v > 0.0))
        issues.push_back(where + "non-positive voltage at level " +
                         std::to_string(k));
      if (lvl.idle_power_w < 0.0)
        issues.push_back(where + "negative idle power at level " +
                         std::to_string(k));
      if (k > 0) {
        if (!(lvl.freq_hz > dev.freq_table[k - 1].freq_hz))
          issues.push_back(where + "frequencies not strictly increasing at level " +
                           std::to_string(k));
        if (lvl.voltage_v < dev.freq_table[k - 1].voltage_v)
          issues.push_back(where + "voltage decreases at level " +
                           std::to_string(k));
      }
    }
  }

  if (!(thermal.r_th > 0.0)) issues.push_back("thermal: r_th must be > 0");
  if (!(thermal.c_th > 0.0)) issues.push_back("thermal: c_th must be > 0");
  if (!(thermal.t_release_c < thermal.t_throttle_c))
    issues.push_back("thermal: t_release must be below t_throttle");
  if (min_levels != SIZE_MAX && thermal.throttle_cap >= min_levels)
    issues.push_back("thermal: throttle_cap " +
                     std::to_string(thermal.throttle_cap) +
                     " is out of range for a device with " +
                     std::to_string(min_levels) + " levels");
  return issues;
}

void Platform::validate() const {
  auto issues = collect_issues();
  if (!issues.empty()) throw ValidationError("invalid platform", issues);
}

PlatformState PlatformState::initial(const Platform& platform) {
  PlatformState st;
  st.freq_idx.assign(platform.devices.size(), 0);
  st.temperature_c = platform.thermal.t_ambient_c;
  st.contention = 1.0;
  st.throttled = false;
  return st;
}

double step_thermal(double temperature_c, double power_w, double dt_s,
                    const ThermalParams& params) {
  if (!(dt_s > 0.0))
    throw SimulationError("step_thermal: dt_s must be positive");
  if (dt_s > params.time_constant_s())
    throw SimulationError(
        "step_thermal: dt_s exceeds the stability guard r_th*c_th; "
        "lower the scenario timestep");
  if (power_w < 0.0)
    throw SimulationError("step_thermal: negative power");
  const double dT = dt_s * (power_w / params.c_th -
                            (temperature_c - params.t_ambient_c) /
                                (params.r_th * params.c_th));
  const double next = temperature_c + dT;
  if (!std::isfinite(next))
    throw SimulationError("step_thermal: non-finite temperature");
  return next;
}

PlatformState update_throttle(PlatformState state, const ThermalParams& params) {
  if (state.temperature_c >= params.t_throttle_c) {
    state.throttled = true;
  } else if (state.throttled && state.temperature_c <= params.t_release_c) {
    state.throttled = false;
  }
  if (state.throttled) {
    for (auto& idx : state.freq_idx) idx = std::min(idx, params.throttle_cap);
  }
  return state;
}

double effective_latency_ms(double base_ms, double contention) {
  if (!(base_ms > 0.0))
    throw SimulationError("effective_latency: base latency must be positive");
  if (!(contention > 0.0) || contention > 1.0)
    throw SimulationError("effective_latency: contention must be in (0, 1]");
  return base_ms / contention;
}

double platform_power_w(const Platform& platform, const PlatformState& state,
                        const std::optional<ActiveLoad>& active) {
  double total = 0.0;
  for (std::size_t i = 0; i < platform.devices.size(); ++i) {
    const auto& table = platform.devices[i].freq_table;
    const double idle = table[std::min(state.freq_idx[i], table.size() - 1)]
                            .idle_power_w;
    if (active && active->device_index == i) {
      if (active->busy_power_w < 0.0)
        throw SimulationError("platform_power: negative busy power");
      total += std::max(active->busy_power_w, idle);
    } else {
      total += idle;
    }
  }
  return total;
}

}  // namespace govsim
