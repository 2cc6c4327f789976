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

// Device layer: heterogeneous compute units with DVFS tables, a lumped-RC
// thermal model with throttling hysteresis, and a scalar contention model.

#ifndef GOVSIM_PLATFORM_HPP_
#define GOVSIM_PLATFORM_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace govsim {

enum class DeviceKind { CpuCluster, Gpu };

std::string_view to_string(DeviceKind kind);

// One DVFS operating level of a device.
struct FreqLevel {
  double freq_hz = 0.0;
  double voltage_v = 0.0;
  double idle_power_w = 0.0;

  bool operator==(const FreqLevel&) const = default;
};

struct DeviceSpec {
  std::string id;
  DeviceKind kind = DeviceKind::CpuCluster;
  int core_count = 1;
  std::vector<FreqLevel> freq_table;  // ascending frequency

  double max_freq_hz() const { return freq_table.back().freq_hz; }
  std::size_t max_freq_idx() const { return freq_table.size() - 1; }

  bool operator==(const DeviceSpec&) const = default;
};

// Single lumped RC node for the whole SoC. Throttling is a hard frequency
// index cap between t_throttle_c (on) and t_release_c (off).
struct ThermalParams {
  double r_th = 2.0;           // K/W
  double c_th = 10.0;          // J/K
  double t_ambient_c = 25.0;
  double t_throttle_c = 85.0;
  double t_release_c = 80.0;
  std::size_t throttle_cap = 0;  // frequency index cap while throttled

  double time_constant_s() const { return r_th * c_th; }

  bool operator==(const ThermalParams&) const = default;
};

struct Platform {
  std::vector<DeviceSpec> devices;
  ThermalParams thermal;

  const DeviceSpec* find_device(std::string_view id) const noexcept;
  // Index into `devices`; throws ValidationError for unknown ids.
  std::size_t device_index(std::string_view id) const;

  std::vector<std::string> collect_issues() const;
  void validate() const;  // throws ValidationError listing every issue
};

// Live hardware condition observed by the runtime layer.
struct PlatformState {
  std::vector<std::size_t> freq_idx;  // parallel to Platform::devices
  double temperature_c = 25.0;
  double contention = 1.0;  // fraction of throughput available to us, (0,1]
  bool throttled = false;

  static PlatformState initial(const Platform& platform);
};

// The one executing inference, for power accounting.
struct ActiveLoad {
  std::size_t device_index = 0;
  double busy_power_w = 0.0;
};

// Explicit-Euler step of the lumped RC node:
//   T' = T + dt * (P / c_th - (T - t_ambient) / (r_th * c_th))
// Rejects dt_s outside (0, r_th*c_th], the explicit-Euler stability guard.
double step_thermal(double temperature_c, double power_w, double dt_s,
                    const ThermalParams& params);

// Hysteresis: throttle on at T >= t_throttle (clamping every frequency index
// to the cap), off at T <= t_release; the flag is held inside the band.
PlatformState update_throttle(PlatformState state, const ThermalParams& params);

// Linear slowdown under contention: base_ms / contention.
double effective_latency_ms(double base_ms, double contention);

// Idle power of every device at its current level, with the active device's
// idle term replaced by its busy draw. A busy device never reports less than
// its idle power, so the total is always >= the idle sum.
double platform_power_w(const Platform& platform, const PlatformState& state,
                        const std::optional<ActiveLoad>& active = std::nullopt);

}  // namespace govsim

#endif  // GOVSIM_PLATFORM_HPP_
