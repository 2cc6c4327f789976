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

// Synthetic profile generator. The ordering the selection policies rely on
// (bigger subnets are slower everywhere and more accurate; higher frequency
// is faster) is enforced by construction, not sampled and hoped for.

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "govsim/errors.hpp"
#include "govsim/profile.hpp"

namespace govsim {

namespace {

// Uniform in [0, 1) from the raw engine; distributions are not portable
// across standard libraries, this is.
double next_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::string note_for(int index, int count) {
  const double width = 0.5 + 0.5 * static_cast<double>(index + 1) / count;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "width x%.2f", width);
  return buf;
}

}  // namespace

std::vector<std::string> GeneratorSpec::collect_issues() const {
  std::vector<std::string> issues;
  if (subnet_count < 1) issues.push_back("subnet_count must be >= 1");
  if (devices.empty()) issues.push_back("no devices");
  std::set<std::string> ids;
  for (const auto& dev : devices) {
    if (dev.id.empty()) issues.push_back("device with empty id");
    if (!ids.insert(dev.id).second)
      issues.push_back("duplicate device id '" + dev.id + "'");
    if (dev.freqs_hz.empty())
      issues.push_back("device '" + dev.id + "': no frequencies");
    for (std::size_t k = 0; k < dev.freqs_hz.size(); ++k) {
      if (!(dev.freqs_hz[k] > 0.0))
        issues.push_back("device '" + dev.id + "': non-positive frequency");
      if (k > 0 && !(dev.freqs_hz[k] > dev.freqs_hz[k - 1]))
        issues.push_back("device '" + dev.id +
                         "': frequencies not strictly increasing");
    }
    if (!(dev.latency_scale > 0.0))
      issues.push_back("device '" + dev.id + "': latency_scale must be > 0");
  }
  if (!(base_latency_ms[0] > 0.0) || !(base_latency_ms[1] > base_latency_ms[0]))
    issues.push_back("base_latency_ms range must satisfy 0 < lo < hi");
  if (!(busy_power_w[0] > 0.0) || busy_power_w[1] < busy_power_w[0])
    issues.push_back("busy_power_w range must satisfy 0 < lo <= hi");
  if (accuracy_pct[0] < 0.0 || accuracy_pct[1] > 100.0 ||
      !(accuracy_pct[1] > accuracy_pct[0]))
    issues.push_back("accuracy_pct range must satisfy 0 <= lo < hi <= 100");
  return issues;
}

ProfileSet generate_profiles(std::uint64_t seed, const GeneratorSpec& spec) {
  auto issues = spec.collect_issues();
  if (!issues.empty())
    throw ValidationError("degenerate generator spec", issues);

  std::mt19937_64 eng(seed);
  const int n = spec.subnet_count;

  // Strictly increasing accuracies: lo + span * (i + u_i) / n, u in [0, 1).
  std::vector<AccuracyEntry> accuracies;
  std::vector<SubnetId> subnets;
  const double acc_span = spec.accuracy_pct[1] - spec.accuracy_pct[0];
  for (int i = 0; i < n; ++i) {
    const std::string name = "subnet-" + std::to_string(i);
    accuracies.push_back(
        {name, spec.accuracy_pct[0] + acc_span * (i + next_unit(eng)) / n});
    subnets.push_back({name, note_for(i, n)});
  }

  // Per (subnet, device) latency at the device's top frequency, strictly
  // increasing in the subnet index; other levels follow the constant-cycles
  // model L(f) = L(f_max) * f_max / f.
  const double lat_span = spec.base_latency_ms[1] - spec.base_latency_ms[0];
  std::vector<std::vector<double>> lat_at_fmax(spec.devices.size());
  for (std::size_t d = 0; d < spec.devices.size(); ++d) {
    lat_at_fmax[d].resize(n);
    for (int i = 0; i < n; ++i) {
      lat_at_fmax[d][i] =
          (spec.base_latency_ms[0] + lat_span * (i + next_unit(eng)) / n) *
          spec.devices[d].latency_scale;
    }
  }

  // Busy power follows f * V^2 with voltage roughly linear in frequency, so
  // it is close to cubic in the frequency ratio. That makes a fast level
  // cost more energy per inference than it saves in time, which is the
  // trade-off a DVFS governor is supposed to exploit.
  const double pow_span = spec.busy_power_w[1] - spec.busy_power_w[0];
  std::vector<ProfileEntry> entries;
  std::vector<std::vector<std::vector<double>>> busy(spec.devices.size());
  for (std::size_t d = 0; d < spec.devices.size(); ++d) {
    const auto& freqs = spec.devices[d].freqs_hz;
    busy[d].assign(n, std::vector<double>(freqs.size()));
    for (int i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < freqs.size(); ++k) {
        const double q = freqs[k] / freqs.back();
        const double s = static_cast<double>(i + 1) / n;
        const double mix = 0.75 * q * q * q + 0.15 * s + 0.10 * next_unit(eng);
        busy[d][i][k] = spec.busy_power_w[0] + pow_span * mix;
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < spec.devices.size(); ++d) {
      const auto& dev = spec.devices[d];
      for (std::size_t k = 0; k < dev.freqs_hz.size(); ++k) {
        entries.push_back({subnets[i].name, dev.id, dev.freqs_hz[k],
                           lat_at_fmax[d][i] * dev.freqs_hz.back() /
                               dev.freqs_hz[k],
                           busy[d][i][k]});
      }
    }
  }

  return ProfileSet(std::move(entries), std::move(accuracies),
                    "seed:" + std::to_string(seed), std::move(subnets));
}

}  // namespace govsim
