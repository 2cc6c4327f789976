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

#include "govsim/pareto.hpp"

#include <algorithm>
#include <tuple>

namespace govsim {

namespace {

// Tie order inside an equal-(latency, top1) class.
bool tie_before(const ParetoPoint& a, const ParetoPoint& b) {
  return std::tie(a.energy_mj, a.point.subnet, a.point.device, a.point.freq_idx) <
         std::tie(b.energy_mj, b.point.subnet, b.point.device, b.point.freq_idx);
}

}  // namespace

std::vector<ParetoPoint> pareto_frontier(std::vector<ParetoPoint> points) {
  if (points.empty()) return points;

  // Group by exact latency ascending, best accuracy first inside a group.
  std::stable_sort(points.begin(), points.end(),
                   [](const ParetoPoint& a, const ParetoPoint& b) {
                     if (a.latency_ms != b.latency_ms)
                       return a.latency_ms < b.latency_ms;
                     return a.top1 > b.top1;
                   });

  std::vector<ParetoPoint> frontier;
  double best_top1 = -1.0;  // over strictly lower latencies
  std::size_t i = 0;
  while (i < points.size()) {
    std::size_t j = i;
    while (j < points.size() && points[j].latency_ms == points[i].latency_ms)
      ++j;
    // Within the group only the top-accuracy points are non-dominated, and
    // the whole group falls if an earlier (faster) point already reaches
    // that accuracy.
    const double group_top1 = points[i].top1;
    if (group_top1 > best_top1) {
      const ParetoPoint* keep = nullptr;
      for (std::size_t k = i; k < j && points[k].top1 == group_top1; ++k) {
        if (!keep || tie_before(points[k], *keep)) keep = &points[k];
      }
      frontier.push_back(*keep);
      best_top1 = group_top1;
    }
    i = j;
  }
  return frontier;
}

std::vector<ParetoPoint> build_pareto(const ProfileSet& profiles,
                                      const Platform& platform,
                                      double contention) {
  std::vector<ParetoPoint> points;
  for (const auto& dev : platform.devices) {
    for (std::size_t k = 0; k < dev.freq_table.size(); ++k) {
      const double f = dev.freq_table[k].freq_hz;
      for (const auto& subnet : profiles.subnets()) {
        if (!profiles.has_pair(subnet.name, dev.id)) continue;
        const double lat = effective_latency_ms(
            profiles.predict_latency_ms(subnet.name, dev.id, f), contention);
        const double busy = profiles.predict_busy_power_w(subnet.name, dev.id, f);
        points.push_back({OperatingPoint{subnet.name, dev.id, k, dev.core_count},
                          lat, profiles.top1(subnet.name), busy * lat});
      }
    }
  }
  return pareto_frontier(std::move(points));
}

}  // namespace govsim
