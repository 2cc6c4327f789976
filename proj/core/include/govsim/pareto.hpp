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

#ifndef GOVSIM_PARETO_HPP_
#define GOVSIM_PARETO_HPP_

#include <vector>

#include "govsim/operating_point.hpp"
#include "govsim/platform.hpp"
#include "govsim/profile.hpp"

namespace govsim {

struct ParetoPoint {
  OperatingPoint point;
  double latency_ms = 0.0;
  double top1 = 0.0;
  double energy_mj = 0.0;

  bool operator==(const ParetoPoint&) const = default;
};

// Non-dominated subset in (latency down, accuracy up). A point is dominated
// when another has latency <= and top1 >= with at least one strict. Exact
// ties on both axes keep one representative: lowest energy, then subnet,
// device, frequency index. Result sorted by ascending latency, which makes
// top1 strictly increasing as well.
std::vector<ParetoPoint> pareto_frontier(std::vector<ParetoPoint> points);

// Enumerates the joint knob space (subnet x device x frequency index) over
// the platform tables, prices each point under the given contention factor,
// and returns its frontier.
std::vector<ParetoPoint> build_pareto(const ProfileSet& profiles,
                                      const Platform& platform,
                                      double contention);

}  // namespace govsim

#endif  // GOVSIM_PARETO_HPP_
