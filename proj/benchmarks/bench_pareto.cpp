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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "govsim/pareto.hpp"

namespace {

using govsim::ParetoPoint;

std::vector<ParetoPoint> random_points(std::size_t n) {
  std::mt19937_64 eng(n);
  auto unit = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
  std::vector<ParetoPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({{"s" + std::to_string(i % 64), "d", i % 5, 1},
                   0.5 + 60.0 * unit(), 40.0 + 55.0 * unit(),
                   1.0 + 99.0 * unit()});
  }
  return pts;
}

void BM_ParetoFrontier(benchmark::State& state) {
  const auto pts = random_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto copy = pts;
    benchmark::DoNotOptimize(govsim::pareto_frontier(std::move(copy)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParetoFrontier)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace
