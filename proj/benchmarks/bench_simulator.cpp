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

#include <benchmark/benchmark.h>

#include "govsim/scenario_io.hpp"
#include "govsim/simulator.hpp"

namespace {

using namespace govsim;

const Scenario& phases_scenario() {
  static const Scenario sc =
      load_scenario(std::filesystem::path(GOVSIM_SCENARIO_DIR) / "phases.json");
  return sc;
}

// Replays the bundled 60 s phases scenario (1200 control periods, several
// thousand requests) once per iteration.
void BM_SimulatePhases(benchmark::State& state) {
  const Scenario& sc = phases_scenario();
  const ProfileSet profiles = make_profiles(sc);
  const char* names[] = {"dynamic", "performance", "schedutil"};
  const char* name = names[state.range(0)];
  for (auto _ : state) {
    auto gov =
        make_governor(name, profiles, sc.platform, sc.initial_target, {});
    benchmark::DoNotOptimize(run_simulation(sc, profiles, *gov));
  }
  state.SetLabel(name);
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(sc.duration_s /
                                               sc.control_period_s));
}
BENCHMARK(BM_SimulatePhases)->Arg(0)->Arg(1)->Arg(2);

void BM_GenerateProfiles(benchmark::State& state) {
  const Scenario& sc = phases_scenario();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_profiles(sc, seed++));
  }
}
BENCHMARK(BM_GenerateProfiles);

}  // namespace
