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

#include "govsim/governor.hpp"
#include "govsim/profile.hpp"

namespace {

using namespace govsim;

// Platform and profile sizes in the range the simulator actually sees:
// a couple of devices, a handful of levels, several subnets.
Platform bench_platform(int levels) {
  Platform p;
  for (int d = 0; d < 2; ++d) {
    DeviceSpec dev;
    dev.id = d == 0 ? "cpu0" : "gpu0";
    dev.kind = d == 0 ? DeviceKind::CpuCluster : DeviceKind::Gpu;
    dev.core_count = d == 0 ? 4 : 1;
    for (int k = 0; k < levels; ++k) {
      const double f = 4e8 + 4e8 * k;
      dev.freq_table.push_back({f, 0.6 + 0.1 * k, 0.1 + 0.1 * k});
    }
    p.devices.push_back(std::move(dev));
  }
  p.thermal = {2.0, 10.0, 25.0, 85.0, 80.0, 0};
  return p;
}

void BM_SelectDynamic(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  const int subnets = static_cast<int>(state.range(1));
  const Platform platform = bench_platform(levels);
  GeneratorSpec spec;
  spec.subnet_count = subnets;
  for (const auto& dev : platform.devices) {
    GeneratorDevice g{dev.id, {}, dev.id == "gpu0" ? 0.5 : 1.0};
    for (const auto& lvl : dev.freq_table) g.freqs_hz.push_back(lvl.freq_hz);
    spec.devices.push_back(std::move(g));
  }
  const ProfileSet profiles = generate_profiles(1, spec);
  const PlatformState st = PlatformState::initial(platform);
  const PerformanceTarget target{15.0, {}};

  for (auto _ : state) {
    benchmark::DoNotOptimize(
        select_dynamic(profiles, platform, st, target, {}, std::nullopt, 0.0));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SelectDynamic)->Args({5, 4})->Args({8, 8})->Args({12, 16});

}  // namespace
