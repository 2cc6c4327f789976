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

#include <algorithm>

#include <doctest.h>

#include "govsim/errors.hpp"
#include "govsim/governor.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace govsim;

namespace {

PlatformState state_for(const Platform& p, double alpha = 1.0,
                        bool throttled = false) {
  PlatformState st = PlatformState::initial(p);
  st.contention = alpha;
  st.throttled = throttled;
  return st;
}

}  // namespace

TEST_CASE("feasible_points: filters") {
  const Platform p = testutil::one_level_platform();
  ProfileSet one({{"only", "d0", 1e9, 10.0, 2.0}}, {{"only", 70.0}}, "one");

  // A 10 ms point against a 20 ms target survives; against 5 ms it does not.
  CHECK(feasible_points(one, p, state_for(p), {20.0, {}}).size() == 1);
  CHECK(feasible_points(one, p, state_for(p), {5.0, {}}).empty());
}

TEST_CASE("feasible_points: throttle cap hides faster levels") {
  const Platform p = testutil::two_level_platform();  // cap = 0
  const ProfileSet set = testutil::sml_profiles();
  const auto pts =
      feasible_points(set, p, state_for(p, 1.0, /*throttled=*/true), {100.0, {}});
  CHECK(!pts.empty());
  for (const auto& c : pts) CHECK(c.point.freq_idx == 0);
}

TEST_CASE("select_dynamic: worked three-subnet example") {
  const Platform p = testutil::two_level_platform();
  const ProfileSet set = testutil::sml_profiles();

  // Target 15 ms: feasible = {S@f1, S@f2, M@f1, M@f2, L@f2}; max accuracy
  // wins, so L@f2 at a predicted 14 ms.
  const auto feas = feasible_points(set, p, state_for(p), {15.0, {}});
  CHECK(feas.size() == 5);
  const Decision d = select_dynamic(set, p, state_for(p), {15.0, {}});
  CHECK(d.point == OperatingPoint{"L", "d0", 1, 4});
  CHECK(d.predicted_latency_ms == doctest::Approx(14.0));
  CHECK(d.predicted_energy_mj == doctest::Approx(28.0));
  CHECK(d.feasible);
  CHECK(d.rationale == Rationale::TargetMet);
}

TEST_CASE("select_dynamic: best effort picks the global fastest") {
  const Platform p = testutil::two_level_platform();
  const ProfileSet set = testutil::sml_profiles();
  const Decision d = select_dynamic(set, p, state_for(p), {4.0, {}});
  CHECK(d.point == OperatingPoint{"S", "d0", 1, 4});
  CHECK(d.predicted_latency_ms == doctest::Approx(5.0));
  CHECK_FALSE(d.feasible);
  CHECK(d.rationale == Rationale::BestEffort);
}

TEST_CASE("select_dynamic: single choice is simply taken") {
  const Platform p = testutil::two_level_platform();
  ProfileSet one({{"only", "d0", 1e9, 10.0, 2.0}}, {{"only", 70.0}}, "one");
  const Decision d = select_dynamic(one, p, state_for(p), {20.0, {}});
  CHECK(d.point.subnet == "only");
  CHECK(d.feasible);
  CHECK(d.rationale == Rationale::TargetMet);
}

TEST_CASE("select_dynamic: empty profile set is an error") {
  const Platform p = testutil::two_level_platform();
  CHECK_THROWS_AS(select_dynamic(ProfileSet{}, p, state_for(p), {10.0, {}}),
                  ValidationError);
}

TEST_CASE("select_dynamic: binding-constraint rationales") {
  const Platform p = testutil::two_level_platform();
  const ProfileSet set = testutil::sml_profiles();

  // Accuracy floor above every subnet that can meet 15 ms: L@f2 is the only
  // 80% point and it meets it, so push the floor beyond reach via target 10.
  PerformanceTarget target{10.0, 79.0};
  Decision d = select_dynamic(set, p, state_for(p), target);
  CHECK_FALSE(d.feasible);
  CHECK(d.rationale == Rationale::AccuracyFloorBinds);

  // Power budget below every busy power (all 2 W).
  d = select_dynamic(set, p, state_for(p), {15.0, {}}, Constraints{1.0});
  CHECK_FALSE(d.feasible);
  CHECK(d.rationale == Rationale::PowerBudgetBinds);

  // Plain impossible target with no optional constraints.
  d = select_dynamic(set, p, state_for(p), {4.0, {}});
  CHECK(d.rationale == Rationale::BestEffort);
}

TEST_CASE("select_dynamic: hysteresis keeps a near-optimal previous point") {
  const Platform p = testutil::one_level_platform();
  // Two subnets, same accuracy; energies within 1.5% of each other.
  ProfileSet set(
      {{"a", "d0", 1e9, 10.0, 2.00}, {"b", "d0", 1e9, 10.0, 2.02}},
      {{"a", 70.0}, {"b", 70.0}}, "hys");

  // Winner with no history is `a` (lower energy).
  Decision d0 = select_dynamic(set, p, state_for(p), {20.0, {}});
  CHECK(d0.point.subnet == "a");

  // Coming from `b`, a 2% margin keeps `b` (energy ratio 1.01).
  Decision d1 = select_dynamic(set, p, state_for(p), {20.0, {}}, {},
                               OperatingPoint{"b", "d0", 0, 4}, 2.0);
  CHECK(d1.point.subnet == "b");
  CHECK(d1.feasible);

  // With the margin off, it switches to the winner.
  Decision d2 = select_dynamic(set, p, state_for(p), {20.0, {}}, {},
                               OperatingPoint{"b", "d0", 0, 4}, 0.0);
  CHECK(d2.point.subnet == "a");

  // A previous point that no longer meets the target is abandoned.
  ProfileSet set2({{"a", "d0", 1e9, 10.0, 2.0}, {"b", "d0", 1e9, 25.0, 2.0}},
                  {{"a", 70.0}, {"b", 70.0}}, "hys2");
  Decision d3 = select_dynamic(set2, p, state_for(p), {20.0, {}}, {},
                               OperatingPoint{"b", "d0", 0, 4}, 50.0);
  CHECK(d3.point.subnet == "a");
}

TEST_CASE("select_dynamic: hysteresis never causes a miss") {
  oracle::Rng rng(4242);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = oracle::random_instance(rng);
    const Decision first =
        select_dynamic(inst.profiles, inst.platform, inst.state, inst.target,
                       inst.constraints);
    // Re-decide under a jittered target with the first point as history.
    PerformanceTarget relaxed = inst.target;
    relaxed.latency_ms *= rng.range(0.8, 1.6);
    const Decision second =
        select_dynamic(inst.profiles, inst.platform, inst.state, relaxed,
                       inst.constraints, first.point, 5.0);
    if (second.feasible)
      CHECK(second.predicted_latency_ms <= relaxed.latency_ms * (1 + 1e-12));
  }
}

TEST_CASE("select_dynamic: matches the exhaustive oracle") {
  oracle::Rng rng(1);
  for (int iter = 0; iter < 300; ++iter) {
    const auto inst = oracle::random_instance(rng);
    const auto want = oracle::select_oracle(inst);
    const Decision got =
        select_dynamic(inst.profiles, inst.platform, inst.state, inst.target,
                       inst.constraints, std::nullopt, 0.0);
    CHECK(got.point == want.point);
    CHECK(got.feasible == want.feasible);
  }
}

TEST_CASE("select_dynamic: relaxing the target never lowers accuracy") {
  oracle::Rng rng(88);
  for (int iter = 0; iter < 300; ++iter) {
    const auto inst = oracle::random_instance(rng);
    const Decision tight =
        select_dynamic(inst.profiles, inst.platform, inst.state, inst.target,
                       inst.constraints, std::nullopt, 0.0);
    if (!tight.feasible) continue;
    PerformanceTarget relaxed = inst.target;
    relaxed.latency_ms *= rng.range(1.0, 3.0);
    const Decision loose =
        select_dynamic(inst.profiles, inst.platform, inst.state, relaxed,
                       inst.constraints, std::nullopt, 0.0);
    REQUIRE(loose.feasible);
    CHECK(inst.profiles.top1(loose.point.subnet) >=
          inst.profiles.top1(tight.point.subnet));
  }
}

TEST_CASE("select_dynamic: busy-power scaling leaves the choice unchanged") {
  oracle::Rng rng(909);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = oracle::random_instance(rng);
    inst.constraints.power_budget_w.reset();
    const Decision base =
        select_dynamic(inst.profiles, inst.platform, inst.state, inst.target,
                       inst.constraints, std::nullopt, 0.0);
    for (double c : {0.01, 0.5, 3.0, 250.0}) {
      auto rows = inst.rows;
      for (auto& r : rows) r.busy_power_w *= c;
      const ProfileSet scaled(rows, inst.accuracies, "scaled");
      const Decision d =
          select_dynamic(scaled, inst.platform, inst.state, inst.target,
                         inst.constraints, std::nullopt, 0.0);
      CHECK(d.point == base.point);
    }
  }
}

TEST_CASE("governors respect the throttle cap") {
  oracle::Rng rng(606);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = oracle::random_instance(rng);
    inst.state.throttled = true;
    const auto cap = inst.platform.thermal.throttle_cap;

    const Decision d =
        select_dynamic(inst.profiles, inst.platform, inst.state, inst.target,
                       inst.constraints, std::nullopt, 0.0);
    CHECK(d.point.freq_idx <= cap);

    const FixedChoice fixed = choose_fixed_offline(
        inst.profiles, inst.platform, inst.target,
        inst.platform.devices.front().id);
    CHECK(select_performance_baseline(inst.profiles, inst.platform, inst.state,
                                      inst.target, fixed)
              .point.freq_idx <= cap);
    CHECK(select_schedutil_baseline(inst.profiles, inst.platform, inst.state,
                                    inst.target, fixed, 1.0)
              .point.freq_idx <= cap);
  }
}

TEST_CASE("performance baseline: offline choice and runtime fragility") {
  const Platform p = testutil::two_level_platform();
  const ProfileSet set = testutil::sml_profiles();

  // Offline, target 15 at f_max: L (22, 14) meets it with the best accuracy.
  const FixedChoice fixed = choose_fixed_offline(set, p, {15.0, {}}, "d0");
  CHECK(fixed.subnet == "L");

  Decision d = select_performance_baseline(set, p, state_for(p), {15.0, {}}, fixed);
  CHECK(d.point == OperatingPoint{"L", "d0", 1, 4});
  CHECK(d.feasible);

  // Contention halves the throughput: 14 / 0.5 = 28 ms > 15 ms.
  d = select_performance_baseline(set, p, state_for(p, 0.5), {15.0, {}}, fixed);
  CHECK(d.predicted_latency_ms == doctest::Approx(28.0));
  CHECK_FALSE(d.feasible);

  // Throttled to the 1 GHz level: 22 ms > 15 ms.
  d = select_performance_baseline(set, p, state_for(p, 1.0, true), {15.0, {}},
                                  fixed);
  CHECK(d.point.freq_idx == 0);
  CHECK(d.predicted_latency_ms == doctest::Approx(22.0));
  CHECK_FALSE(d.feasible);
}

TEST_CASE("performance baseline: nothing meets the target offline") {
  const Platform p = testutil::two_level_platform();
  const ProfileSet set = testutil::sml_profiles();
  // Impossible target: falls back to the fastest subnet at f_max (S at 5 ms).
  const FixedChoice fixed = choose_fixed_offline(set, p, {1.0, {}}, "d0");
  CHECK(fixed.subnet == "S");
}

TEST_CASE("schedutil baseline: frequency law") {
  const Platform p = testutil::two_level_platform();  // 1 and 2 GHz
  const ProfileSet set = testutil::sml_profiles();
  const FixedChoice fixed{"M", "d0"};

  // Saturated utilization requests 2.5 GHz and lands on f_max.
  Decision d = select_schedutil_baseline(set, p, state_for(p), {50.0, {}},
                                         fixed, 1.0);
  CHECK(d.point.freq_idx == 1);
  // Idle requests 0 Hz and lands on the lowest level.
  d = select_schedutil_baseline(set, p, state_for(p), {50.0, {}}, fixed, 0.0);
  CHECK(d.point.freq_idx == 0);
  // 1.25 * 2 GHz * 0.45 = 1.125 GHz rounds up to 2 GHz.
  d = select_schedutil_baseline(set, p, state_for(p), {50.0, {}}, fixed, 0.45);
  CHECK(d.point.freq_idx == 1);
  // 1.25 * 2 GHz * 0.30 = 0.75 GHz rounds up to 1 GHz.
  d = select_schedutil_baseline(set, p, state_for(p), {50.0, {}}, fixed, 0.30);
  CHECK(d.point.freq_idx == 0);
}

TEST_CASE("energy_per_inference: definition and linearity") {
  const Platform p = testutil::two_level_platform();
  const ProfileSet set = testutil::sml_profiles();

  // 2 W * 10 ms would be 20 mJ; with the S/M/L table, S@f2 is 2 W * 5 ms.
  CHECK(energy_per_inference_mj(set, p, {"S", "d0", 1, 4}, 1.0) ==
        doctest::Approx(10.0));
  // Halving throughput doubles latency and energy.
  CHECK(energy_per_inference_mj(set, p, {"S", "d0", 1, 4}, 0.5) ==
        doctest::Approx(20.0));
  ProfileSet flat({{"n", "d0", 1e9, 10.0, 2.0}}, {{"n", 70.0}}, "flat");
  CHECK(energy_per_inference_mj(flat, p, {"n", "d0", 0, 4}, 1.0) ==
        doctest::Approx(20.0));
  CHECK(energy_per_inference_mj(flat, p, {"n", "d0", 0, 4}, 0.5) ==
        doctest::Approx(40.0));
}

TEST_CASE("energy_per_inference: unknown points are errors") {
  const Platform p = testutil::two_level_platform();
  const ProfileSet set = testutil::sml_profiles();
  CHECK_THROWS_AS(energy_per_inference_mj(set, p, {"S", "d0", 7, 4}, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(energy_per_inference_mj(set, p, {"S", "nope", 0, 4}, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(energy_per_inference_mj(set, p, {"X", "d0", 0, 4}, 1.0),
                  ValidationError);
}

TEST_CASE("make_governor: tunables select the fixed subnet and device") {
  Platform p = testutil::two_level_platform();
  p.devices.push_back(
      {"d1", DeviceKind::Gpu, 1, {{5e8, 0.7, 0.2}, {1e9, 0.9, 0.4}}});
  std::vector<ProfileEntry> rows = testutil::sml_profiles().entries();
  rows.push_back({"S", "d1", 5e8, 30.0, 1.0});
  rows.push_back({"S", "d1", 1e9, 15.0, 1.5});
  ProfileSet set(rows, testutil::sml_profiles().accuracies(), "multi");

  PlatformState st = PlatformState::initial(p);

  // Default designated device is the first one listed.
  auto perf = make_governor("performance", set, p, {15.0, {}}, {});
  CHECK(perf->decide({st, {15.0, {}}, 1.0}).point.device == "d0");

  GovernorTunables tun;
  tun.designated_device = "d1";
  auto perf2 = make_governor("performance", set, p, {15.0, {}}, tun);
  Decision d = perf2->decide({st, {15.0, {}}, 1.0});
  CHECK(d.point.device == "d1");
  CHECK(d.point.subnet == "S");  // the only subnet profiled there

  tun.designated_device.reset();
  tun.fixed_subnet = "M";
  auto perf3 = make_governor("performance", set, p, {15.0, {}}, tun);
  CHECK(perf3->decide({st, {15.0, {}}, 1.0}).point.subnet == "M");

  tun.fixed_subnet = "ghost";
  CHECK_THROWS_AS(make_governor("performance", set, p, {15.0, {}}, tun),
                  ValidationError);
  CHECK_THROWS_AS(make_governor("turbo", set, p, {15.0, {}}, {}),
                  ValidationError);
}

TEST_CASE("dynamic never has a worse objective than a feasible baseline point") {
  oracle::Rng rng(2718);
  int checked = 0;
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = oracle::random_instance(rng);
    inst.target.min_top1.reset();
    inst.constraints.power_budget_w.reset();
    const FixedChoice fixed = choose_fixed_offline(
        inst.profiles, inst.platform, inst.target,
        inst.platform.devices.front().id);
    const Decision base = select_performance_baseline(
        inst.profiles, inst.platform, inst.state, inst.target, fixed);
    if (!base.feasible) continue;
    const Decision dyn =
        select_dynamic(inst.profiles, inst.platform, inst.state, inst.target,
                       inst.constraints, std::nullopt, 0.0);
    REQUIRE(dyn.feasible);
    const double bt = inst.profiles.top1(base.point.subnet);
    const double dt = inst.profiles.top1(dyn.point.subnet);
    CHECK(dt >= bt);
    if (dt == bt) CHECK(dyn.predicted_energy_mj <= base.predicted_energy_mj * (1 + 1e-12));
    ++checked;
  }
  CHECK(checked > 50);
}
