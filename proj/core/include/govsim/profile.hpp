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

// Latency/power/accuracy profiles of dynamic-DNN sub-networks across devices
// and frequencies: CSV ingestion with exhaustive validation, latency
// prediction at unprofiled frequencies, and a deterministic synthetic
// generator that stands in for hardware measurements.

#ifndef GOVSIM_PROFILE_HPP_
#define GOVSIM_PROFILE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "govsim/platform.hpp"

namespace govsim {

struct SubnetId {
  std::string name;
  std::string arch_note;  // free-form width/depth description

  bool operator==(const SubnetId&) const = default;
};

// One measured (or synthesized) row: latency and average busy power of a
// sub-network on a device at one DVFS level.
struct ProfileEntry {
  std::string subnet;
  std::string device;
  double freq_hz = 0.0;
  double latency_ms = 0.0;
  double busy_power_w = 0.0;

  bool operator==(const ProfileEntry&) const = default;
};

struct AccuracyEntry {
  std::string subnet;
  double top1 = 0.0;  // percent

  bool operator==(const AccuracyEntry&) const = default;
};

// Immutable after construction; safe to share read-only across threads.
class ProfileSet {
 public:
  ProfileSet() = default;

  // Checks the structural invariants (positive values, unique keys, one
  // accuracy row per subnet) and throws ValidationError listing every
  // violation. `subnets` may carry arch notes; when empty it is derived
  // from the accuracy table order.
  ProfileSet(std::vector<ProfileEntry> entries,
             std::vector<AccuracyEntry> accuracies, std::string provenance,
             std::vector<SubnetId> subnets = {});

  // Reads the flat profile table and the accuracy table, validates both
  // against the platform, and throws with the full violation list.
  static ProfileSet load(const std::filesystem::path& profiles_csv,
                         const std::filesystem::path& accuracy_csv,
                         const Platform& platform);

  void save(const std::filesystem::path& profiles_csv,
            const std::filesystem::path& accuracy_csv) const;

  const std::vector<ProfileEntry>& entries() const noexcept { return entries_; }
  const std::vector<AccuracyEntry>& accuracies() const noexcept {
    return accuracies_;
  }
  const std::vector<SubnetId>& subnets() const noexcept { return subnets_; }
  const std::string& provenance() const noexcept { return provenance_; }
  bool empty() const noexcept { return entries_.empty(); }

  bool has_subnet(std::string_view subnet) const noexcept;
  bool has_pair(std::string_view subnet, std::string_view device) const noexcept;
  double top1(std::string_view subnet) const;  // throws on unknown subnet

  // Measured value at an exactly profiled frequency; otherwise piecewise
  // linear in 1/f between the two nearest profiled frequencies (constant
  // cycle count). Outside the profiled range the nearest endpoint is scaled
  // by f_nearest/f_query. Throws on an unprofiled (subnet, device) pair.
  double predict_latency_ms(std::string_view subnet, std::string_view device,
                            double freq_hz) const;

  // Same lookup for busy power, linear in f between neighbours and clamped
  // flat outside the profiled range.
  double predict_busy_power_w(std::string_view subnet, std::string_view device,
                              double freq_hz) const;

  // Cross-checks every referenced (device, freq) pair against the platform.
  std::vector<std::string> validate_against(const Platform& platform) const;

 private:
  struct FreqPoint {
    double freq_hz;
    double latency_ms;
    double busy_power_w;
  };
  using PairKey = std::pair<std::string, std::string>;  // (subnet, device)

  const std::vector<FreqPoint>& points_for(std::string_view subnet,
                                           std::string_view device) const;

  std::vector<ProfileEntry> entries_;
  std::vector<AccuracyEntry> accuracies_;
  std::vector<SubnetId> subnets_;
  std::string provenance_;
  std::map<PairKey, std::vector<FreqPoint>, std::less<>> by_pair_;
  std::map<std::string, double, std::less<>> top1_;
};

struct GeneratorDevice {
  std::string id;
  std::vector<double> freqs_hz;  // ascending
  double latency_scale = 1.0;    // relative device speed; lower is faster
};

struct GeneratorSpec {
  int subnet_count = 0;
  std::vector<GeneratorDevice> devices;
  std::array<double, 2> base_latency_ms{5.0, 30.0};  // at max frequency
  std::array<double, 2> busy_power_w{1.0, 6.0};
  std::array<double, 2> accuracy_pct{60.0, 80.0};

  std::vector<std::string> collect_issues() const;
};

// Deterministic in (seed, spec). Later subnets have strictly higher accuracy
// and strictly higher latency at every (device, frequency); latency strictly
// decreases with frequency.
ProfileSet generate_profiles(std::uint64_t seed, const GeneratorSpec& spec);

}  // namespace govsim

#endif  // GOVSIM_PROFILE_HPP_
