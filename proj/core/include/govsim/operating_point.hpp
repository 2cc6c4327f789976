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

#ifndef GOVSIM_OPERATING_POINT_HPP_
#define GOVSIM_OPERATING_POINT_HPP_

#include <cstddef>
#include <string>

namespace govsim {

// One joint algorithm+hardware choice: which sub-network runs where, and at
// which DVFS level. Task mapping is whole-device; `cores` is carried for the
// data model but pinned to the device maximum.
struct OperatingPoint {
  std::string subnet;
  std::string device;
  std::size_t freq_idx = 0;
  int cores = 1;

  bool operator==(const OperatingPoint&) const = default;
};

}  // namespace govsim

#endif  // GOVSIM_OPERATING_POINT_HPP_
