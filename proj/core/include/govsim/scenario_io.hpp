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

#ifndef GOVSIM_SCENARIO_IO_HPP_
#define GOVSIM_SCENARIO_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "govsim/profile.hpp"
#include "govsim/simulator.hpp"

namespace govsim {

// Scenario and generator-spec documents are JSON, one document per file.
// Unknown keys are a hard error so a typo cannot silently change an
// experiment. Relative profile paths resolve against the document's
// directory.

Scenario scenario_from_json_text(std::string_view text,
                                 const std::filesystem::path& base_dir,
                                 std::string name);
Scenario load_scenario(const std::filesystem::path& path);

GeneratorSpec generator_spec_from_json_text(std::string_view text);
GeneratorSpec load_generator_spec(const std::filesystem::path& path);

}  // namespace govsim

#endif  // GOVSIM_SCENARIO_IO_HPP_
