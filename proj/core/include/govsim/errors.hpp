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

#ifndef GOVSIM_ERRORS_HPP_
#define GOVSIM_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace govsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (bad CSV row, unparsable JSON, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Semantic problems. Collects every violation found in one pass so a user
// sees the full list instead of fixing them one at a time.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& context, std::vector<std::string> issues)
      : Error(join(context, issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::string& context,
                          const std::vector<std::string>& issues) {
    std::string msg = context;
    for (const auto& issue : issues) {
      msg += "\n  - ";
      msg += issue;
    }
    return msg;
  }

  std::vector<std::string> issues_;
};

class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace govsim

#endif  // GOVSIM_ERRORS_HPP_
