// Copyright 2026 The fermiprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace fermiprep {

/// Raised when an input violates a documented invariant or precondition.
/// `invariant()` names the violated rule so front ends can report it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string invariant, const std::string& message)
      : std::invalid_argument(invariant + ": " + message), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Raised when a requested simulation does not fit the statevector cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& message) : std::runtime_error(message) {}
};

/// Raised when a probabilistic procedure exhausts its retry budget.
class AttemptLimitError : public std::runtime_error {
 public:
  AttemptLimitError(const std::string& message, double success_probability)
      : std::runtime_error(message), success_probability_(success_probability) {}

  double success_probability() const noexcept { return success_probability_; }

 private:
  double success_probability_;
};

inline void require(bool condition, const char* invariant, const std::string& message) {
  if (!condition) throw ValidationError(invariant, message);
}

}  // namespace fermiprep
