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

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fermiprep/errors.hpp"

namespace fermiprep {

using Qubit = std::uint32_t;
using BasisIndex = std::uint64_t;

/// Hard cap on simulated width: 2^26 complex doubles is 1 GiB.
inline constexpr unsigned kMaxQubits = 26;

/// A named, contiguous block of qubits holding `element_count` integers of
/// `element_width` bits each. Element 0 is the most significant element of
/// the register; within an element, bit 0 is the least significant qubit.
struct Register {
  std::string name;
  Qubit first = 0;
  unsigned element_width = 0;
  unsigned element_count = 0;

  unsigned span() const noexcept { return element_width * element_count; }

  Qubit qubit(unsigned element, unsigned bit) const {
    require(element < element_count && bit < element_width, "register_bounds",
            "element/bit out of range in register '" + name + "'");
    return first + (element_count - 1 - element) * element_width + bit;
  }

  /// Qubits of one element, least significant first.
  std::vector<Qubit> element_qubits(unsigned element) const {
    std::vector<Qubit> out;
    out.reserve(element_width);
    for (unsigned b = 0; b < element_width; ++b) out.push_back(qubit(element, b));
    return out;
  }

  std::vector<Qubit> qubits() const {
    std::vector<Qubit> out(span());
    for (unsigned i = 0; i < span(); ++i) out[i] = first + i;
    return out;
  }

  BasisIndex mask() const noexcept {
    return span() >= 64 ? ~BasisIndex{0} : ((BasisIndex{1} << span()) - 1) << first;
  }

  bool operator==(const Register&) const = default;
};

/// Ordered, disjoint registers packed from qubit 0 upward.
class RegisterLayout {
 public:
  RegisterLayout() = default;

  const Register& add(std::string name, unsigned element_width, unsigned element_count = 1) {
    require(!contains(name), "register_unique", "duplicate register name '" + name + "'");
    registers_.push_back(Register{std::move(name), next_, element_width, element_count});
    next_ += element_width * element_count;
    return registers_.back();
  }

  bool contains(std::string_view name) const {
    return std::any_of(registers_.begin(), registers_.end(),
                       [&](const Register& r) { return r.name == name; });
  }

  const Register& get(std::string_view name) const {
    for (const auto& r : registers_)
      if (r.name == name) return r;
    throw ValidationError("register_exists", "no register named '" + std::string(name) + "'");
  }

  const std::vector<Register>& registers() const noexcept { return registers_; }
  unsigned num_qubits() const noexcept { return next_; }

  static BasisIndex value(BasisIndex index, const Register& reg) {
    if (reg.span() == 0) return 0;
    return (index >> reg.first) & ((BasisIndex{1} << reg.span()) - 1);
  }

  static BasisIndex element(BasisIndex index, const Register& reg, unsigned e) {
    if (reg.element_width == 0) return 0;
    const unsigned shift = reg.qubit(e, 0);
    return (index >> shift) & ((BasisIndex{1} << reg.element_width) - 1);
  }

  static BasisIndex with_element(BasisIndex index, const Register& reg, unsigned e, BasisIndex v) {
    if (reg.element_width == 0) return index;
    const unsigned shift = reg.qubit(e, 0);
    const BasisIndex m = ((BasisIndex{1} << reg.element_width) - 1) << shift;
    return (index & ~m) | ((v << shift) & m);
  }

  static BasisIndex with_value(BasisIndex index, const Register& reg, BasisIndex v) {
    if (reg.span() == 0) return index;
    const BasisIndex m = reg.mask();
    return (index & ~m) | ((v << reg.first) & m);
  }

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::vector<Register> registers_;
  Qubit next_ = 0;
};

/// Pack element values into a register integer (element 0 most significant).
inline BasisIndex pack_elements(const std::vector<BasisIndex>& values, unsigned width) {
  BasisIndex out = 0;
  for (BasisIndex v : values) out = (out << width) | v;
  return out;
}

inline unsigned ceil_log2(std::uint64_t n) {
  unsigned b = 0;
  while ((std::uint64_t{1} << b) < n) ++b;
  return b;
}

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace fermiprep
