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
#include <cstddef>
#include <span>
#include <vector>

#include "fermiprep/simcore/gate.hpp"
#include "fermiprep/simcore/layout.hpp"

namespace fermiprep {

struct ResourceTally {
  std::size_t gate_count = 0;
  std::size_t clifford_count = 0;
  std::size_t toffoli_count = 0;     // logical Toffoli equivalents
  std::size_t t_count = 0;           // 4 T per compute Toffoli, 0 T per uncompute
  std::size_t t_count_standard = 0;  // 7 T per Toffoli
  std::size_t rotation_count = 0;
  std::size_t depth = 0;             // greedy layering over touched qubits

  void add(const GateCost& c) {
    ++gate_count;
    clifford_count += c.clifford;
    toffoli_count += c.toffoli;
    t_count += c.t_count;
    t_count_standard += c.t_standard;
    rotation_count += c.rotation;
  }

  bool operator==(const ResourceTally&) const = default;
};

/// An ordered, purely unitary gate list over a fixed qubit count. The tally
/// is maintained on append and can be recomputed from `ops()` at any time.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(unsigned num_qubits) : num_qubits_(num_qubits), frontier_(num_qubits, 0) {}
  explicit Circuit(RegisterLayout layout)
      : num_qubits_(layout.num_qubits()), layout_(std::move(layout)), frontier_(num_qubits_, 0) {}

  unsigned num_qubits() const noexcept { return num_qubits_; }
  const RegisterLayout& layout() const noexcept { return layout_; }
  const std::vector<GateOp>& ops() const noexcept { return ops_; }
  const ResourceTally& tally() const noexcept { return tally_; }
  bool empty() const noexcept { return ops_.empty(); }
  std::size_t size() const noexcept { return ops_.size(); }

  Circuit& append(GateOp op) {
    require(op.kind != GateKind::Projector, "circuit_unitary",
            "projectors are only applied through measurement");
    validate(op, num_qubits_);
    tally_.add(gate_cost(op));
    std::size_t round = 0;
    for (Qubit q : op.touched()) round = std::max(round, frontier_[q]);
    ++round;
    for (Qubit q : op.touched()) frontier_[q] = round;
    tally_.depth = std::max(tally_.depth, round);
    ops_.push_back(std::move(op));
    return *this;
  }

  Circuit& append(std::span<const GateOp> ops) {
    for (const auto& op : ops) append(op);
    return *this;
  }

  /// Appends `other`'s gates (which must fit this circuit's width).
  Circuit& append(const Circuit& other) { return append(std::span<const GateOp>(other.ops_)); }

  /// Appends the inverse of `ops` flagged as uncomputation.
  Circuit& append_uncompute(std::span<const GateOp> ops) {
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      GateOp inv = fermiprep::inverse(*it);
      inv.uncompute = true;
      append(std::move(inv));
    }
    return *this;
  }

  Circuit inverse() const {
    Circuit out(num_qubits_);
    out.layout_ = layout_;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) out.append(fermiprep::inverse(*it));
    return out;
  }

  static ResourceTally recompute_tally(unsigned num_qubits, std::span<const GateOp> ops) {
    ResourceTally t;
    std::vector<std::size_t> frontier(num_qubits, 0);
    for (const auto& op : ops) {
      t.add(gate_cost(op));
      std::size_t round = 0;
      for (Qubit q : op.touched()) round = std::max(round, frontier[q]);
      ++round;
      for (Qubit q : op.touched()) frontier[q] = round;
      t.depth = std::max(t.depth, round);
    }
    return t;
  }

  ResourceTally recompute_tally() const { return recompute_tally(num_qubits_, ops_); }

 private:
  unsigned num_qubits_ = 0;
  RegisterLayout layout_;
  std::vector<GateOp> ops_;
  ResourceTally tally_;
  std::vector<std::size_t> frontier_;
};

inline ResourceTally& operator+=(ResourceTally& a, const ResourceTally& b) {
  a.gate_count += b.gate_count;
  a.clifford_count += b.clifford_count;
  a.toffoli_count += b.toffoli_count;
  a.t_count += b.t_count;
  a.t_count_standard += b.t_count_standard;
  a.rotation_count += b.rotation_count;
  a.depth += b.depth;  // sequential composition
  return a;
}

}  // namespace fermiprep
