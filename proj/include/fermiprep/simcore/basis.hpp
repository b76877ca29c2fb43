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

#include <complex>
#include <cstdint>
#include <numbers>

#include "fermiprep/simcore/circuit.hpp"

namespace fermiprep {

/// A computational basis state with an accumulated phase, for driving
/// permutation-plus-phase circuits classically.
struct BasisState {
  BasisIndex bits = 0;
  std::complex<double> phase{1.0, 0.0};
};

namespace detail {

inline bool controls_hold(const GateOp& op, BasisIndex bits) {
  for (const auto& c : op.controls)
    if (((bits >> c.qubit) & 1U) != (c.on_one ? 1U : 0U)) return false;
  return true;
}

}  // namespace detail

/// Evaluates a circuit of X/CNOT/Toffoli/MCX/Fredkin/Phase gates on a basis
/// state without allocating a statevector. Fails on H or Rotation.
inline BasisState evaluate_basis(const Circuit& circuit, BasisState s) {
  require(circuit.num_qubits() <= 64, "basis_width", "basis evaluator is limited to 64 qubits");
  for (const auto& op : circuit.ops()) {
    if (!detail::controls_hold(op, s.bits)) continue;
    const Qubit t = op.targets[0];
    switch (op.kind) {
      case GateKind::X:
      case GateKind::CNOT:
      case GateKind::Toffoli:
      case GateKind::MCX: s.bits ^= BasisIndex{1} << t; break;
      case GateKind::Fredkin: {
        const Qubit b = op.targets[1];
        const bool vt = (s.bits >> t) & 1U, vb = (s.bits >> b) & 1U;
        if (vt != vb) s.bits ^= (BasisIndex{1} << t) | (BasisIndex{1} << b);
        break;
      }
      case GateKind::Phase:
        if ((s.bits >> t) & 1U) s.phase *= std::polar(1.0, op.param);
        break;
      default:
        throw ValidationError("basis_permutation_gate",
                              std::string(to_string(op.kind)) + " does not map basis states to basis states");
    }
  }
  return s;
}

inline BasisIndex evaluate_basis(const Circuit& circuit, BasisIndex bits) {
  return evaluate_basis(circuit, BasisState{bits, {1.0, 0.0}}).bits;
}

}  // namespace fermiprep
