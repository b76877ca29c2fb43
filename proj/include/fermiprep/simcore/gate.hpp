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

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "fermiprep/errors.hpp"
#include "fermiprep/simcore/layout.hpp"

namespace fermiprep {

enum class GateKind { X, H, CNOT, Toffoli, MCX, Fredkin, Rotation, Phase, Projector };

inline std::string_view to_string(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::CNOT: return "cnot";
    case GateKind::Toffoli: return "toffoli";
    case GateKind::MCX: return "mcx";
    case GateKind::Fredkin: return "fredkin";
    case GateKind::Rotation: return "rotation";
    case GateKind::Phase: return "phase";
    case GateKind::Projector: return "projector";
  }
  return "?";
}

inline GateKind gate_kind_from_string(std::string_view s) {
  for (GateKind k : {GateKind::X, GateKind::H, GateKind::CNOT, GateKind::Toffoli, GateKind::MCX,
                     GateKind::Fredkin, GateKind::Rotation, GateKind::Phase, GateKind::Projector})
    if (to_string(k) == s) return k;
  throw ValidationError("gate_kind", "unknown gate kind '" + std::string(s) + "'");
}

struct Control {
  Qubit qubit = 0;
  bool on_one = true;  // false: control on |0>

  bool operator==(const Control&) const = default;
};

/// One gate. `param` is an angle in radians for Rotation and Phase and the
/// projected bit value for Projector.
///
/// Rotation applies [[cos p, -sin p], [sin p, cos p]] to its target.
/// Phase multiplies the |1> component of its target by e^{i p}.
struct GateOp {
  GateKind kind = GateKind::X;
  std::vector<Qubit> targets;
  std::vector<Control> controls;
  double param = 0.0;
  bool uncompute = false;  // mirror half of a compute/uncompute pair

  std::vector<Qubit> touched() const {
    std::vector<Qubit> q = targets;
    for (const auto& c : controls) q.push_back(c.qubit);
    return q;
  }

  bool operator==(const GateOp&) const = default;
};

namespace detail {

inline std::size_t expected_targets(GateKind k) { return k == GateKind::Fredkin ? 2 : 1; }

}  // namespace detail

/// Checks arity, index range, and target/control disjointness.
inline void validate(const GateOp& op, unsigned num_qubits) {
  require(op.targets.size() == detail::expected_targets(op.kind), "gate_arity",
          std::string(to_string(op.kind)) + " has the wrong number of targets");
  const std::size_t nc = op.controls.size();
  switch (op.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::Projector:
      require(nc == 0, "gate_arity", std::string(to_string(op.kind)) + " takes no controls");
      break;
    case GateKind::CNOT: require(nc == 1, "gate_arity", "cnot takes one control"); break;
    case GateKind::Toffoli: require(nc == 2, "gate_arity", "toffoli takes two controls"); break;
    default: break;
  }
  std::vector<Qubit> all = op.touched();
  for (Qubit q : all)
    require(q < num_qubits, "qubit_in_range",
            "qubit " + std::to_string(q) + " >= " + std::to_string(num_qubits));
  std::sort(all.begin(), all.end());
  require(std::adjacent_find(all.begin(), all.end()) == all.end(), "targets_controls_disjoint",
          "gate touches a qubit twice");
}

inline bool is_unitary_kind(GateKind k) { return k != GateKind::Projector; }

namespace gates {

inline std::vector<Control> on(std::initializer_list<Qubit> qs) {
  std::vector<Control> out;
  for (Qubit q : qs) out.push_back({q, true});
  return out;
}

inline GateOp x(Qubit t) { return {GateKind::X, {t}, {}, 0.0}; }
inline GateOp h(Qubit t) { return {GateKind::H, {t}, {}, 0.0}; }
inline GateOp cnot(Qubit c, Qubit t, bool on_one = true) {
  return {GateKind::CNOT, {t}, {{c, on_one}}, 0.0};
}
inline GateOp toffoli(Control c1, Control c2, Qubit t) {
  return {GateKind::Toffoli, {t}, {c1, c2}, 0.0};
}
inline GateOp toffoli(Qubit c1, Qubit c2, Qubit t) { return toffoli({c1, true}, {c2, true}, t); }

/// X on `t` conditioned on every control; normalizes to X/CNOT/Toffoli for
/// zero, one, or two controls so tallies classify it correctly.
inline GateOp mcx(std::vector<Control> controls, Qubit t) {
  GateKind k = GateKind::MCX;
  if (controls.empty()) k = GateKind::X;
  if (controls.size() == 1) k = GateKind::CNOT;
  if (controls.size() == 2) k = GateKind::Toffoli;
  if (k == GateKind::X) return x(t);
  return {k, {t}, std::move(controls), 0.0};
}

inline GateOp fredkin(Qubit c, Qubit a, Qubit b) { return {GateKind::Fredkin, {a, b}, {{c, true}}, 0.0}; }
inline GateOp swap(Qubit a, Qubit b) { return {GateKind::Fredkin, {a, b}, {}, 0.0}; }
inline GateOp rotation(Qubit t, double theta, std::vector<Control> controls = {}) {
  return {GateKind::Rotation, {t}, std::move(controls), theta};
}
inline GateOp phase(Qubit t, double theta, std::vector<Control> controls = {}) {
  return {GateKind::Phase, {t}, std::move(controls), theta};
}
inline GateOp z(Qubit t) { return phase(t, std::numbers::pi); }
inline GateOp projector(Qubit t, int bit) {
  return {GateKind::Projector, {t}, {}, static_cast<double>(bit)};
}

}  // namespace gates

inline GateOp inverse(const GateOp& op) {
  require(is_unitary_kind(op.kind), "unitary_only", "projector has no inverse");
  GateOp out = op;
  if (op.kind == GateKind::Rotation || op.kind == GateKind::Phase) out.param = -op.param;
  return out;
}

/// Per-gate contribution to the resource tally.
///
/// Toffoli-class gates are counted two ways: `t_standard` uses 7 T per
/// logical Toffoli; `t_count` uses 4 T per Toffoli/Fredkin on compute and 0 T
/// on gates flagged `uncompute` (measurement-assisted uncomputation with a
/// stored ancilla). Multi-controlled gates with k controls compile to a
/// V-chain of 2k-3 Toffolis whose inner uncompute half is free under the
/// 4-T convention, giving 4(k-1).
struct GateCost {
  unsigned clifford = 0;
  unsigned toffoli = 0;
  unsigned t_count = 0;
  unsigned t_standard = 0;
  unsigned rotation = 0;
};

namespace detail {

inline bool angle_multiple_of(double theta, double unit) {
  const double r = theta / unit;
  return std::abs(r - std::round(r)) < 1e-12;
}

inline GateCost multi_controlled(std::size_t k, bool uncompute, unsigned extra_clifford = 0) {
  GateCost c;
  c.clifford = extra_clifford;
  if (k <= 1) {
    c.clifford += 1;
    return c;
  }
  c.toffoli = static_cast<unsigned>(2 * k - 3);
  c.t_standard = 7 * c.toffoli;
  c.t_count = uncompute ? 0 : static_cast<unsigned>(4 * (k - 1));
  return c;
}

}  // namespace detail

inline GateCost gate_cost(const GateOp& op) {
  const std::size_t k = op.controls.size();
  switch (op.kind) {
    case GateKind::X:
    case GateKind::H: return GateCost{1, 0, 0, 0, 0};
    case GateKind::CNOT:
    case GateKind::Toffoli:
    case GateKind::MCX: return detail::multi_controlled(k, op.uncompute);
    case GateKind::Fredkin:
      if (k == 0) return GateCost{1, 0, 0, 0, 0};
      return detail::multi_controlled(k + 1, op.uncompute, 2);
    case GateKind::Rotation: return GateCost{0, 0, 0, 0, 1};
    case GateKind::Phase: {
      const double pi = std::numbers::pi;
      if (k == 0) {
        if (detail::angle_multiple_of(op.param, pi / 2)) return GateCost{1, 0, 0, 0, 0};
        if (detail::angle_multiple_of(op.param, pi / 4)) return GateCost{0, 0, 1, 1, 0};
        return GateCost{0, 0, 0, 0, 1};
      }
      if (!detail::angle_multiple_of(op.param, 2 * pi) && detail::angle_multiple_of(op.param, pi))
        return detail::multi_controlled(k, op.uncompute);
      if (detail::angle_multiple_of(op.param, 2 * pi)) return GateCost{1, 0, 0, 0, 0};
      return GateCost{0, 0, 0, 0, 1};
    }
    case GateKind::Projector: return GateCost{};
  }
  return GateCost{};
}

}  // namespace fermiprep
