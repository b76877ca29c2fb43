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
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fermiprep/errors.hpp"
#include "fermiprep/simcore/circuit.hpp"
#include "fermiprep/simcore/gate.hpp"
#include "fermiprep/simcore/layout.hpp"

namespace fermiprep {

using Amplitude = std::complex<double>;

/// Dense state over `num_qubits()` qubits; qubit 0 is the least significant
/// bit of the basis index.
class Statevector {
 public:
  explicit Statevector(unsigned num_qubits) : num_qubits_(num_qubits) {
    check_cap(num_qubits);
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
  }

  explicit Statevector(RegisterLayout layout) : Statevector(layout.num_qubits()) {
    layout_ = std::move(layout);
  }

  static Statevector basis(RegisterLayout layout, BasisIndex index) {
    Statevector s(std::move(layout));
    require(index < s.dimension(), "basis_in_range", "basis index exceeds dimension");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  static Statevector from_amplitudes(RegisterLayout layout, std::vector<Amplitude> amps) {
    Statevector s(std::move(layout));
    require(amps.size() == s.dimension(), "amplitude_length",
            "expected 2^num_qubits amplitudes, got " + std::to_string(amps.size()));
    s.amps_ = std::move(amps);
    return s;
  }

  unsigned num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  const RegisterLayout& layout() const noexcept { return layout_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  const Amplitude& operator[](BasisIndex i) const { return amps_[i]; }
  Amplitude& operator[](BasisIndex i) { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  void normalize() {
    const double n = std::sqrt(norm_squared());
    require(n > 0.0, "nonzero_norm", "cannot normalize the zero vector");
    for (auto& a : amps_) a /= n;
  }

  /// Multiplies by a global phase so that amplitude `i` is real and positive.
  void fix_global_phase(BasisIndex i) {
    const double m = std::abs(amps_[i]);
    require(m > 0.0, "phase_reference_nonzero", "reference amplitude is zero");
    const Amplitude u = std::conj(amps_[i]) / m;
    for (auto& a : amps_) a *= u;
  }

  static void check_cap(unsigned n) {
    if (n > kMaxQubits)
      throw CapacityError("statevector of " + std::to_string(n) + " qubits exceeds the " +
                          std::to_string(kMaxQubits) + "-qubit cap");
  }

 private:
  unsigned num_qubits_ = 0;
  RegisterLayout layout_;
  std::vector<Amplitude> amps_;
};

namespace detail {

struct FixedBits {
  std::vector<unsigned> positions;  // ascending
  BasisIndex value = 0;
};

inline FixedBits fixed_bits(const std::vector<std::pair<Qubit, bool>>& bits) {
  FixedBits f;
  for (const auto& [q, v] : bits) {
    f.positions.push_back(q);
    if (v) f.value |= BasisIndex{1} << q;
  }
  std::sort(f.positions.begin(), f.positions.end());
  return f;
}

inline BasisIndex deposit(BasisIndex k, const FixedBits& f) {
  for (unsigned p : f.positions) {
    const BasisIndex low = k & ((BasisIndex{1} << p) - 1);
    k = ((k >> p) << (p + 1)) | low;
  }
  return k | f.value;
}

/// Calls fn(index) for every basis index whose fixed bits match.
template <typename Fn>
void for_each_matching(unsigned num_qubits, const FixedBits& f, Fn&& fn) {
  const BasisIndex count = BasisIndex{1} << (num_qubits - f.positions.size());
  for (BasisIndex k = 0; k < count; ++k) fn(deposit(k, f));
}

inline std::vector<std::pair<Qubit, bool>> control_bits(const GateOp& op) {
  std::vector<std::pair<Qubit, bool>> out;
  for (const auto& c : op.controls) out.emplace_back(c.qubit, c.on_one);
  return out;
}

}  // namespace detail

/// Applies `op` in place. Projectors renormalize and fail on a vanishing branch.
inline void apply(Statevector& state, const GateOp& op) {
  validate(op, state.num_qubits());
  auto amps = state.amplitudes();
  const unsigned n = state.num_qubits();
  auto bits = detail::control_bits(op);
  const Qubit t = op.targets[0];
  const BasisIndex tbit = BasisIndex{1} << t;

  switch (op.kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::Toffoli:
    case GateKind::MCX: {
      bits.emplace_back(t, false);
      detail::for_each_matching(n, detail::fixed_bits(bits),
                                [&](BasisIndex i) { std::swap(amps[i], amps[i | tbit]); });
      break;
    }
    case GateKind::Fredkin: {
      const Qubit b = op.targets[1];
      bits.emplace_back(t, true);
      bits.emplace_back(b, false);
      const BasisIndex flip = tbit | (BasisIndex{1} << b);
      detail::for_each_matching(n, detail::fixed_bits(bits),
                                [&](BasisIndex i) { std::swap(amps[i], amps[i ^ flip]); });
      break;
    }
    case GateKind::H:
    case GateKind::Rotation: {
      double m00, m01, m10, m11;
      if (op.kind == GateKind::H) {
        m00 = m01 = m10 = 1.0 / std::sqrt(2.0);
        m11 = -m00;
      } else {
        m00 = m11 = std::cos(op.param);
        m10 = std::sin(op.param);
        m01 = -m10;
      }
      bits.emplace_back(t, false);
      detail::for_each_matching(n, detail::fixed_bits(bits), [&](BasisIndex i) {
        const Amplitude a0 = amps[i], a1 = amps[i | tbit];
        amps[i] = m00 * a0 + m01 * a1;
        amps[i | tbit] = m10 * a0 + m11 * a1;
      });
      break;
    }
    case GateKind::Phase: {
      const Amplitude ph = std::polar(1.0, op.param);
      bits.emplace_back(t, true);
      detail::for_each_matching(n, detail::fixed_bits(bits), [&](BasisIndex i) { amps[i] *= ph; });
      break;
    }
    case GateKind::Projector: {
      const bool keep_one = op.param != 0.0;
      double mass = 0.0;
      for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (((i & tbit) != 0) != keep_one) amps[i] = 0.0;
        else mass += std::norm(amps[i]);
      }
      if (mass < 1e-15)
        throw ValidationError("projection_nonzero", "projected branch has vanishing probability");
      const double s = 1.0 / std::sqrt(mass);
      for (auto& a : amps) a *= s;
      break;
    }
  }
}

inline Statevector applied(Statevector state, const GateOp& op) {
  apply(state, op);
  return state;
}

/// Runs every gate of `circuit` in order.
inline void run(Statevector& state, const Circuit& circuit) {
  require(circuit.num_qubits() <= state.num_qubits(), "circuit_fits_state",
          "circuit is wider than the state");
  for (const auto& op : circuit.ops()) apply(state, op);
}

inline Statevector ran(Statevector state, const Circuit& circuit) {
  run(state, circuit);
  return state;
}

/// Born distribution of a register's integer value.
inline std::vector<double> register_distribution(const Statevector& state, const Register& reg) {
  std::vector<double> p(std::size_t{1} << reg.span(), 0.0);
  const auto amps = state.amplitudes();
  for (BasisIndex i = 0; i < amps.size(); ++i)
    p[RegisterLayout::value(i, reg)] += std::norm(amps[i]);
  return p;
}

/// Total probability that `reg` holds a nonzero value.
inline double mass_outside_zero(const Statevector& state, const Register& reg) {
  double m = 0.0;
  const auto amps = state.amplitudes();
  for (BasisIndex i = 0; i < amps.size(); ++i)
    if (RegisterLayout::value(i, reg) != 0) m += std::norm(amps[i]);
  return m;
}

inline double mass_outside_zero(const Statevector& state, std::string_view reg) {
  return mass_outside_zero(state, state.layout().get(reg));
}

struct MeasurementResult {
  BasisIndex outcome = 0;
  Statevector post_state;
  double probability = 0.0;
};

/// Samples a register value from the Born distribution with a seeded
/// generator and returns the renormalized post-measurement state.
inline MeasurementResult measure_register(const Statevector& state, std::string_view name,
                                          std::uint64_t rng_seed) {
  const Register& reg = state.layout().get(name);
  const auto dist = register_distribution(state, reg);
  double total = 0.0;
  for (double p : dist) total += p;
  if (total < 1e-15)
    throw ValidationError("state_nonzero", "register '" + reg.name + "' carries no probability mass");

  std::mt19937_64 rng(rng_seed);
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  BasisIndex outcome = 0;
  double acc = 0.0;
  for (BasisIndex v = 0; v < dist.size(); ++v) {
    if (dist[v] <= 0.0) continue;
    outcome = v;
    acc += dist[v];
    if (u < acc) break;
  }

  MeasurementResult r{outcome, state, dist[outcome] / total};
  auto amps = r.post_state.amplitudes();
  const double s = 1.0 / std::sqrt(dist[outcome]);
  for (BasisIndex i = 0; i < amps.size(); ++i)
    amps[i] = RegisterLayout::value(i, reg) == outcome ? amps[i] * s : Amplitude{0.0};
  return r;
}

/// Restricts `state` to the branch where every register in `dropped` is
/// zero and repacks the remaining registers (in layout order) from qubit 0.
/// `residual` receives the probability mass that was discarded.
inline Statevector drop_zero_registers(const Statevector& state,
                                       const std::vector<std::string>& dropped,
                                       double* residual = nullptr) {
  RegisterLayout out_layout;
  std::vector<const Register*> kept;
  BasisIndex drop_mask = 0;
  for (const auto& r : state.layout().registers()) {
    if (std::find(dropped.begin(), dropped.end(), r.name) != dropped.end()) {
      drop_mask |= r.mask();
    } else {
      out_layout.add(r.name, r.element_width, r.element_count);
      kept.push_back(&r);
    }
  }
  Statevector out(out_layout);
  auto dst = out.amplitudes();
  dst[0] = 0.0;
  double lost = 0.0;
  const auto src = state.amplitudes();
  for (BasisIndex i = 0; i < src.size(); ++i) {
    if (i & drop_mask) {
      lost += std::norm(src[i]);
      continue;
    }
    BasisIndex j = 0;
    for (std::size_t k = 0; k < kept.size(); ++k)
      j = RegisterLayout::with_value(j, out.layout().registers()[k], RegisterLayout::value(i, *kept[k]));
    dst[j] = src[i];
  }
  if (residual) *residual = lost;
  return out;
}

/// |<a|b>|^2 over raw amplitudes.
inline double fidelity(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  require(a.size() == b.size(), "same_dimension", "fidelity of vectors with different sizes");
  Amplitude ip{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
  return std::norm(ip);
}

inline double fidelity(const Statevector& a, const Statevector& b) {
  return fidelity(a.amplitudes(), b.amplitudes());
}

}  // namespace fermiprep
