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
#include <cstdint>
#include <string>
#include <vector>

#include "fermiprep/antisym.hpp"
#include "fermiprep/errors.hpp"
#include "fermiprep/qcompare.hpp"
#include "fermiprep/simcore.hpp"

namespace fermiprep::fyshuffle {

struct ShuffleJob {
  unsigned eta = 1;
  std::uint64_t n_orbitals = 2;
  std::vector<BasisIndex> input_values;
  qcompare::Variant variant = qcompare::Variant::Parallel;
};

inline unsigned index_width(unsigned eta) { return ceil_log2(eta); }

/// choice (eta, unary), index (eta x ceil log2 eta), input (eta x ceil log2 N),
/// scratch (oracle output then oracle scratch).
inline RegisterLayout shuffle_layout(unsigned eta, std::uint64_t n_orbitals,
                                     qcompare::Variant v = qcompare::Variant::Parallel) {
  const unsigned d = antisym::target_width(n_orbitals);
  RegisterLayout l;
  l.add("choice", 1, eta);
  l.add("index", index_width(eta), eta);
  l.add("input", d, eta);
  l.add("scratch", 1, 1 + static_cast<unsigned>(qcompare::oracle_scratch_size(d, v)));
  return l;
}

/// R_l = [[1, -sqrt l], [sqrt l, 1]] / sqrt(l + 1) as a rotation angle.
inline double rotation_angle(unsigned l) { return std::asin(std::sqrt(l / (l + 1.0))); }

/// Choice qubit for unary value l (qubit l of the choice register).
inline Qubit choice_qubit(const RegisterLayout& l, unsigned ell) { return l.get("choice").qubit(ell, 0); }

/// |null> -> (1/sqrt(k+1)) sum_{l<=k} |l>: rotation cascade into the
/// "qubits 0..l set" encoding, then CNOTs down to one-hot.
inline void append_prepare_choice(Circuit& c, const RegisterLayout& l, unsigned k) {
  require(k >= 1 && k < l.get("choice").element_count, "choice_k_range", "need 1 <= k < eta");
  c.append(gates::x(choice_qubit(l, 0)));
  c.append(gates::rotation(choice_qubit(l, 1), rotation_angle(k)));
  for (unsigned ell = 1; ell < k; ++ell)
    c.append(gates::rotation(choice_qubit(l, ell + 1), rotation_angle(k - ell), {{choice_qubit(l, ell), true}}));
  // ascending: each control is read before it becomes a target
  for (unsigned ell = 1; ell <= k; ++ell) c.append(gates::cnot(choice_qubit(l, ell), choice_qubit(l, ell - 1)));
}

/// For every c < k, controlled on choice[c], swap elements c and k of `target`.
inline void append_selected_swap(Circuit& c, const RegisterLayout& l, unsigned k, const std::string& target) {
  const auto& t = l.get(target);
  for (unsigned ch = 0; ch < k; ++ch)
    for (unsigned b = 0; b < t.element_width; ++b)
      c.append(gates::fredkin(choice_qubit(l, ch), t.qubit(ch, b), t.qubit(k, b)));
}

/// -1 whenever choice encodes a value below k.
inline void append_conditional_phase(Circuit& c, const RegisterLayout& l, unsigned k) {
  for (unsigned ell = 0; ell < k; ++ell) c.append(gates::z(choice_qubit(l, ell)));
}

/// NOT choice[l] when index[l] == k, for l = 0..k.
inline void append_reset_choice(Circuit& c, const RegisterLayout& l, unsigned k) {
  const auto& index = l.get("index");
  for (unsigned ell = 0; ell <= k; ++ell) {
    std::vector<Control> ctl;
    for (unsigned b = 0; b < index.element_width; ++b) ctl.push_back({index.qubit(ell, b), ((k >> b) & 1U) != 0});
    c.append(gates::mcx(ctl, choice_qubit(l, ell)));
  }
}

inline void append_fy_block(Circuit& c, const RegisterLayout& l, unsigned k) {
  append_prepare_choice(c, l, k);
  append_selected_swap(c, l, k, "index");
  append_selected_swap(c, l, k, "input");
  append_conditional_phase(c, l, k);
  append_reset_choice(c, l, k);
}

/// Controlled decrement mod 2^w of `value` (LSB first). Bit i flips when
/// the control is set and bits below i are all zero; the running AND of
/// those conditions lives in w-1 clean `ancilla` qubits.
inline void append_decrement(Circuit& c, Qubit control, std::span<const Qubit> value,
                             std::span<const Qubit> ancilla) {
  const std::size_t w = value.size();
  if (w == 0) return;
  require(ancilla.size() + 1 >= w, "decrement_ancillas", "decrement needs width-1 ancillas");
  std::vector<GateOp> chain;
  for (std::size_t i = 0; i + 1 < w; ++i)
    chain.push_back(gates::toffoli({i == 0 ? control : ancilla[i - 1], true}, {value[i], false}, ancilla[i]));
  c.append(chain);
  for (std::size_t i = w; i-- > 1;) {
    c.append(gates::cnot(ancilla[i - 1], value[i]));
    GateOp undo = chain[i - 1];
    undo.uncompute = true;
    c.append(undo);
  }
  c.append(gates::cnot(control, value[0]));
}

/// Standalone decrement on registers control, value(width), ancilla(width-1).
inline Circuit build_decrement(unsigned width) {
  require(width >= 1, "decrement_width", "width must be >= 1");
  RegisterLayout l;
  l.add("control", 1);
  l.add("value", width);
  l.add("ancilla", 1, width - 1);
  Circuit c(l);
  append_decrement(c, l.get("control").first, l.get("value").element_qubits(0), l.get("ancilla").qubits());
  return c;
}

/// For every ordered pair l != l', decrement index[l] when
/// input[l] > input[l']. index[l] holds the rank of input[l], so this
/// clears it. Freed choice qubits serve as decrement ancillas.
inline void append_detangle(Circuit& c, const RegisterLayout& l, qcompare::Variant v) {
  const auto& input = l.get("input");
  const auto& index = l.get("index");
  const unsigned eta = input.element_count;
  if (eta < 2) return;
  const auto scratch = l.get("scratch").qubits();
  const Qubit out = scratch[0];
  const std::span<const Qubit> oracle_scratch = std::span<const Qubit>(scratch).subspan(1);
  const auto choice = l.get("choice").qubits();
  for (unsigned a = 0; a < eta; ++a)
    for (unsigned b = 0; b < eta; ++b) {
      if (a == b) continue;
      const auto x = input.element_qubits(a);
      const auto y = input.element_qubits(b);
      qcompare::append_comparison_oracle(c, x, y, out, oracle_scratch, v);
      append_decrement(c, out, index.element_qubits(a), choice);
      qcompare::append_comparison_oracle(c, x, y, out, oracle_scratch, v);
    }
}

/// index <- |0, 1, ..., eta-1>
inline void append_index_init(Circuit& c, const RegisterLayout& l) {
  const auto& index = l.get("index");
  for (unsigned e = 0; e < index.element_count; ++e)
    for (unsigned b = 0; b < index.element_width; ++b)
      if ((e >> b) & 1U) c.append(gates::x(index.qubit(e, b)));
}

/// The whole shuffle as one circuit (initialization, blocks, detangle).
inline Circuit build_shuffle_circuit(unsigned eta, std::uint64_t n_orbitals,
                                     qcompare::Variant v = qcompare::Variant::Parallel) {
  const auto l = shuffle_layout(eta, n_orbitals, v);
  Circuit c(l);
  append_index_init(c, l);
  for (unsigned k = 1; k < eta; ++k) append_fy_block(c, l, k);
  append_detangle(c, l, v);
  return c;
}

struct ShuffleResult {
  Statevector state{0};                  // over "input" only
  std::vector<double> choice_residuals;  // after each block
  std::vector<ResourceTally> block_tallies;
  ResourceTally detangle_tally;
  ResourceTally resources;
  double index_residual = 0.0;
  double scratch_residual = 0.0;
  double dropped_mass = 0.0;
  int schmidt_index_vs_input = 1;
  unsigned qubits = 0;
};

inline ShuffleResult shuffle_antisymmetrize(const ShuffleJob& job) {
  require(job.eta >= 1, "eta_positive", "eta must be >= 1");
  require(job.n_orbitals >= 2 && job.n_orbitals >= job.eta, "orbitals_cover_eta", "need N >= max(2, eta)");
  require(job.input_values.size() == job.eta, "input_length", "need exactly eta input values");
  antisym::require_ascending(job.input_values, job.n_orbitals);

  const auto l = shuffle_layout(job.eta, job.n_orbitals, job.variant);
  ShuffleResult out;
  out.qubits = l.num_qubits();
  Statevector::check_cap(out.qubits);

  const auto& input = l.get("input");
  Statevector state = Statevector::basis(
      l, RegisterLayout::with_value(0, input, pack_elements(job.input_values, input.element_width)));

  Circuit init(l);
  append_index_init(init, l);
  run(state, init);
  out.resources = init.tally();
  for (unsigned k = 1; k < job.eta; ++k) {
    Circuit block(l);
    append_fy_block(block, l, k);
    run(state, block);
    out.block_tallies.push_back(block.tally());
    out.resources += block.tally();
    out.choice_residuals.push_back(mass_outside_zero(state, "choice"));
  }
  Circuit det(l);
  append_detangle(det, l, job.variant);
  run(state, det);
  out.detangle_tally = det.tally();
  out.resources += det.tally();

  out.index_residual = mass_outside_zero(state, "index");
  out.scratch_residual = mass_outside_zero(state, "scratch");
  if (job.eta >= 2 && index_width(job.eta) > 0)
    out.schmidt_index_vs_input = schmidt_rank_across(state, {"index"}, 1e-10);
  out.state = drop_zero_registers(state, {"choice", "index", "scratch"}, &out.dropped_mass);
  out.state.normalize();
  const BasisIndex identity = pack_elements(job.input_values, input.element_width);
  if (std::abs(out.state[identity]) > 0.0) out.state.fix_global_phase(identity);
  return out;
}

}  // namespace fermiprep::fyshuffle
