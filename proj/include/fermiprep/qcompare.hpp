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
#include <span>
#include <vector>

#include "fermiprep/simcore.hpp"

// Reversible comparison circuits: the bitwise comparison oracle (sequential
// and log-depth variants), the Compare2 slice reducer, the compare-finish
// flag splitter, and controlled register swaps with optional control fan-out.
//
// Register bit spans are passed least significant bit first.

namespace fermiprep::qcompare {

enum class Variant { Sequential, Parallel };

inline std::string_view to_string(Variant v) {
  return v == Variant::Parallel ? "parallel" : "sequential";
}

inline Variant variant_from_string(std::string_view s) {
  if (s == "parallel") return Variant::Parallel;
  if (s == "sequential") return Variant::Sequential;
  throw ValidationError("compare_variant", "unknown comparator variant '" + std::string(s) + "'");
}

/// Scratch qubits the oracle needs beyond A, B and the output qubit.
inline std::size_t oracle_scratch_size(unsigned d, Variant v) {
  if (v == Variant::Sequential) return 2 * static_cast<std::size_t>(d);
  return d == 0 ? 0 : d - 1;
}

inline std::size_t swap_fanout_size(unsigned d, bool fanout) { return fanout && d > 0 ? d - 1 : 0; }

/// Appends Compare2 on one slice. On exit `xl` and `yl` hold single bits
/// (x', y') with sign(x' - y') = sign(x - y) for x = xl + 2 xh, y = yl + 2 yh;
/// `temp` (initially 0) holds xh ^ yh and the high qubits hold leftovers.
inline void append_compare2(std::vector<GateOp>& ops, Qubit xh, Qubit xl, Qubit yh, Qubit yl,
                            Qubit temp) {
  ops.push_back(gates::cnot(xh, temp));
  ops.push_back(gates::cnot(yh, temp));
  ops.push_back(gates::fredkin(temp, xh, xl));
  ops.push_back(gates::fredkin(temp, yh, yl));
}

namespace detail {

// Forward half of the log-depth comparison. Returns the qubits holding the
// final (a, b) bits.
inline std::pair<Qubit, Qubit> parallel_compute(std::vector<GateOp>& ops, std::span<const Qubit> a,
                                                std::span<const Qubit> b,
                                                std::span<const Qubit> scratch) {
  // Layer entries are (x, y) qubit pairs, least significant slice first.
  // Missing high entries stand for zero padding; a slice whose high half
  // is padding passes its low half through unchanged.
  std::vector<std::pair<Qubit, Qubit>> layer;
  for (std::size_t i = 0; i < a.size(); ++i) layer.emplace_back(a[i], b[i]);
  std::size_t next_temp = 0;
  while (layer.size() > 1) {
    std::vector<std::pair<Qubit, Qubit>> up;
    for (std::size_t i = 0; i < layer.size(); i += 2) {
      if (i + 1 >= layer.size()) {
        up.push_back(layer[i]);
        continue;
      }
      const auto [xl, yl] = layer[i];
      const auto [xh, yh] = layer[i + 1];
      append_compare2(ops, xh, xl, yh, yl, scratch[next_temp++]);
      up.emplace_back(xl, yl);
    }
    layer = std::move(up);
  }
  return layer.front();
}

inline std::pair<Qubit, Qubit> sequential_compute(std::vector<GateOp>& ops,
                                                  std::span<const Qubit> a,
                                                  std::span<const Qubit> b,
                                                  std::span<const Qubit> scratch) {
  const std::size_t d = a.size();
  auto ap = scratch.subspan(0, d);
  auto bp = scratch.subspan(d, d);
  // Step k examines bit d-1-k (most significant first).
  for (std::size_t k = 0; k < d; ++k) {
    const Qubit ai = a[d - 1 - k], bi = b[d - 1 - k];
    if (k == 0) {
      ops.push_back(gates::toffoli({ai, true}, {bi, false}, ap[0]));
      ops.push_back(gates::toffoli({ai, false}, {bi, true}, bp[0]));
      continue;
    }
    ops.push_back(gates::cnot(ap[k - 1], ap[k]));
    ops.push_back(gates::cnot(bp[k - 1], bp[k]));
    ops.push_back(gates::mcx({{ap[k - 1], false}, {bp[k - 1], false}, {ai, true}, {bi, false}}, ap[k]));
    ops.push_back(gates::mcx({{ap[k - 1], false}, {bp[k - 1], false}, {ai, false}, {bi, true}}, bp[k]));
  }
  return {ap[d - 1], bp[d - 1]};
}

}  // namespace detail

/// Appends the comparison oracle: out ^= [A > B]. A, B and scratch are
/// restored; scratch must start in |0...0>.
inline void append_comparison_oracle(Circuit& c, std::span<const Qubit> a, std::span<const Qubit> b,
                                     Qubit out, std::span<const Qubit> scratch, Variant v) {
  require(a.size() == b.size() && !a.empty(), "compare_widths", "registers must share a width >= 1");
  require(scratch.size() >= oracle_scratch_size(static_cast<unsigned>(a.size()), v), "compare_scratch",
          "not enough scratch qubits for the comparison oracle");
  std::vector<GateOp> compute;
  const auto [fa, fb] = v == Variant::Parallel ? detail::parallel_compute(compute, a, b, scratch)
                                               : detail::sequential_compute(compute, a, b, scratch);
  c.append(compute);
  if (v == Variant::Parallel)
    c.append(gates::toffoli({fa, true}, {fb, false}, out));
  else
    c.append(gates::cnot(fa, out));
  c.append_uncompute(compute);
}

/// Controlled swap of two equal-width registers. With a non-empty `fanout`
/// span (d-1 zeroed qubits) the control is first copied by a CNOT doubling
/// tree so every bit swap runs in parallel, then the copies are erased.
inline void append_controlled_register_swap(Circuit& c, Qubit control, std::span<const Qubit> a,
                                            std::span<const Qubit> b, std::span<const Qubit> fanout) {
  require(a.size() == b.size(), "swap_widths", "registers must share a width");
  const std::size_t d = a.size();
  if (fanout.empty() || d <= 1) {
    for (std::size_t i = 0; i < d; ++i) c.append(gates::fredkin(control, a[i], b[i]));
    return;
  }
  require(fanout.size() >= d - 1, "swap_fanout", "fan-out needs d-1 ancillas");
  std::vector<Qubit> holders{control};
  std::vector<GateOp> copy;
  while (holders.size() < d) {
    const std::size_t have = holders.size();
    for (std::size_t h = 0; h < have && holders.size() < d; ++h) {
      const Qubit dst = fanout[holders.size() - 1];
      copy.push_back(gates::cnot(holders[h], dst));
      holders.push_back(dst);
    }
  }
  c.append(copy);
  for (std::size_t i = 0; i < d; ++i) c.append(gates::fredkin(holders[i], a[i], b[i]));
  c.append_uncompute(copy);
}

/// Standalone oracle on registers a(d), b(d), out, scratch.
inline Circuit build_comparison_oracle(unsigned d, Variant v) {
  require(d >= 1, "compare_width_positive", "d must be >= 1");
  RegisterLayout layout;
  layout.add("a", d);
  layout.add("b", d);
  layout.add("out", 1);
  layout.add("scratch", 1, static_cast<unsigned>(oracle_scratch_size(d, v)));
  Circuit c(layout);
  const auto a = layout.get("a").element_qubits(0);
  const auto b = layout.get("b").element_qubits(0);
  append_comparison_oracle(c, a, b, layout.get("out").first, layout.get("scratch").qubits(), v);
  return c;
}

/// Compare2 on registers x(2), y(2), temp(1). Outputs land in bit 0 of x and y.
inline Circuit build_compare2() {
  RegisterLayout layout;
  layout.add("x", 2);
  layout.add("y", 2);
  layout.add("temp", 1);
  Circuit c(layout);
  const auto& x = layout.get("x");
  const auto& y = layout.get("y");
  std::vector<GateOp> ops;
  append_compare2(ops, x.qubit(0, 1), x.qubit(0, 0), y.qubit(0, 1), y.qubit(0, 0), layout.get("temp").first);
  c.append(ops);
  return c;
}

/// Splits final comparison bits (a, b) into three flags on registers
/// a, b, equal, ascending (a < b), descending (a > b). Exactly one flag is
/// raised on every basis input.
inline Circuit build_compare_finish() {
  RegisterLayout layout;
  for (const char* n : {"a", "b", "equal", "ascending", "descending"}) layout.add(n, 1);
  Circuit c(layout);
  const Qubit a = layout.get("a").first, b = layout.get("b").first;
  c.append(gates::toffoli({a, true}, {b, false}, layout.get("descending").first));
  c.append(gates::toffoli({a, false}, {b, true}, layout.get("ascending").first));
  c.append(gates::toffoli({a, true}, {b, true}, layout.get("equal").first));
  c.append(gates::toffoli({a, false}, {b, false}, layout.get("equal").first));
  return c;
}

/// Controlled swap on registers a(d), b(d), control, fanout(d-1 if used).
inline Circuit build_controlled_register_swap(unsigned d, bool fanout) {
  require(d >= 1, "compare_width_positive", "d must be >= 1");
  RegisterLayout layout;
  layout.add("a", d);
  layout.add("b", d);
  layout.add("control", 1);
  layout.add("fanout", 1, static_cast<unsigned>(swap_fanout_size(d, fanout)));
  Circuit c(layout);
  append_controlled_register_swap(c, layout.get("control").first, layout.get("a").element_qubits(0),
                                  layout.get("b").element_qubits(0), layout.get("fanout").qubits());
  return c;
}

struct ComparatorCircuitBundle {
  Circuit oracle_circuit;
  Circuit swap_circuit;
  Circuit full_comparator;
  std::size_t ancilla_count = 0;  // scratch qubits excluding the record qubit
  Variant variant = Variant::Parallel;
  bool fanout = true;
};

/// Layout of a single comparator: a(d), b(d), record(1), scratch.
inline RegisterLayout comparator_layout(unsigned d, Variant v, bool fanout) {
  RegisterLayout layout;
  layout.add("a", d);
  layout.add("b", d);
  layout.add("record", 1);
  layout.add("scratch", 1,
             static_cast<unsigned>(oracle_scratch_size(d, v) + swap_fanout_size(d, fanout)));
  return layout;
}

/// Appends one full comparator: record ^= [A > B], then swap on record.
/// `scratch` holds the oracle scratch followed by the fan-out ancillas.
inline void append_comparator(Circuit& c, std::span<const Qubit> a, std::span<const Qubit> b,
                              Qubit record, std::span<const Qubit> scratch, Variant v, bool fanout) {
  const std::size_t d = a.size();
  const std::size_t k = oracle_scratch_size(static_cast<unsigned>(d), v);
  append_comparison_oracle(c, a, b, record, scratch.subspan(0, k), v);
  append_controlled_register_swap(c, record, a, b,
                                  fanout ? scratch.subspan(k, swap_fanout_size(static_cast<unsigned>(d), true))
                                         : std::span<const Qubit>{});
}

inline ComparatorCircuitBundle build_full_comparator(unsigned d, Variant v = Variant::Parallel,
                                                     bool fanout = true) {
  require(d >= 1, "compare_width_positive", "d must be >= 1");
  const RegisterLayout layout = comparator_layout(d, v, fanout);
  const auto a = layout.get("a").element_qubits(0);
  const auto b = layout.get("b").element_qubits(0);
  const Qubit record = layout.get("record").first;
  const auto scratch = layout.get("scratch").qubits();
  const std::size_t k = oracle_scratch_size(d, v);
  const std::span<const Qubit> sspan(scratch);

  ComparatorCircuitBundle out{Circuit(layout), Circuit(layout), Circuit(layout),
                              scratch.size(), v, fanout};
  append_comparison_oracle(out.oracle_circuit, a, b, record, sspan.subspan(0, k), v);
  append_controlled_register_swap(out.swap_circuit, record, a, b,
                                  fanout ? sspan.subspan(k) : std::span<const Qubit>{});
  out.full_comparator.append(out.oracle_circuit);
  out.full_comparator.append(out.swap_circuit);
  return out;
}

}  // namespace fermiprep::qcompare
