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
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fermiprep/errors.hpp"
#include "fermiprep/netgen.hpp"
#include "fermiprep/qcompare.hpp"
#include "fermiprep/simcore.hpp"

namespace fermiprep::antisym {

/// Smallest power of two >= eta^2 (at least 2).
inline std::uint64_t default_seed_alphabet(unsigned eta) {
  std::uint64_t f = 2;
  while (f < static_cast<std::uint64_t>(eta) * eta) f <<= 1;
  return f;
}

/// Bits per target element.
inline unsigned target_width(std::uint64_t n_orbitals) { return std::max(1U, ceil_log2(n_orbitals)); }

struct AntisymJob {
  unsigned eta = 1;
  std::uint64_t n_orbitals = 2;
  std::uint64_t f_eta = 0;  // 0 selects default_seed_alphabet(eta)
  netgen::Family family = netgen::Family::Bitonic;
  std::vector<BasisIndex> target_values;
  qcompare::Variant variant = qcompare::Variant::Parallel;
  bool fanout = true;
  unsigned attempt_limit = 16;

  std::uint64_t seed_alphabet() const { return f_eta == 0 ? default_seed_alphabet(eta) : f_eta; }
};

inline void require_ascending(const std::vector<BasisIndex>& v, std::uint64_t n_orbitals) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    require(v[i] < n_orbitals, "target_in_range",
            "target value " + std::to_string(v[i]) + " >= N=" + std::to_string(n_orbitals));
    if (i > 0)
      require(v[i - 1] < v[i], "target_strictly_ascending", "target values must be strictly ascending");
  }
}

inline void validate(const AntisymJob& job) {
  require(job.eta >= 1, "eta_positive", "eta must be >= 1");
  require(job.n_orbitals >= 2 && job.n_orbitals >= job.eta, "orbitals_cover_eta", "need N >= max(2, eta)");
  const auto f = job.seed_alphabet();
  require(is_power_of_two(f) && f >= 2, "f_power_of_two", "f(eta) must be a power of two >= 2");
  require(f >= static_cast<std::uint64_t>(job.eta) * job.eta, "f_at_least_eta_squared", "f(eta) must be >= eta^2");
  require(job.target_values.size() == job.eta, "target_length", "need exactly eta target values");
  require(job.attempt_limit >= 1, "attempt_limit_positive", "attempt limit must be >= 1");
  require_ascending(job.target_values, job.n_orbitals);
}

/// Upper bound eta(eta-1)/(2f) on the Step 3 failure probability.
inline double collision_bound(unsigned eta, std::uint64_t f) {
  return static_cast<double>(eta) * (eta - 1) / (2.0 * static_cast<double>(f));
}

/// Exact 1 - f!/((f-eta)! f^eta), from integer counts.
inline double exact_collision_probability(unsigned eta, std::uint64_t f) {
  if (eta > f) return 1.0;
  long double total = 1, distinct = 1;
  for (unsigned i = 0; i < eta; ++i) {
    total *= static_cast<long double>(f);
    distinct *= static_cast<long double>(f - i);
  }
  return static_cast<double>((total - distinct) / total);
}

// ---------------------------------------------------------------------------
// Steps 1-3: seed (eta x log2 f), record, scratch, check, flag

inline unsigned scratch_size(unsigned width, qcompare::Variant v, bool fanout) {
  return static_cast<unsigned>(
      std::max(qcompare::oracle_scratch_size(width, v), qcompare::swap_fanout_size(width, fanout)));
}

inline unsigned check_size(unsigned eta) { return eta < 2 ? 0 : (eta - 1) + (eta > 3 ? eta - 3 : 0); }

inline RegisterLayout seed_layout(unsigned eta, std::uint64_t f, std::size_t comparators,
                                  qcompare::Variant v, bool fanout) {
  const unsigned d = ceil_log2(f);
  RegisterLayout l;
  l.add("seed", d, eta);
  l.add("record", 1, static_cast<unsigned>(comparators));
  l.add("scratch", 1, scratch_size(d, v, fanout));
  l.add("check", 1, check_size(eta));
  l.add("flag", 1);
  return l;
}

/// Step 1 on its own: uniform superposition over all f^eta strings.
inline Statevector prepare_seed(unsigned eta, std::uint64_t f) {
  require(is_power_of_two(f) && f >= 2, "f_power_of_two", "f(eta) must be a power of two >= 2");
  RegisterLayout l;
  l.add("seed", ceil_log2(f), eta);
  Statevector s(l);
  for (Qubit q = 0; q < l.num_qubits(); ++q) apply(s, gates::h(q));
  return s;
}

/// One comparator per network entry: record[k] ^= [x_low > x_high], then a
/// controlled swap on record[k]. Oracle scratch and fan-out share qubits.
inline std::size_t append_network_sort(Circuit& c, const Register& data, const Register& record,
                                       std::span<const Qubit> scratch, const netgen::ComparatorSchedule& s,
                                       qcompare::Variant v, bool fanout) {
  const unsigned d = data.element_width;
  std::size_t k = 0;
  for (const auto& cmp : s.comparators()) {
    const auto lo = data.element_qubits(cmp.low);
    const auto hi = data.element_qubits(cmp.high);
    const Qubit r = record.qubit(static_cast<unsigned>(k), 0);
    qcompare::append_comparison_oracle(c, lo, hi, r, scratch.first(qcompare::oracle_scratch_size(d, v)), v);
    qcompare::append_controlled_register_swap(
        c, r, lo, hi, fanout ? scratch.first(qcompare::swap_fanout_size(d, true)) : std::span<const Qubit>{});
    ++k;
  }
  return k;
}

/// Step 4: comparators in reverse order, each a controlled swap on its
/// record bit, a -1 phase on that bit, then the oracle to clear it.
inline std::size_t append_reverse_sort(Circuit& c, const Register& data, const Register& record,
                                       std::span<const Qubit> scratch, const netgen::ComparatorSchedule& s,
                                       qcompare::Variant v, bool fanout) {
  const unsigned d = data.element_width;
  const auto cmps = s.comparators();
  for (std::size_t k = cmps.size(); k-- > 0;) {
    const auto lo = data.element_qubits(cmps[k].low);
    const auto hi = data.element_qubits(cmps[k].high);
    const Qubit r = record.qubit(static_cast<unsigned>(k), 0);
    qcompare::append_controlled_register_swap(
        c, r, lo, hi, fanout ? scratch.first(qcompare::swap_fanout_size(d, true)) : std::span<const Qubit>{});
    c.append(gates::z(r));
    qcompare::append_comparison_oracle(c, lo, hi, r, scratch.first(qcompare::oracle_scratch_size(d, v)), v);
  }
  return cmps.size();
}

/// Adjacent-equality bits on a sorted seed, OR-ed into `flag` by a balanced
/// tree. Returns the compute sequence; the caller uncomputes it.
inline std::vector<GateOp> collision_check_ops(const RegisterLayout& l) {
  const auto& seed = l.get("seed");
  const auto& check = l.get("check");
  const Qubit flag = l.get("flag").first;
  const unsigned eta = seed.element_count;
  std::vector<GateOp> ops;
  if (eta < 2) return ops;
  const unsigned m = eta - 1;
  for (unsigned parity = 0; parity < 2; ++parity)
    for (unsigned p = parity; p < m; p += 2) {
      const auto a = seed.element_qubits(p);
      const auto b = seed.element_qubits(p + 1);
      std::vector<GateOp> diff;
      for (unsigned i = 0; i < seed.element_width; ++i) diff.push_back(gates::cnot(a[i], b[i]));
      ops.insert(ops.end(), diff.begin(), diff.end());
      std::vector<Control> zero;
      for (Qubit q : b) zero.push_back({q, false});
      ops.push_back(gates::mcx(zero, check.qubit(p, 0)));
      ops.insert(ops.end(), diff.rbegin(), diff.rend());
    }
  if (m == 1) {
    ops.push_back(gates::cnot(check.qubit(0, 0), flag));
    return ops;
  }
  std::vector<Qubit> level;
  for (unsigned p = 0; p < m; ++p) level.push_back(check.qubit(p, 0));
  unsigned next_anc = m;
  while (level.size() > 1) {
    std::vector<Qubit> up;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      const Qubit t = level.size() == 2 ? flag : check.qubit(next_anc++, 0);
      ops.push_back(gates::toffoli({level[i], false}, {level[i + 1], false}, t));
      ops.push_back(gates::x(t));
      up.push_back(t);
    }
    if (level.size() % 2 == 1) up.push_back(level.back());
    level = std::move(up);
  }
  return ops;
}

struct RecordPreparation {
  unsigned eta = 1;
  std::uint64_t f_eta = 2;
  netgen::ComparatorSchedule schedule;
  std::vector<Amplitude> record;  // product factor over the record register
  double success_probability = 1.0;
  unsigned attempts = 0;
  unsigned qubits = 0;
  ResourceTally resources;          // Steps 1-3 including the check uncompute
  int schmidt_seed_vs_record = 1;   // across the seed | record cut after Step 3
  int schmidt_seed_record_vs_rest = 1;
  double dropped_mass = 0.0;        // scratch/check/flag mass discarded
  std::size_t comparators_emitted = 0;
};

/// Runs Steps 1-3 once and samples the repetition flag until it reads 0.
/// The record factor does not depend on the target, so one preparation
/// serves any number of Step 4 runs.
inline RecordPreparation prepare_record(unsigned eta, std::uint64_t f, netgen::Family family,
                                        std::uint64_t rng_seed, unsigned attempt_limit = 16,
                                        qcompare::Variant v = qcompare::Variant::Parallel, bool fanout = true,
                                        double schmidt_tolerance = 1e-10) {
  require(eta >= 1, "eta_positive", "eta must be >= 1");
  require(is_power_of_two(f) && f >= 2, "f_power_of_two", "f(eta) must be a power of two >= 2");
  RecordPreparation out;
  out.eta = eta;
  out.f_eta = f;
  out.schedule = netgen::generate(family, eta);
  const RegisterLayout l = seed_layout(eta, f, out.schedule.comparator_count(), v, fanout);
  out.qubits = l.num_qubits();
  Statevector::check_cap(out.qubits);

  Circuit c(l);
  for (Qubit q : l.get("seed").qubits()) c.append(gates::h(q));
  const auto scratch = l.get("scratch").qubits();
  out.comparators_emitted =
      append_network_sort(c, l.get("seed"), l.get("record"), scratch, out.schedule, v, fanout);
  const auto check = collision_check_ops(l);
  c.append(check);

  Statevector state(l);
  run(state, c);
  const auto dist = register_distribution(state, l.get("flag"));
  out.success_probability = dist[0];

  std::mt19937_64 rng(rng_seed);
  std::optional<MeasurementResult> m;
  while (!m) {
    if (out.attempts == attempt_limit)
      throw AttemptLimitError("no repetition-free seed after " + std::to_string(attempt_limit) + " attempts",
                              out.success_probability);
    ++out.attempts;
    auto r = measure_register(state, "flag", rng());
    if (r.outcome == 0) m.emplace(std::move(r));
  }

  Circuit undo(l);
  undo.append_uncompute(check);
  c.append_uncompute(check);
  out.resources = c.tally();

  Statevector post = std::move(m->post_state);
  run(post, undo);
  if (eta >= 2) {
    out.schmidt_seed_record_vs_rest = schmidt_rank_across(post, {"seed", "record"}, schmidt_tolerance);
  }
  const Statevector sr = drop_zero_registers(post, {"scratch", "check", "flag"}, &out.dropped_mass);
  if (eta >= 2) out.schmidt_seed_vs_record = schmidt_rank_across(sr, {"seed"}, schmidt_tolerance);

  // Read the record factor off the row of the largest amplitude.
  const auto amps = sr.amplitudes();
  const auto& seed = sr.layout().get("seed");
  const auto& rec = sr.layout().get("record");
  const BasisIndex peak = static_cast<BasisIndex>(
      std::max_element(amps.begin(), amps.end(),
                       [](const Amplitude& a, const Amplitude& b) { return std::norm(a) < std::norm(b); }) -
      amps.begin());
  const BasisIndex seed_value = RegisterLayout::value(peak, seed);
  out.record.assign(std::size_t{1} << rec.span(), Amplitude{0.0, 0.0});
  double norm = 0.0;
  for (BasisIndex r = 0; r < out.record.size(); ++r) {
    BasisIndex i = RegisterLayout::with_value(0, seed, seed_value);
    i = RegisterLayout::with_value(i, rec, r);
    out.record[r] = amps[i];
    norm += std::norm(amps[i]);
  }
  for (auto& a : out.record) a /= std::sqrt(norm);
  return out;
}

/// Classical shortcut for the record factor: sort every permutation of
/// (0, ..., eta-1) through the network and superpose the comparator bits.
inline std::vector<Amplitude> record_from_permutations(const netgen::ComparatorSchedule& s) {
  const unsigned eta = s.num_wires;
  const auto cmps = s.comparators();
  std::vector<Amplitude> rec(std::size_t{1} << cmps.size(), Amplitude{0.0, 0.0});
  std::vector<unsigned> perm(eta);
  std::iota(perm.begin(), perm.end(), 0U);
  double count = 0;
  do {
    auto w = perm;
    BasisIndex bits = 0;
    for (std::size_t k = 0; k < cmps.size(); ++k)
      if (w[cmps[k].low] > w[cmps[k].high]) {
        std::swap(w[cmps[k].low], w[cmps[k].high]);
        bits |= BasisIndex{1} << (cmps.size() - 1 - k);  // element k of the record register
      }
    rec[bits] += 1.0;
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& a : rec) a /= std::sqrt(count);
  return rec;
}

// ---------------------------------------------------------------------------
// Step 4: record, target (eta x log2 N), scratch

inline RegisterLayout target_layout(unsigned eta, std::uint64_t n_orbitals, std::size_t comparators,
                                    qcompare::Variant v, bool fanout) {
  const unsigned w = target_width(n_orbitals);
  RegisterLayout l;
  l.add("record", 1, static_cast<unsigned>(comparators));
  l.add("target", w, eta);
  l.add("scratch", 1, scratch_size(w, v, fanout));
  return l;
}

struct TargetResult {
  Statevector state{0};  // over "target" only
  double residual = 0.0;   // mass left on record or scratch
  ResourceTally resources;
  unsigned qubits = 0;
  std::size_t comparators_emitted = 0;
};

inline TargetResult reverse_sort_on_target(const std::vector<Amplitude>& record,
                                           const std::vector<BasisIndex>& values, std::uint64_t n_orbitals,
                                           const netgen::ComparatorSchedule& s,
                                           qcompare::Variant v = qcompare::Variant::Parallel,
                                           bool fanout = true) {
  const unsigned eta = static_cast<unsigned>(values.size());
  require(eta == s.num_wires, "network_width", "network width must equal eta");
  require_ascending(values, n_orbitals);
  require(record.size() == (std::size_t{1} << s.comparator_count()), "record_size",
          "record amplitudes do not match the comparator count");
  const RegisterLayout l = target_layout(eta, n_orbitals, s.comparator_count(), v, fanout);
  TargetResult out;
  out.qubits = l.num_qubits();
  Statevector::check_cap(out.qubits);

  Circuit c(l);
  out.comparators_emitted =
      append_reverse_sort(c, l.get("target"), l.get("record"), l.get("scratch").qubits(), s, v, fanout);
  out.resources = c.tally();

  const auto& tgt = l.get("target");
  const BasisIndex sorted = RegisterLayout::with_value(0, tgt, pack_elements(values, tgt.element_width));
  std::vector<Amplitude> amps(std::size_t{1} << l.num_qubits(), Amplitude{0.0, 0.0});
  const auto& rec = l.get("record");
  for (BasisIndex r = 0; r < record.size(); ++r) amps[RegisterLayout::with_value(sorted, rec, r)] = record[r];
  Statevector state = Statevector::from_amplitudes(l, std::move(amps));
  run(state, c);
  out.state = drop_zero_registers(state, {"record", "scratch"}, &out.residual);
  const double n = out.state.norm_squared();
  if (n > 0.0) {
    out.state.normalize();
    const BasisIndex identity = pack_elements(values, tgt.element_width);
    if (std::abs(out.state[identity]) > 0.0) out.state.fix_global_phase(identity);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct AntisymResult {
  Statevector state{0};
  bool success = false;
  double success_probability = 0.0;
  unsigned attempts = 0;
  ResourceTally resources;      // Steps 1-4
  ResourceTally steps_1_to_3;
  ResourceTally step_4;
  unsigned qubits_stage_a = 0;
  unsigned qubits_stage_b = 0;
  int schmidt_seed_vs_record = 1;
  double residual = 0.0;
  std::size_t comparators = 0;
  std::size_t comparators_emitted = 0;
};

inline AntisymResult antisymmetrize(const RecordPreparation& prep, const AntisymJob& job) {
  validate(job);
  require(prep.eta == job.eta && prep.schedule.family == job.family, "record_matches_job",
          "record preparation does not match the job");
  AntisymResult out;
  const auto t = reverse_sort_on_target(prep.record, job.target_values, job.n_orbitals, prep.schedule,
                                        job.variant, job.fanout);
  out.state = t.state;
  out.success = true;
  out.success_probability = prep.success_probability;
  out.attempts = prep.attempts;
  out.steps_1_to_3 = prep.resources;
  out.step_4 = t.resources;
  out.resources = prep.resources;
  out.resources += t.resources;
  out.qubits_stage_a = prep.qubits;
  out.qubits_stage_b = t.qubits;
  out.schmidt_seed_vs_record = prep.schmidt_seed_vs_record;
  out.residual = t.residual;
  out.comparators = prep.schedule.comparator_count();
  out.comparators_emitted = prep.comparators_emitted + t.comparators_emitted;
  return out;
}

inline AntisymResult antisymmetrize(const AntisymJob& job, std::uint64_t rng_seed) {
  validate(job);
  const auto prep = prepare_record(job.eta, job.seed_alphabet(), job.family, rng_seed, job.attempt_limit,
                                   job.variant, job.fanout);
  return antisymmetrize(prep, job);
}

/// Exchange antisymmetry of the elements of register `reg`: every slot
/// transposition negates the amplitude, and repeated values carry none.
inline bool verify_antisymmetry(const Statevector& state, const std::string& reg = "target",
                                double tolerance = 1e-10) {
  const auto& r = state.layout().get(reg);
  const unsigned eta = r.element_count;
  if (state.norm_squared() <= tolerance) return false;
  for (BasisIndex i = 0; i < state.dimension(); ++i) {
    const Amplitude c = state[i];
    const bool live = std::abs(c) > tolerance;
    for (unsigned a = 0; a < eta; ++a)
      for (unsigned b = a + 1; b < eta; ++b) {
        const BasisIndex va = RegisterLayout::element(i, r, a);
        const BasisIndex vb = RegisterLayout::element(i, r, b);
        if (va == vb) {
          if (live) return false;
          continue;
        }
        BasisIndex j = RegisterLayout::with_element(i, r, a, vb);
        j = RegisterLayout::with_element(j, r, b, va);
        if (std::abs(state[j] + c) > tolerance) return false;
      }
  }
  return true;
}

/// Sum over permutations of sign(perm) |perm(values)> / sqrt(eta!), built by
/// enumeration. Element 0 occupies the most significant slot.
inline std::vector<Amplitude> slater_reference(const std::vector<BasisIndex>& values, std::uint64_t n_orbitals) {
  const unsigned w = target_width(n_orbitals);
  const std::size_t eta = values.size();
  Statevector::check_cap(static_cast<unsigned>(eta) * w);
  std::vector<Amplitude> out(std::size_t{1} << (eta * w));
  std::vector<std::size_t> perm(eta);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double count = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < eta; ++i)
      for (std::size_t j = i + 1; j < eta; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    BasisIndex idx = 0;
    for (std::size_t i = 0; i < eta; ++i) idx = (idx << w) | values[perm[i]];
    out[idx] += static_cast<double>(sign);
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& a : out) a /= std::sqrt(count);
  return out;
}

}  // namespace fermiprep::antisym
