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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "fermiprep/simcore.hpp"

using namespace fermiprep;

namespace {

RegisterLayout qubits(unsigned n) {
  RegisterLayout l;
  l.add("q", 1, n);
  return l;
}

GateOp random_gate(std::mt19937_64& rng, unsigned n, bool permutation_only = false) {
  std::uniform_int_distribution<unsigned> pick(0, n - 1);
  std::vector<Qubit> order(n);
  for (unsigned i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const unsigned kind = std::uniform_int_distribution<unsigned>(0, permutation_only ? 4 : 7)(rng);
  auto pol = [&] { return std::bernoulli_distribution(0.7)(rng); };
  switch (kind) {
    case 0: return gates::x(order[0]);
    case 1: return gates::cnot(order[0], order[1], pol());
    case 2: return gates::toffoli({order[0], pol()}, {order[1], pol()}, order[2]);
    case 3: return gates::fredkin(order[0], order[1], order[2]);
    case 4: return gates::phase(order[0], std::numbers::pi, {{order[1], pol()}});
    case 5: return gates::h(order[0]);
    case 6: return gates::rotation(order[0], angle(rng), {{order[1], pol()}});
    default: return gates::phase(order[0], angle(rng), {{order[1], true}, {order[2], pol()}});
  }
}

Circuit random_circuit(std::mt19937_64& rng, unsigned n, std::size_t len, bool permutation_only = false) {
  Circuit c(n);
  for (std::size_t i = 0; i < len; ++i) c.append(random_gate(rng, n, permutation_only));
  return c;
}

Statevector random_state(std::mt19937_64& rng, unsigned n) {
  std::normal_distribution<double> g;
  std::vector<Amplitude> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {g(rng), g(rng)};
  auto s = Statevector::from_amplitudes(qubits(n), amps);
  s.normalize();
  return s;
}

}  // namespace

TEST(simcore, x_flips_least_significant_qubit) {
  Statevector s(2);
  apply(s, gates::x(0));
  EXPECT_DOUBLE_EQ(std::abs(s[1]), 1.0);
  EXPECT_DOUBLE_EQ(std::abs(s[0]), 0.0);
}

TEST(simcore, hadamard_makes_plus) {
  Statevector s(1);
  apply(s, gates::h(0));
  EXPECT_NEAR(s[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(simcore, fredkin_truth_table) {
  auto s = Statevector::basis(qubits(3), 0b110);
  apply(s, gates::fredkin(2, 0, 1));
  EXPECT_DOUBLE_EQ(std::abs(s[0b101]), 1.0);
  for (BasisIndex i = 0; i < 8; ++i) {
    auto t = Statevector::basis(qubits(3), i);
    apply(t, gates::fredkin(2, 0, 1));
    BasisIndex want = i;
    if ((i & 4) && (((i >> 0) & 1) != ((i >> 1) & 1))) want = i ^ 3;
    EXPECT_DOUBLE_EQ(std::abs(t[want]), 1.0) << i;
  }
}

TEST(simcore, negative_controls) {
  auto s = Statevector::basis(qubits(3), 0b001);
  apply(s, gates::toffoli({0, true}, {1, false}, 2));
  EXPECT_DOUBLE_EQ(std::abs(s[0b101]), 1.0);
}

TEST(simcore, rejects_bad_indices) {
  Statevector s(2);
  EXPECT_THROW(apply(s, gates::x(2)), ValidationError);
  EXPECT_THROW(apply(s, gates::cnot(1, 1)), ValidationError);
  EXPECT_THROW(apply(s, gates::fredkin(0, 1, 1)), ValidationError);
}

TEST(simcore, capacity_cap) {
  EXPECT_THROW(Statevector(kMaxQubits + 1), CapacityError);
}

TEST(simcore, run_empty_and_involution) {
  std::mt19937_64 rng(7);
  auto s = random_state(rng, 3);
  const auto before = s;
  run(s, Circuit(3));
  EXPECT_NEAR(fidelity(s, before), 1.0, 1e-15);

  Statevector z(1);
  Circuit c(1);
  c.append(gates::x(0)).append(gates::x(0));
  run(z, c);
  EXPECT_DOUBLE_EQ(std::abs(z[0]), 1.0);
}

TEST(simcore, projector_forbidden_in_circuit) {
  Circuit c(1);
  EXPECT_THROW(c.append(gates::projector(0, 0)), ValidationError);
}

TEST(simcore, projector_renormalizes) {
  Statevector s(1);
  apply(s, gates::h(0));
  apply(s, gates::projector(0, 1));
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
  apply(s, gates::x(0));
  EXPECT_THROW(apply(s, gates::projector(0, 1)), ValidationError);
}

TEST(simcore, norm_preserved_by_random_circuits) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_state(rng, 5);
    run(s, random_circuit(rng, 5, 60));
    EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-12);
  }
}

TEST(simcore, circuit_then_inverse_is_identity) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_state(rng, 3);
    const auto before = s;
    const auto c = random_circuit(rng, 3, 40);
    run(s, c);
    run(s, c.inverse());
    for (BasisIndex i = 0; i < s.dimension(); ++i) EXPECT_LT(std::abs(s[i] - before[i]), 1e-10);
  }
}

TEST(simcore, tally_recomputes_and_depth_is_greedy) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_circuit(rng, 6, 80);
    EXPECT_EQ(c.tally(), c.recompute_tally());
  }
  Circuit c(4);
  c.append(gates::x(0)).append(gates::x(1)).append(gates::cnot(0, 1)).append(gates::x(3));
  EXPECT_EQ(c.tally().depth, 2U);
  EXPECT_EQ(c.tally().gate_count, 4U);
}

TEST(simcore, t_count_conventions) {
  Circuit c(4);
  c.append(gates::toffoli(0, 1, 2));
  GateOp un = gates::toffoli(0, 1, 2);
  un.uncompute = true;
  c.append(un);
  c.append(gates::fredkin(0, 1, 2));
  c.append(gates::mcx({{0, true}, {1, true}, {2, false}}, 3));
  const auto& t = c.tally();
  EXPECT_EQ(t.toffoli_count, 1U + 1U + 1U + 3U);
  EXPECT_EQ(t.t_count, 4U + 0U + 4U + 8U);
  EXPECT_EQ(t.t_count_standard, 7U * 6U);
}

TEST(simcore, measure_basis_state) {
  auto s = Statevector::basis(qubits(1), 0);
  const auto r = measure_register(s, "q", 123);
  EXPECT_EQ(r.outcome, 0U);
  EXPECT_DOUBLE_EQ(r.probability, 1.0);
  EXPECT_NEAR(fidelity(r.post_state, s), 1.0, 1e-15);
}

TEST(simcore, measure_plus_is_seeded_and_fair) {
  Statevector s(qubits(1));
  apply(s, gates::h(0));
  const auto a = measure_register(s, "q", 99);
  const auto b = measure_register(s, "q", 99);
  EXPECT_EQ(a.outcome, b.outcome);
  EXPECT_NEAR(a.probability, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(a.post_state[a.outcome]), 1.0, 1e-15);
  int ones = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) ones += measure_register(s, "q", seed).outcome;
  EXPECT_NEAR(ones / 2000.0, 0.5, 0.05);
}

TEST(simcore, measure_rejects_empty_state) {
  auto s = Statevector::from_amplitudes(qubits(1), {0.0, 0.0});
  EXPECT_THROW(measure_register(s, "q", 1), ValidationError);
  EXPECT_THROW(measure_register(Statevector(qubits(1)), "nope", 1), ValidationError);
}

TEST(simcore, schmidt_rank_product_and_bell) {
  RegisterLayout l;
  l.add("a", 1);
  l.add("b", 1);
  Statevector prod(l);
  apply(prod, gates::h(1));
  EXPECT_EQ(schmidt_rank_across(prod, {"a"}, 1e-10), 1);

  Statevector bell(l);
  apply(bell, gates::h(0));
  apply(bell, gates::cnot(0, 1));
  EXPECT_EQ(schmidt_rank_across(bell, {"a"}, 1e-10), 2);
  EXPECT_THROW(schmidt_rank_across(bell, {"a", "b"}, 1e-10), ValidationError);
}

TEST(simcore, register_element_order) {
  RegisterLayout l;
  const auto& r = l.add("t", 3, 2);
  // element 0 is the most significant element
  EXPECT_EQ(r.qubit(0, 0), 3U);
  EXPECT_EQ(r.qubit(1, 0), 0U);
  const BasisIndex idx = pack_elements({5, 2}, 3);
  EXPECT_EQ(RegisterLayout::element(idx, r, 0), 5U);
  EXPECT_EQ(RegisterLayout::element(idx, r, 1), 2U);
}

TEST(simcore, basis_evaluator_matches_statevector) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_circuit(rng, 5, 40, true);
    for (BasisIndex i = 0; i < 32; ++i) {
      const auto cls = evaluate_basis(c, BasisState{i, {1.0, 0.0}});
      auto s = Statevector::basis(qubits(5), i);
      run(s, c);
      EXPECT_LT(std::abs(s[cls.bits] - cls.phase), 1e-12);
    }
  }
}

TEST(simcore, drop_zero_registers_repacks) {
  RegisterLayout l;
  l.add("anc", 2);
  l.add("sys", 1);
  Statevector s(l);
  apply(s, gates::h(2));
  double lost = 1.0;
  const auto r = drop_zero_registers(s, {"anc"}, &lost);
  EXPECT_EQ(r.num_qubits(), 1U);
  EXPECT_NEAR(lost, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r[1]), 1.0 / std::sqrt(2.0), 1e-15);
}
