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

#include "fermiprep/qubitize.hpp"

using namespace fermiprep;
using namespace fermiprep::qubitize;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(qubitize, pauli_strings) {
  Matrix xz(4, 4);
  // X on qubit 1, Z on qubit 0
  xz << 0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0;
  EXPECT_LT(max_abs(pauli_matrix("XZ") - xz), 1e-15);
  EXPECT_LT(max_abs(pauli_matrix("-Z") + pauli_matrix("Z")), 1e-15);
  EXPECT_LT(max_abs(pauli_matrix("iY") - Complex(0, 1) * pauli_matrix("Y")), 1e-15);
  EXPECT_THROW(pauli_matrix("XQ"), ValidationError);
}

TEST(qubitize, prepare_examples) {
  const auto one = build_prepare({1.0});
  EXPECT_EQ(one.rows(), 1);
  const auto two = build_prepare({1.0, 1.0});
  EXPECT_NEAR(std::abs(two(0, 0)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(two(1, 0)), 1 / std::sqrt(2.0), 1e-15);
  const std::vector<double> a{1, 2, 3, 2};
  const auto A = build_prepare(a);
  EXPECT_TRUE(is_unitary(A, 1e-12));
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(A(j, 0).real(), std::sqrt(a[j] / 8.0), 1e-12);
  const auto three = build_prepare({1, 1, 1});
  EXPECT_EQ(three.rows(), 4);
  EXPECT_NEAR(std::abs(three(3, 0)), 0.0, 1e-15);
  EXPECT_THROW(build_prepare({1.0, -0.5}), ValidationError);
}

TEST(qubitize, select_matrix_elements) {
  std::mt19937_64 rng(2);
  const std::vector<Matrix> u{random_unitary(2, rng), random_unitary(2, rng)};
  const auto s = build_select(u);
  for (int j = 0; j < 2; ++j)
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) EXPECT_LT(std::abs(s(2 * j + x, 2 * j + y) - u[j](x, y)), 1e-15);
  EXPECT_LT(max_abs(s.block(0, 2, 2, 2)), 1e-15);
  EXPECT_LT(max_abs(build_select({pauli_matrix("Z")}) - pauli_matrix("Z")), 1e-15);
  EXPECT_THROW(build_select({pauli_matrix("Z"), pauli_matrix("ZZ")}), ValidationError);
}

TEST(qubitize, signal_oracle_block_encodes) {
  const auto z = build_signal_oracle(lcu_from_paulis({1.0}, {"Z"}));
  EXPECT_FALSE(z.embedded);
  EXPECT_LT(max_abs(z.v - pauli_matrix("Z")), 1e-15);

  const auto lcu = lcu_from_paulis({0.5, 0.5}, {"X", "Z"});
  const auto o = build_signal_oracle(lcu);
  EXPECT_LT(max_abs(flagged_block(o) - lcu.hamiltonian()), 1e-12);
  EXPECT_TRUE(is_hermitian(o.v));

  // S gate is unitary but not Hermitian: H = (S + S^dag)/2 needs the embedding
  LcuHamiltonian s;
  Matrix sg(2, 2);
  sg << 1, 0, 0, Complex(0, 1);
  s.coefficients = {0.5, 0.5};
  s.terms = {sg, sg.adjoint()};
  const auto so = build_signal_oracle(s);
  EXPECT_TRUE(so.embedded);
  EXPECT_TRUE(is_hermitian(so.v));
  EXPECT_TRUE(is_unitary(so.v, 1e-12));
  EXPECT_LT(max_abs(flagged_block(so) - s.hamiltonian() / s.lambda()), 1e-12);
}

TEST(qubitize, random_block_encodings) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto lcu = random_lcu(1 + trial % 2, 1 + trial % 4, rng, trial % 3 != 0);
    const auto o = build_signal_oracle(lcu);
    EXPECT_LT(max_abs(flagged_block(o) - lcu.hamiltonian() / lcu.lambda()), 1e-10);
    EXPECT_TRUE(is_hermitian(o.v));
    EXPECT_TRUE(is_unitary(build_qubiterate(o), 1e-12));
  }
}

TEST(qubitize, spectrum_examples) {
  const auto rep = spectral_check(lcu_from_paulis({0.5, 0.5}, {"X", "Z"}));
  EXPECT_LT(rep.max_abs_error, 1e-10);
  EXPECT_TRUE(rep.multiset_match);
  EXPECT_NEAR(*std::min_element(rep.recovered_energies.begin(), rep.recovered_energies.end()), -1 / std::sqrt(2.0),
              1e-10);

  const auto z = spectral_check(lcu_from_paulis({1.0}, {"Z"}));
  EXPECT_LT(z.max_abs_error, 1e-10);
  EXPECT_EQ(z.recovered_energies.size(), 2U);

  const auto zero = spectral_check(lcu_from_paulis({0.5, 0.5}, {"X", "-X"}));
  for (double e : zero.recovered_energies) EXPECT_NEAR(e, 0.0, 1e-10);
}

TEST(qubitize, branches_are_minus_conjugate_pairs) {
  const auto lcu = lcu_from_paulis({0.5, 0.5}, {"X", "Z"});
  const auto rep = spectral_check(lcu);
  const double phi = std::asin(-1 / std::sqrt(2.0));
  bool plus = false, minus = false;
  for (const auto& z : rep.flagged_eigenvalues) {
    plus |= std::abs(z - std::exp(Complex(0, phi))) < 1e-9;
    minus |= std::abs(z + std::exp(Complex(0, -phi))) < 1e-9;
  }
  EXPECT_TRUE(plus);
  EXPECT_TRUE(minus);
}

TEST(qubitize, random_spectra) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rep = spectral_check(random_lcu(1 + trial % 2, 1 + trial % 4, rng, trial % 2 == 0));
    EXPECT_LT(rep.max_abs_error, 1e-9) << trial;
    EXPECT_LT(rep.max_modulus_error, 1e-10);
  }
}

TEST(qubitize, sine_inversion_and_error_propagation) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> th(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 20; ++i) {
    const double t = th(rng);
    EXPECT_NEAR(recover_energy(t, 1.7), recover_energy(std::numbers::pi - t, 1.7), 1e-12);
  }
  EXPECT_NEAR(recover_energy(std::asin(0.5), 2.0), 1.0, 1e-15);
  EXPECT_NEAR(error_propagation(0.01, 0.0, 2.0), 0.02, 1e-15);
  EXPECT_NEAR(error_propagation(0.01, 2.0, 2.0), 0.0, 1e-15);
  EXPECT_NEAR(error_propagation(0.01, 1.0, 2.0), 0.01 * std::sqrt(3.0), 1e-15);
  EXPECT_THROW(error_propagation(0.01, 2.5, 2.0), ValidationError);
}

TEST(qubitize, validation) {
  EXPECT_THROW(lcu_from_paulis({0.0}, {"Z"}), ValidationError);
  LcuHamiltonian bad;
  bad.coefficients = {1.0};
  Matrix m = Matrix::Identity(2, 2) * 2.0;
  bad.terms = {m};
  EXPECT_THROW(validate(bad), ValidationError);
}

TEST(qubitize, json_input) {
  const auto j = nlohmann::json::parse(
      R"({"coefficients":[0.5,0.5],"terms":[{"pauli":"X"},{"matrix":[[[1,0],[0,0]],[[0,0],[-1,0]]]}]})");
  const auto lcu = lcu_from_json(j);
  EXPECT_LT(max_abs(lcu.hamiltonian() - 0.5 * (pauli_matrix("X") + pauli_matrix("Z"))), 1e-15);
}
