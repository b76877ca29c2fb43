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
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "json.hpp"

#include "fermiprep/errors.hpp"
#include "fermiprep/simcore/layout.hpp"

namespace fermiprep::qubitize {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Pauli string, optionally prefixed by a phase ("-", "+", "i", "-i").
/// The last letter acts on qubit 0.
inline Matrix pauli_matrix(std::string_view s) {
  Complex phase = 1.0;
  if (s.starts_with("-i")) phase = Complex(0, -1), s.remove_prefix(2);
  else if (s.starts_with("+i")) phase = Complex(0, 1), s.remove_prefix(2);
  else if (s.starts_with("i")) phase = Complex(0, 1), s.remove_prefix(1);
  else if (s.starts_with("-")) phase = -1.0, s.remove_prefix(1);
  else if (s.starts_with("+")) s.remove_prefix(1);
  require(!s.empty(), "pauli_nonempty", "empty Pauli string");
  Matrix out = Matrix::Identity(1, 1) * phase;
  for (char ch : s) {
    Matrix p(2, 2);
    switch (ch) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default: throw ValidationError("pauli_letter", std::string("unknown Pauli letter '") + ch + "'");
    }
    out = Eigen::kroneckerProduct(out, p).eval();
  }
  return out;
}

inline bool is_unitary(const Matrix& u, double tol = 1e-12) {
  return u.rows() == u.cols() && (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-10) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

struct LcuHamiltonian {
  std::vector<double> coefficients;
  std::vector<Matrix> terms;

  double lambda() const {
    double s = 0;
    for (double a : coefficients) s += a;
    return s;
  }
  Eigen::Index dimension() const { return terms.empty() ? 0 : terms.front().rows(); }
  unsigned num_system_qubits() const { return ceil_log2(static_cast<std::uint64_t>(dimension())); }

  Matrix hamiltonian() const {
    Matrix h = Matrix::Zero(dimension(), dimension());
    for (std::size_t j = 0; j < terms.size(); ++j) h += coefficients[j] * terms[j];
    return h;
  }

  bool hermitian_terms() const {
    return std::all_of(terms.begin(), terms.end(), [](const Matrix& u) { return is_hermitian(u); });
  }
};

inline void validate(const LcuHamiltonian& lcu) {
  require(!lcu.terms.empty() && lcu.terms.size() == lcu.coefficients.size(), "lcu_shape",
          "need one coefficient per term and at least one term");
  for (double a : lcu.coefficients) require(a > 0.0, "coefficients_positive", "LCU coefficients must be > 0");
  const auto d = lcu.dimension();
  require(d >= 1 && is_power_of_two(static_cast<std::uint64_t>(d)), "term_dimension",
          "term dimension must be a power of two");
  for (const auto& u : lcu.terms) {
    require(u.rows() == d && u.cols() == d, "term_dimension", "terms must share one square dimension");
    require(is_unitary(u), "terms_unitary", "every LCU term must be unitary");
  }
  const Matrix h = lcu.hamiltonian();
  require(is_hermitian(h, 1e-10), "hamiltonian_hermitian", "sum of terms must be Hermitian");
  const double norm = Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues().cwiseAbs().maxCoeff();
  require(norm <= lcu.lambda() + 1e-10, "lambda_bounds_norm", "lambda must bound the spectral norm");
}

inline LcuHamiltonian lcu_from_paulis(const std::vector<double>& a, const std::vector<std::string>& paulis) {
  LcuHamiltonian lcu;
  lcu.coefficients = a;
  for (const auto& p : paulis) lcu.terms.push_back(pauli_matrix(p));
  validate(lcu);
  return lcu;
}

/// {coefficients: [...], terms: [{pauli: "XZ"} | {matrix: [[[re, im], ...], ...]}]}
inline LcuHamiltonian lcu_from_json(const nlohmann::json& j) {
  LcuHamiltonian lcu;
  lcu.coefficients = j.at("coefficients").get<std::vector<double>>();
  for (const auto& t : j.at("terms")) {
    if (t.contains("pauli")) {
      lcu.terms.push_back(pauli_matrix(t.at("pauli").get<std::string>()));
      continue;
    }
    const auto& rows = t.at("matrix");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      require(static_cast<Eigen::Index>(rows[r].size()) == n, "matrix_square", "term matrix must be square");
      for (Eigen::Index c = 0; c < n; ++c) {
        const auto& e = rows[r][c];
        m(r, c) = e.is_array() ? Complex(e.at(0).get<double>(), e.at(1).get<double>()) : Complex(e.get<double>(), 0);
      }
    }
    lcu.terms.push_back(std::move(m));
  }
  validate(lcu);
  return lcu;
}

/// Haar-random unitary via QR of a complex Gaussian matrix.
inline Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) z(i, k) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

/// Random LCU on `n_sys` qubits with `n_terms` terms. Pauli terms keep H
/// Hermitian directly; otherwise each random unitary U comes paired with
/// its adjoint under an equal weight.
inline LcuHamiltonian random_lcu(unsigned n_sys, unsigned n_terms, std::mt19937_64& rng, bool paulis = true) {
  require(n_terms >= 1, "lcu_shape", "need at least one term");
  std::uniform_real_distribution<double> coef(0.05, 1.0);
  LcuHamiltonian lcu;
  const Eigen::Index dim = Eigen::Index{1} << n_sys;
  if (paulis) {
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    for (unsigned t = 0; t < n_terms; ++t) {
      std::string p(n_sys, 'I');
      for (auto& ch : p) ch = letters[rng() % 4];
      if (rng() % 2) p = "-" + p;
      lcu.coefficients.push_back(coef(rng));
      lcu.terms.push_back(pauli_matrix(p));
    }
  } else {
    unsigned left = n_terms;
    for (; left >= 2; left -= 2) {
      const double a = coef(rng);
      const Matrix u = random_unitary(dim, rng);
      lcu.coefficients.insert(lcu.coefficients.end(), {a, a});
      lcu.terms.push_back(u);
      lcu.terms.push_back(u.adjoint());
    }
    if (left == 1) {
      // a reflection is both unitary and Hermitian
      const Matrix u = random_unitary(dim, rng);
      Matrix d = Matrix::Identity(dim, dim);
      d(0, 0) = -1;
      lcu.coefficients.push_back(coef(rng));
      lcu.terms.push_back(u * d * u.adjoint());
    }
  }
  validate(lcu);
  return lcu;
}

inline unsigned ancilla_qubits(std::size_t terms) { return ceil_log2(terms); }

/// PREPARE: Householder reflection taking |0> to sum_j sqrt(a_j / lambda)|j>.
inline Matrix build_prepare(const std::vector<double>& a) {
  require(!a.empty(), "lcu_shape", "need at least one coefficient");
  for (double x : a) require(x > 0.0, "coefficients_positive", "LCU coefficients must be > 0");
  const Eigen::Index dim = Eigen::Index{1} << ancilla_qubits(a.size());
  double lambda = 0;
  for (double x : a) lambda += x;
  Vector t = Vector::Zero(dim);
  for (std::size_t j = 0; j < a.size(); ++j) t(static_cast<Eigen::Index>(j)) = std::sqrt(a[j] / lambda);
  Vector u = -t;
  u(0) += 1.0;
  const double n2 = u.squaredNorm();
  if (n2 < 1e-30) return Matrix::Identity(dim, dim);
  return Matrix::Identity(dim, dim) - 2.0 * u * u.adjoint() / n2;
}

/// SELECT: block j holds U_j, identity for padding blocks. Ancilla is the
/// more significant factor.
inline Matrix build_select(const std::vector<Matrix>& terms) {
  require(!terms.empty(), "lcu_shape", "need at least one term");
  const Eigen::Index d = terms.front().rows();
  const Eigen::Index blocks = Eigen::Index{1} << ancilla_qubits(terms.size());
  Matrix s = Matrix::Identity(blocks * d, blocks * d);
  for (std::size_t j = 0; j < terms.size(); ++j) {
    require(terms[j].rows() == d && terms[j].cols() == d, "term_dimension", "terms must share one dimension");
    s.block(static_cast<Eigen::Index>(j) * d, static_cast<Eigen::Index>(j) * d, d, d) = terms[j];
  }
  return s;
}

struct SignalOracle {
  Matrix v;
  unsigned ancilla_qubits = 0;  // all flag qubits, including the embedding qubit
  unsigned system_qubits = 0;
  bool embedded = false;
  double lambda = 1.0;
};

/// V = (A^dag x 1) SELECT (A x 1); when V is not Hermitian, one more
/// (most significant) qubit carries |+><-| x V + |-><+| x V^dag.
inline SignalOracle build_signal_oracle(const LcuHamiltonian& lcu) {
  validate(lcu);
  const Eigen::Index d = lcu.dimension();
  const Matrix a = build_prepare(lcu.coefficients);
  const Matrix ai = Eigen::kroneckerProduct(a, Matrix::Identity(d, d));
  SignalOracle out;
  out.v = ai.adjoint() * build_select(lcu.terms) * ai;
  out.ancilla_qubits = ancilla_qubits(lcu.terms.size());
  out.system_qubits = lcu.num_system_qubits();
  out.lambda = lcu.lambda();
  if (!is_hermitian(out.v, 1e-10)) {
    Matrix pm(2, 2), mp(2, 2);  // |+><-| and |-><+|
    pm << 0.5, -0.5, 0.5, -0.5;
    mp << 0.5, 0.5, -0.5, -0.5;
    out.v = (Eigen::kroneckerProduct(pm, out.v) + Eigen::kroneckerProduct(mp, out.v.adjoint())).eval();
    out.ancilla_qubits += 1;
    out.embedded = true;
  }
  return out;
}

/// Top-left system block <0|_a V |0>_a.
inline Matrix flagged_block(const SignalOracle& o) {
  const Eigen::Index d = Eigen::Index{1} << o.system_qubits;
  return o.v.topLeftCorner(d, d);
}

/// W = i (2 |0><0|_a x 1 - 1) V.
inline Matrix build_qubiterate(const SignalOracle& o) {
  const Eigen::Index d = Eigen::Index{1} << o.system_qubits;
  const Eigen::Index n = o.v.rows();
  Matrix r = -Matrix::Identity(n, n);
  r.topLeftCorner(d, d) = Matrix::Identity(d, d);
  return Complex(0, 1) * r * o.v;
}

inline Matrix build_qubiterate(const LcuHamiltonian& lcu) { return build_qubiterate(build_signal_oracle(lcu)); }

/// lambda * sin(theta). Both branches -e^{-i phi} and e^{i phi} of the
/// qubiterate have the same sine, so no branch folding is needed.
inline double recover_energy(double phase, double lambda) { return lambda * std::sin(phase); }

/// sigma_phase * sqrt(lambda^2 - E^2)
inline double error_propagation(double sigma_phase, double energy, double lambda) {
  require(std::abs(energy) <= lambda, "energy_within_lambda", "|E| must not exceed lambda");
  return sigma_phase * std::sqrt(lambda * lambda - energy * energy);
}

/// Orthonormal basis of span{|0>_a|x>, W|0>_a|x>}, which W leaves invariant.
inline Matrix walk_subspace(const Matrix& w, unsigned system_qubits, double rank_tol = 1e-9) {
  const Eigen::Index d = Eigen::Index{1} << system_qubits;
  Matrix k(w.rows(), 2 * d);
  k.leftCols(d) = Matrix::Identity(w.rows(), d);
  k.rightCols(d) = w.leftCols(d);
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeThinU);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) rank += svd.singularValues()(i) > rank_tol;
  return svd.matrixU().leftCols(rank);
}

struct QubiterateReport {
  std::vector<Complex> walk_eigenvalues;  // all of W
  std::vector<Complex> flagged_eigenvalues;  // W restricted to the walk subspace
  std::vector<double> recovered_energies;
  std::vector<double> reference_energies;
  std::vector<double> expected_energies;  // reference, doubled except at |E| = lambda
  double max_abs_error = 0.0;
  double max_modulus_error = 0.0;
  bool multiset_match = false;
  bool embedded = false;
  double lambda = 1.0;
  Eigen::Index subspace_dimension = 0;
};

inline QubiterateReport spectral_check(const LcuHamiltonian& lcu) {
  const auto o = build_signal_oracle(lcu);
  require(o.system_qubits <= 6, "system_dimension", "spectral check supports at most 6 system qubits");
  const Matrix w = build_qubiterate(o);
  QubiterateReport rep;
  rep.lambda = o.lambda;
  rep.embedded = o.embedded;

  Eigen::ComplexEigenSolver<Matrix> full(w, false);
  for (Eigen::Index i = 0; i < full.eigenvalues().size(); ++i) {
    rep.walk_eigenvalues.push_back(full.eigenvalues()(i));
    rep.max_modulus_error = std::max(rep.max_modulus_error, std::abs(std::abs(full.eigenvalues()(i)) - 1.0));
  }

  const Matrix q = walk_subspace(w, o.system_qubits);
  rep.subspace_dimension = q.cols();
  Eigen::ComplexEigenSolver<Matrix> restricted(q.adjoint() * w * q, false);
  for (Eigen::Index i = 0; i < restricted.eigenvalues().size(); ++i) {
    const Complex z = restricted.eigenvalues()(i);
    rep.flagged_eigenvalues.push_back(z);
    rep.recovered_energies.push_back(recover_energy(std::arg(z), o.lambda));
  }

  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(lcu.hamiltonian()).eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    rep.reference_energies.push_back(ev(i));
    rep.expected_energies.push_back(ev(i));
    if (std::abs(std::abs(ev(i)) - o.lambda) > 1e-9) rep.expected_energies.push_back(ev(i));
  }
  auto got = rep.recovered_energies;
  auto want = rep.expected_energies;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  rep.multiset_match = got.size() == want.size();
  // symmetric nearest-neighbour distance, then elementwise when sizes agree
  double err = 0;
  for (double e : want) {
    double best = INFINITY;
    for (double g : got) best = std::min(best, std::abs(g - e));
    err = std::max(err, best);
  }
  for (double g : got) {
    double best = INFINITY;
    for (double e : want) best = std::min(best, std::abs(g - e));
    err = std::max(err, best);
  }
  if (rep.multiset_match)
    for (std::size_t i = 0; i < got.size(); ++i) err = std::max(err, std::abs(got[i] - want[i]));
  rep.max_abs_error = err;
  return rep;
}

}  // namespace fermiprep::qubitize
