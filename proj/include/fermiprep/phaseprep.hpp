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
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "fermiprep/errors.hpp"
#include "fermiprep/qubitize.hpp"

namespace fermiprep::phaseprep {

using qubitize::Complex;
using qubitize::Matrix;
using qubitize::Vector;
using qubitize::recover_energy;

struct PhaseEstimate {
  double phase = 0.0;           // 2 pi 0.x1 x2 ... x_bits, in [0, 2 pi)
  std::vector<int> bits;        // x1 (most significant) first
  Vector post_state;
  std::uint64_t walk_applications = 0;
};

/// Semiclassical phase estimation with one ancilla: rounds m = bits-1 .. 0
/// apply controlled W^(2^m), undo the phase already known from the lower
/// bits, and read the next bit in the X basis.
inline PhaseEstimate iterative_phase_estimation(const Matrix& w, const Vector& initial, unsigned bits,
                                                std::uint64_t rng_seed) {
  require(bits >= 1 && bits <= 12, "pe_bits_range", "bits must be in [1, 12]");
  require(w.rows() == w.cols() && w.rows() == initial.size(), "pe_dimension", "state and walk sizes differ");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  std::vector<Matrix> powers{w};
  for (unsigned m = 1; m < bits; ++m) powers.push_back(powers.back() * powers.back());

  PhaseEstimate out;
  out.bits.assign(bits, 0);
  Vector psi = initial / initial.norm();
  double known = 0.0;  // 0.x_{t+1} ... x_bits as a fraction
  for (unsigned t = bits; t >= 1; --t) {
    const unsigned m = t - 1;
    const Complex corr = std::exp(Complex(0, -std::numbers::pi * known));
    const Vector u = corr * (powers[m] * psi);
    const Vector plus = (psi + u) / 2.0;
    const Vector minus = (psi - u) / 2.0;
    const double p0 = plus.squaredNorm();
    const int x = uni(rng) < p0 ? 0 : 1;
    psi = x == 0 ? Vector(plus / std::sqrt(p0)) : Vector(minus / std::sqrt(1.0 - p0));
    out.bits[t - 1] = x;
    known = (known + x) / 2.0;
    out.walk_applications += std::uint64_t{1} << m;
  }
  out.phase = 2 * std::numbers::pi * known;
  out.post_state = psi;
  return out;
}

// ---------------------------------------------------------------------------
// Cost model

struct SpectralModel {
  std::vector<double> energies;
  std::vector<double> overlaps;
};

struct CostModelParams {
  double alpha0 = 1.0;
  double e0 = 0.0;
  std::optional<double> e1;
  double e_star = 1.0;
  double e0_bound = 0.5;
  double epsilon_f = 0.01;
  bool use_amplitude_amplification = false;
  std::optional<double> e1_bound;
};

inline void validate(const CostModelParams& p) {
  require(p.alpha0 > 0.0 && p.alpha0 <= 1.0, "alpha0_range", "alpha0 must lie in (0, 1]");
  require(p.e0 <= p.e0_bound && p.e0_bound < p.e_star, "energy_ordering", "need E0 <= E0_bound < E*");
  require(p.epsilon_f > 0.0, "epsilon_positive", "epsilon_f must be > 0");
}

inline void validate(const SpectralModel& m) {
  require(!m.energies.empty() && m.energies.size() == m.overlaps.size(), "model_shape",
          "need one overlap per energy");
  double s = 0;
  for (double a : m.overlaps) {
    require(a >= 0.0, "overlaps_nonnegative", "overlaps must be >= 0");
    s += a;
  }
  require(std::abs(s - 1.0) <= 1e-12, "overlaps_sum_to_one", "overlaps must sum to 1");
}

/// Two-level model: alpha0 on E0, the rest on E*.
inline SpectralModel two_level_model(const CostModelParams& p) {
  if (p.alpha0 >= 1.0) return {{p.e0}, {1.0}};
  return {{p.e0, p.e_star}, {p.alpha0, 1.0 - p.alpha0}};
}

inline double analytic_rejection_cost(const CostModelParams& p) {
  return 1.0 / (p.alpha0 * (p.e_star - p.e0_bound)) + 1.0 / p.epsilon_f;
}

inline double analytic_naive_cost(const CostModelParams& p) { return 1.0 / (p.alpha0 * p.epsilon_f); }

inline double amplitude_amplified_cost(const CostModelParams& p) {
  require(p.e1_bound.has_value(), "e1_bound_present", "amplitude amplification needs an E1 bound");
  require(*p.e1_bound > p.e0_bound, "energy_ordering", "need E1_bound > E0_bound");
  return 1.0 / std::sqrt(p.alpha0) / (*p.e1_bound - p.e0_bound) + 1.0 / p.epsilon_f;
}

struct RunReport {
  std::string strategy;
  std::size_t trials = 0;
  double mean_cost = 0.0;
  double std_err = 0.0;
  double analytic_cost = 0.0;
  double mean_attempts = 0.0;
  std::map<std::uint64_t, std::uint64_t> attempts_histogram;
};

namespace detail {

/// Eigenstate index drawn by cumulative overlaps, ground state first, so a
/// larger alpha0 never turns an accepted draw into a rejected one.
inline std::size_t draw_state(const SpectralModel& m, double u) {
  double acc = 0;
  for (std::size_t k = 0; k < m.overlaps.size(); ++k) {
    acc += m.overlaps[k];
    if (u < acc) return k;
  }
  return m.overlaps.size() - 1;
}

template <typename AttemptCost, typename FinalCost>
RunReport simulate(const std::string& name, const SpectralModel& m, const CostModelParams& p,
                   std::uint64_t seed, std::size_t trials, AttemptCost attempt_cost, FinalCost final_cost) {
  validate(m);
  validate(p);
  require(trials >= 2, "trials_minimum", "need at least two trials");
  bool reachable = false;
  for (std::size_t k = 0; k < m.energies.size(); ++k) reachable |= m.overlaps[k] > 0 && m.energies[k] <= p.e0_bound;
  require(reachable, "ground_reachable", "no supported eigenstate lies at or below E0_bound");
  RunReport r;
  r.strategy = name;
  r.trials = trials;
  double sum = 0, sum2 = 0, attempts_sum = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + t);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double cost = 0;
    std::uint64_t attempts = 0;
    for (;;) {
      ++attempts;
      cost += attempt_cost();
      if (m.energies[draw_state(m, uni(rng))] <= p.e0_bound) break;
    }
    cost += final_cost();
    sum += cost;
    sum2 += cost * cost;
    attempts_sum += static_cast<double>(attempts);
    ++r.attempts_histogram[attempts];
  }
  const double n = static_cast<double>(trials);
  r.mean_cost = sum / n;
  r.std_err = std::sqrt(std::max(0.0, (sum2 - n * r.mean_cost * r.mean_cost) / (n - 1)) / n);
  r.mean_attempts = attempts_sum / n;
  return r;
}

}  // namespace detail

/// Coarse estimation at resolution E* - E0_bound on every attempt, restart
/// on a state above E0_bound, refine to epsilon_f once accepted.
inline RunReport rejection_run(const SpectralModel& m, const CostModelParams& p, std::uint64_t seed,
                               std::size_t trials = 10000) {
  const double coarse = 1.0 / (p.e_star - p.e0_bound);
  auto r = detail::simulate("rejection", m, p, seed, trials, [&] { return coarse; },
                            [&] { return 1.0 / p.epsilon_f; });
  r.analytic_cost = analytic_rejection_cost(p);
  return r;
}

/// Full-precision estimation on every attempt.
inline RunReport naive_run(const SpectralModel& m, const CostModelParams& p, std::uint64_t seed,
                           std::size_t trials = 10000) {
  auto r = detail::simulate("naive", m, p, seed, trials, [&] { return 1.0 / p.epsilon_f; }, [] { return 0.0; });
  r.analytic_cost = analytic_naive_cost(p);
  return r;
}

// ---------------------------------------------------------------------------
// Fixtures

struct Fixture {
  std::string name;
  SpectralModel model;
  CostModelParams params;
};

inline nlohmann::json fixture_json(const std::string& name) {
  if (name == "water-equilibrium")
    return nlohmann::json::parse(R"({
      "name": "water-equilibrium",
      "energies": [-75.0104, -74.6836, -74.3688],
      "overlaps": [0.972, 0.0, 0.028],
      "params": {"alpha0": 0.972, "e0": -75.0104, "e1": -74.6836, "e_star": -74.3688,
                 "e0_bound": -74.9579, "epsilon_f": 0.0016, "e1_bound": -74.6836}})");
  if (name == "water-stretched")
    return nlohmann::json::parse(R"({
      "name": "water-stretched",
      "energies": [-74.7505, -74.6394],
      "overlaps": [0.107, 0.893],
      "params": {"alpha0": 0.107, "e0": -74.7505, "e_star": -74.6394,
                 "e0_bound": -74.7248, "epsilon_f": 0.0016, "e1_bound": -74.6394}})");
  throw ValidationError("fixture_known", "unknown fixture '" + name + "'");
}

inline Fixture fixture_from_json(const nlohmann::json& j) {
  Fixture f;
  f.name = j.value("name", std::string("custom"));
  f.model.energies = j.at("energies").get<std::vector<double>>();
  f.model.overlaps = j.at("overlaps").get<std::vector<double>>();
  const auto& p = j.at("params");
  f.params.alpha0 = p.at("alpha0").get<double>();
  f.params.e0 = p.at("e0").get<double>();
  if (p.contains("e1") && !p.at("e1").is_null()) f.params.e1 = p.at("e1").get<double>();
  f.params.e_star = p.at("e_star").get<double>();
  f.params.e0_bound = p.at("e0_bound").get<double>();
  f.params.epsilon_f = p.at("epsilon_f").get<double>();
  f.params.use_amplitude_amplification = p.value("use_amplitude_amplification", false);
  if (p.contains("e1_bound") && !p.at("e1_bound").is_null()) f.params.e1_bound = p.at("e1_bound").get<double>();
  validate(f.model);
  validate(f.params);
  return f;
}

inline Fixture builtin_fixture(const std::string& name) { return fixture_from_json(fixture_json(name)); }

// ---------------------------------------------------------------------------
// Circuit-level pipeline

struct PipelineParams {
  unsigned bits = 10;
  unsigned coarse_bits = 0;  // 0: ceil(log2(2 pi lambda / (E* - E0_bound)))
  double e0_bound = 0.0;
  double e_star = 1.0;
  unsigned attempt_limit = 64;
};

struct PipelineResult {
  double energy = 0.0;
  double phase = 0.0;
  unsigned attempts = 0;
  unsigned rejections = 0;
  std::uint64_t walk_applications = 0;
  unsigned coarse_bits = 0;
  double resolution = 0.0;           // 2 pi lambda / 2^bits
  double ground_fidelity = 0.0;      // system overlap with the ground state, ancilla postselected on 0
  double ground_sector_weight = 0.0; // weight in the walk subspace of the ground state
  double ancilla_zero_probability = 0.0;
  double alpha0 = 0.0;
  double reference_ground_energy = 0.0;
  Vector final_state;
};

inline unsigned default_coarse_bits(double lambda, double gap) {
  require(gap > 0.0, "energy_ordering", "need E* > E0_bound");
  return std::max(1U, static_cast<unsigned>(std::ceil(std::log2(2 * std::numbers::pi * lambda / gap))));
}

/// Coarse estimate, reject if above E0_bound by more than one coarse bin,
/// then refine on the collapsed state and reject if the fine estimate is
/// still above E0_bound. Each restart re-prepares |0>_a |phi>.
inline PipelineResult end_to_end_ground_state(const qubitize::LcuHamiltonian& lcu, const Vector& initial_system,
                                              const PipelineParams& pp, std::uint64_t rng_seed) {
  const auto o = qubitize::build_signal_oracle(lcu);
  require(o.system_qubits <= 3, "system_dimension", "pipeline supports at most 3 system qubits");
  require(pp.bits >= 1 && pp.bits <= 12, "pe_bits_range", "bits must be in [1, 12]");
  require(pp.attempt_limit >= 1, "attempt_limit_positive", "attempt limit must be >= 1");
  const Eigen::Index d = Eigen::Index{1} << o.system_qubits;
  require(initial_system.size() == d && initial_system.norm() > 0, "initial_state_dimension",
          "initial state must match the system dimension");
  const Matrix w = qubitize::build_qubiterate(o);
  const double lambda = o.lambda;

  PipelineResult out;
  out.coarse_bits = pp.coarse_bits ? pp.coarse_bits : default_coarse_bits(lambda, pp.e_star - pp.e0_bound);
  out.resolution = 2 * std::numbers::pi * lambda / std::ldexp(1.0, static_cast<int>(pp.bits));
  const double coarse_bin = 2 * std::numbers::pi * lambda / std::ldexp(1.0, static_cast<int>(out.coarse_bits));

  Eigen::SelfAdjointEigenSolver<Matrix> es(lcu.hamiltonian());
  const Vector ground = es.eigenvectors().col(0);
  out.reference_ground_energy = es.eigenvalues()(0);
  const Vector phi = initial_system / initial_system.norm();
  out.alpha0 = std::norm(ground.dot(phi));

  Vector start = Vector::Zero(w.rows());
  start.head(d) = phi;
  std::mt19937_64 seeds(rng_seed);
  for (;;) {
    if (out.attempts == pp.attempt_limit)
      throw AttemptLimitError("no estimate below E0_bound after " + std::to_string(pp.attempt_limit) + " attempts",
                              out.alpha0);
    ++out.attempts;
    const auto coarse = iterative_phase_estimation(w, start, out.coarse_bits, seeds());
    out.walk_applications += coarse.walk_applications;
    if (qubitize::recover_energy(coarse.phase, lambda) > pp.e0_bound + coarse_bin) {
      ++out.rejections;
      continue;
    }
    const auto fine = iterative_phase_estimation(w, coarse.post_state, pp.bits, seeds());
    out.walk_applications += fine.walk_applications;
    out.energy = qubitize::recover_energy(fine.phase, lambda);
    if (out.energy > pp.e0_bound) {
      ++out.rejections;
      continue;
    }
    out.phase = fine.phase;
    out.final_state = fine.post_state;
    break;
  }

  const Vector sys = out.final_state.head(d);
  out.ancilla_zero_probability = sys.squaredNorm();
  if (out.ancilla_zero_probability > 0) out.ground_fidelity = std::norm(ground.dot(sys)) / out.ancilla_zero_probability;
  Vector g0 = Vector::Zero(w.rows());
  g0.head(d) = ground;
  Matrix sector(w.rows(), 2);
  sector.col(0) = g0;
  sector.col(1) = w * g0;
  Eigen::JacobiSVD<Matrix> svd(sector, Eigen::ComputeThinU);
  const Eigen::Index rank = (svd.singularValues().array() > 1e-9).count();
  const Matrix q = svd.matrixU().leftCols(rank);
  out.ground_sector_weight = (q.adjoint() * out.final_state).squaredNorm();
  return out;
}

}  // namespace fermiprep::phaseprep
