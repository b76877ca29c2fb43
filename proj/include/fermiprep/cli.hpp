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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fermiprep/antisym.hpp"
#include "fermiprep/errors.hpp"
#include "fermiprep/fyshuffle.hpp"
#include "fermiprep/netgen.hpp"
#include "fermiprep/phaseprep.hpp"
#include "fermiprep/qcompare.hpp"
#include "fermiprep/qubitize.hpp"
#include "fermiprep/simcore.hpp"

namespace fermiprep::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCapacity = 3;

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline void write_string(std::string& out, const std::string& s) { out += Json(s).dump(); }

inline void write(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        write_string(out, it.key());
        out += ": ";
        write(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j) scalars &= !e.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(out, j[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Pretty JSON with floats printed to 17 significant digits.
inline std::string dump(const Json& j) {
  std::string out;
  detail::write(out, j, 0);
  out += "\n";
  return out;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Json to_json(const ResourceTally& t) { return tally_to_json(t); }

inline Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------------------
// Environment

inline std::filesystem::path data_dir() {
  if (const char* e = std::getenv("FERMIPREP_DATA_DIR"); e && *e) return e;
#ifdef FERMIPREP_DEFAULT_DATA_DIR
  return FERMIPREP_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

inline std::optional<std::filesystem::path> default_output_dir() {
  if (const char* e = std::getenv("FERMIPREP_OUTPUT_DIR"); e && *e) return std::filesystem::path(e);
  return std::nullopt;
}

inline Json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  require(static_cast<bool>(in), "file_readable", "cannot open '" + p.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("json_well_formed", p.string() + ": " + e.what());
  }
}

/// Fixture lookup: <data dir>/fixtures/<name>.json, then the built-in table.
inline std::pair<phaseprep::Fixture, std::string> load_fixture(const std::string& name) {
  const auto p = data_dir() / "fixtures" / (name + ".json");
  if (std::filesystem::exists(p)) return {phaseprep::fixture_from_json(read_json_file(p)), p.string()};
  return {phaseprep::builtin_fixture(name), "builtin"};
}

// ---------------------------------------------------------------------------
// Subcommands

struct Common {
  std::uint64_t seed = 0;
  std::string output;
};

struct AntisymOptions {
  unsigned eta = 0;
  std::uint64_t orbitals = 0;
  std::vector<BasisIndex> values;
  std::string network = "bitonic";
  std::string variant = "parallel";
  std::uint64_t f = 0;
  bool no_fanout = false;
  unsigned attempt_limit = 16;
};

inline std::vector<BasisIndex> default_values(unsigned eta, const std::vector<BasisIndex>& given) {
  if (!given.empty()) return given;
  std::vector<BasisIndex> v(eta);
  for (unsigned i = 0; i < eta; ++i) v[i] = i;
  return v;
}

inline Json run_antisym(const AntisymOptions& o, const Common& c, Json& config) {
  antisym::AntisymJob job;
  job.eta = o.eta;
  job.n_orbitals = o.orbitals;
  job.f_eta = o.f;
  job.family = netgen::family_from_string(o.network);
  job.target_values = default_values(o.eta, o.values);
  job.variant = qcompare::variant_from_string(o.variant);
  job.fanout = !o.no_fanout;
  job.attempt_limit = o.attempt_limit;
  config = {{"eta", job.eta},
            {"orbitals", job.n_orbitals},
            {"values", job.target_values},
            {"network", o.network},
            {"variant", o.variant},
            {"f", job.seed_alphabet()},
            {"fanout", job.fanout},
            {"attempt_limit", job.attempt_limit},
            {"seed", c.seed}};
  const auto r = antisym::antisymmetrize(job, c.seed);
  const auto ref = antisym::slater_reference(job.target_values, job.n_orbitals);
  Json j;
  j["eta"] = job.eta;
  j["N"] = job.n_orbitals;
  j["f"] = job.seed_alphabet();
  j["network_family"] = o.network;
  j["success_probability"] = r.success_probability;
  j["attempts"] = r.attempts;
  j["resources"] = {{"total", to_json(r.resources)},
                    {"record_preparation", to_json(r.steps_1_to_3)},
                    {"reverse_sort", to_json(r.step_4)},
                    {"comparators", r.comparators},
                    {"comparators_emitted", r.comparators_emitted},
                    {"qubits_record_preparation", r.qubits_stage_a},
                    {"qubits_reverse_sort", r.qubits_stage_b}};
  j["fidelity_vs_oracle"] = fidelity(r.state.amplitudes(), ref);
  j["antisymmetric"] = antisym::verify_antisymmetry(r.state);
  j["schmidt_rank_seed_vs_record"] = r.schmidt_seed_vs_record;
  j["residual"] = r.residual;
  return j;
}

struct ShuffleOptions {
  unsigned eta = 0;
  std::uint64_t orbitals = 0;
  std::vector<BasisIndex> values;
  std::string variant = "parallel";
};

inline Json run_shuffle(const ShuffleOptions& o, Json& config) {
  fyshuffle::ShuffleJob job;
  job.eta = o.eta;
  job.n_orbitals = o.orbitals;
  job.input_values = default_values(o.eta, o.values);
  job.variant = qcompare::variant_from_string(o.variant);
  config = {{"eta", job.eta}, {"orbitals", job.n_orbitals}, {"values", job.input_values}, {"variant", o.variant}};
  const auto r = fyshuffle::shuffle_antisymmetrize(job);
  const auto ref = antisym::slater_reference(job.input_values, job.n_orbitals);
  Json j;
  j["eta"] = job.eta;
  j["N"] = job.n_orbitals;
  j["qubits"] = r.qubits;
  j["resources"] = to_json(r.resources);
  auto blocks = Json::array();
  for (const auto& t : r.block_tallies) blocks.push_back(to_json(t));
  j["block_tallies"] = std::move(blocks);
  j["detangle_tally"] = to_json(r.detangle_tally);
  j["fidelity_vs_oracle"] = fidelity(r.state.amplitudes(), ref);
  j["antisymmetric"] = antisym::verify_antisymmetry(r.state, "input");
  j["choice_residuals"] = r.choice_residuals;
  j["index_residual"] = r.index_residual;
  j["scratch_residual"] = r.scratch_residual;
  j["schmidt_rank_index_vs_input"] = r.schmidt_index_vs_input;
  return j;
}

struct NetgenOptions {
  std::string family = "bitonic";
  unsigned wires = 0;
  bool verify = false;
  unsigned width = 4;
  std::string variant = "parallel";
  bool no_fanout = false;
};

inline Json run_netgen(const NetgenOptions& o, Json& config) {
  config = {{"family", o.family},   {"wires", o.wires},          {"verify", o.verify},
            {"width", o.width},     {"variant", o.variant},      {"fanout", !o.no_fanout}};
  const auto s = netgen::generate(netgen::family_from_string(o.family), o.wires);
  const auto res = netgen::resource_summary(s, o.width, qcompare::variant_from_string(o.variant), !o.no_fanout);
  Json j;
  j["family"] = o.family;
  j["wires"] = o.wires;
  j["comparators"] = s.comparator_count();
  j["depth"] = s.depth();
  j["zero_one_verified"] = o.verify ? Json(netgen::verify_zero_one(s)) : Json(nullptr);
  j["rounds"] = netgen::as_json(s)["rounds"];
  j["resources"] = {{"element_width", res.element_width},
                    {"ancillas_per_comparator", res.ancillas_per_comparator},
                    {"per_oracle", to_json(res.per_oracle)},
                    {"per_comparator", to_json(res.per_comparator)},
                    {"total_gates", res.total_gates},
                    {"total_toffoli", res.total_toffoli},
                    {"total_t_count", res.total_t_count},
                    {"total_t_count_standard", res.total_t_count_standard},
                    {"total_clifford", res.total_clifford},
                    {"total_depth", res.total_depth},
                    {"record_qubits", res.record_qubits}};
  j["reference"] = {{"inputs", netgen::kReferenceInputs},
                    {"depth", netgen::kReferenceDepth},
                    {"comparators", netgen::kReferenceComparators}};
  return j;
}

struct CompareOptions {
  unsigned width = 0;
  std::string variant = "parallel";
  bool no_fanout = false;
  std::optional<BasisIndex> a, b;
  bool emit_circuit = false;
};

inline Json run_compare(const CompareOptions& o, Json& config) {
  const auto v = qcompare::variant_from_string(o.variant);
  config = {{"width", o.width},
            {"variant", o.variant},
            {"fanout", !o.no_fanout},
            {"a", o.a ? Json(*o.a) : Json(nullptr)},
            {"b", o.b ? Json(*o.b) : Json(nullptr)},
            {"emit_circuit", o.emit_circuit}};
  require(o.a.has_value() == o.b.has_value(), "compare_inputs_paired", "give both --a and --b or neither");
  const auto bundle = qcompare::build_full_comparator(o.width, v, !o.no_fanout);
  const auto& layout = bundle.full_comparator.layout();
  Json j;
  j["width"] = o.width;
  j["qubits"] = layout.num_qubits();
  j["ancillas"] = bundle.ancilla_count;
  j["oracle"] = to_json(bundle.oracle_circuit.tally());
  j["swap"] = to_json(bundle.swap_circuit.tally());
  j["comparator"] = to_json(bundle.full_comparator.tally());
  if (o.a) {
    const BasisIndex lim = BasisIndex{1} << o.width;
    require(*o.a < lim && *o.b < lim, "compare_inputs_in_range", "inputs must fit in --width bits");
    const auto& ra = layout.get("a");
    const auto& rb = layout.get("b");
    const auto& rr = layout.get("record");
    BasisIndex idx = RegisterLayout::with_value(0, ra, *o.a);
    idx = RegisterLayout::with_value(idx, rb, *o.b);
    const auto out = ran(Statevector::basis(layout, idx), bundle.full_comparator);
    BasisIndex peak = 0;
    for (BasisIndex i = 0; i < out.dimension(); ++i)
      if (std::norm(out[i]) > std::norm(out[peak])) peak = i;
    j["evaluation"] = {{"a_in", *o.a},
                       {"b_in", *o.b},
                       {"record", RegisterLayout::value(peak, rr)},
                       {"a_out", RegisterLayout::value(peak, ra)},
                       {"b_out", RegisterLayout::value(peak, rb)},
                       {"scratch_clean", mass_outside_zero(out, "scratch") < 1e-12},
                       {"basis_probability", std::norm(out[peak])}};
  }
  if (o.emit_circuit) j["circuit"] = fermiprep::to_json(bundle.full_comparator);
  return j;
}

struct HamiltonianOptions {
  std::vector<std::string> terms;  // "coef:PAULI"
  std::string hamiltonian_file;
  unsigned random_qubits = 0;
  unsigned random_terms = 0;
};

inline qubitize::LcuHamiltonian resolve_hamiltonian(const HamiltonianOptions& o, std::uint64_t seed, Json& config) {
  const int sources = !o.terms.empty() + !o.hamiltonian_file.empty() + (o.random_qubits > 0);
  require(sources == 1, "hamiltonian_source", "give exactly one of --terms, --hamiltonian, --random-qubits");
  if (!o.terms.empty()) {
    std::vector<double> a;
    std::vector<std::string> p;
    for (const auto& t : o.terms) {
      const auto colon = t.find(':');
      require(colon != std::string::npos, "term_syntax", "terms look like 0.5:XZ, got '" + t + "'");
      try {
        a.push_back(std::stod(t.substr(0, colon)));
      } catch (const std::exception&) {
        throw ValidationError("term_syntax", "bad coefficient in '" + t + "'");
      }
      p.push_back(t.substr(colon + 1));
    }
    config["terms"] = o.terms;
    return qubitize::lcu_from_paulis(a, p);
  }
  if (!o.hamiltonian_file.empty()) {
    config["hamiltonian"] = o.hamiltonian_file;
    return qubitize::lcu_from_json(read_json_file(o.hamiltonian_file));
  }
  require(o.random_terms >= 1, "random_terms_positive", "--random-terms must be >= 1");
  config["random_qubits"] = o.random_qubits;
  config["random_terms"] = o.random_terms;
  config["seed"] = seed;
  std::mt19937_64 rng(seed);
  return qubitize::random_lcu(o.random_qubits, o.random_terms, rng);
}

inline Json run_qubitize(const HamiltonianOptions& o, const Common& c, Json& config) {
  const auto lcu = resolve_hamiltonian(o, c.seed, config);
  const auto r = qubitize::spectral_check(lcu);
  Json j;
  j["lambda"] = r.lambda;
  j["system_qubits"] = lcu.num_system_qubits();
  j["embedded"] = r.embedded;
  j["subspace_dimension"] = r.subspace_dimension;
  j["reference_energies"] = r.reference_energies;
  j["expected_energies"] = r.expected_energies;
  j["recovered_energies"] = r.recovered_energies;
  auto flagged = Json::array();
  for (auto z : r.flagged_eigenvalues) flagged.push_back(complex_json(z));
  j["flagged_eigenvalues"] = std::move(flagged);
  j["max_abs_error"] = r.max_abs_error;
  j["max_modulus_error"] = r.max_modulus_error;
  j["multiset_match"] = r.multiset_match;
  return j;
}

struct PhaseOptions {
  HamiltonianOptions h;
  std::vector<double> state;
  unsigned bits = 10;
  unsigned coarse_bits = 0;
  std::optional<double> e0_bound, e_star;
  unsigned attempt_limit = 64;
};

inline Json run_phase_estimate(const PhaseOptions& o, const Common& c, Json& config) {
  const auto lcu = resolve_hamiltonian(o.h, c.seed, config);
  const Eigen::Index d = lcu.dimension();
  qubitize::Vector phi = qubitize::Vector::Zero(d);
  if (o.state.empty()) {
    phi(0) = 1;
  } else {
    require(static_cast<Eigen::Index>(o.state.size()) == d, "initial_state_dimension",
            "--state needs " + std::to_string(d) + " amplitudes");
    for (Eigen::Index i = 0; i < d; ++i) phi(i) = o.state[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<qubitize::Matrix>(lcu.hamiltonian()).eigenvalues();
  double e1 = ev(0);
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (ev(i) > ev(0) + 1e-9) {
      e1 = ev(i);
      break;
    }
  phaseprep::PipelineParams pp;
  pp.bits = o.bits;
  pp.coarse_bits = o.coarse_bits;
  pp.e_star = o.e_star.value_or(e1);
  pp.e0_bound = o.e0_bound.value_or((ev(0) + pp.e_star) / 2);
  pp.attempt_limit = o.attempt_limit;
  std::vector<double> state(phi.size());
  for (Eigen::Index i = 0; i < phi.size(); ++i) state[static_cast<std::size_t>(i)] = phi(i).real();
  config["state"] = state;
  config["bits"] = pp.bits;
  config["coarse_bits"] = pp.coarse_bits;
  config["e0_bound"] = pp.e0_bound;
  config["e_star"] = pp.e_star;
  config["attempt_limit"] = pp.attempt_limit;
  config["seed"] = c.seed;
  const auto r = phaseprep::end_to_end_ground_state(lcu, phi, pp, c.seed);
  Json j;
  j["energy"] = r.energy;
  j["phase"] = r.phase;
  j["reference_ground_energy"] = r.reference_ground_energy;
  j["abs_error"] = std::abs(r.energy - r.reference_ground_energy);
  j["resolution"] = r.resolution;
  j["lambda"] = lcu.lambda();
  j["attempts"] = r.attempts;
  j["rejections"] = r.rejections;
  j["coarse_bits"] = r.coarse_bits;
  j["walk_applications"] = r.walk_applications;
  j["alpha0"] = r.alpha0;
  j["ground_fidelity"] = r.ground_fidelity;
  j["ground_sector_weight"] = r.ground_sector_weight;
  j["ancilla_zero_probability"] = r.ancilla_zero_probability;
  return j;
}

struct CostOptions {
  std::string fixture = "water-stretched";
  std::string fixture_file;
  std::size_t trials = 10000;
};

inline Json run_report_json(const phaseprep::RunReport& r) {
  Json hist = Json::object();
  for (const auto& [k, v] : r.attempts_histogram) hist[std::to_string(k)] = v;
  return {{"strategy", r.strategy},   {"trials", r.trials},
          {"mean_cost", r.mean_cost}, {"std_err", r.std_err},
          {"analytic_cost", r.analytic_cost}, {"mean_attempts", r.mean_attempts},
          {"attempts_histogram", std::move(hist)}};
}

inline Json run_cost_model(const CostOptions& o, const Common& c, Json& config) {
  phaseprep::Fixture f;
  std::string source;
  if (!o.fixture_file.empty()) {
    f = phaseprep::fixture_from_json(read_json_file(o.fixture_file));
    source = o.fixture_file;
  } else {
    std::tie(f, source) = load_fixture(o.fixture);
  }
  const auto& p = f.params;
  config = {{"fixture", f.name}, {"fixture_source", source}, {"trials", o.trials}, {"seed", c.seed}};
  Json params = {{"alpha0", p.alpha0},
                 {"e0", p.e0},
                 {"e1", p.e1 ? Json(*p.e1) : Json(nullptr)},
                 {"e_star", p.e_star},
                 {"e0_bound", p.e0_bound},
                 {"epsilon_f", p.epsilon_f},
                 {"use_amplitude_amplification", p.use_amplitude_amplification},
                 {"e1_bound", p.e1_bound ? Json(*p.e1_bound) : Json(nullptr)}};
  const auto rej = phaseprep::rejection_run(f.model, p, c.seed, o.trials);
  const auto nai = phaseprep::naive_run(f.model, p, c.seed, o.trials);
  Json j;
  j["fixture"] = f.name;
  j["params"] = std::move(params);
  j["model"] = {{"energies", f.model.energies}, {"overlaps", f.model.overlaps}};
  j["rejection"] = run_report_json(rej);
  j["naive"] = run_report_json(nai);
  j["speedup"] = nai.mean_cost / rej.mean_cost;
  j["analytic_speedup"] = nai.analytic_cost / rej.analytic_cost;
  j["amplitude_amplified_cost"] = p.e1_bound ? Json(phaseprep::amplitude_amplified_cost(p)) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Entry point

inline Json error_json(const std::string& command, const std::string& kind, const std::string& invariant,
                       const std::string& message) {
  Json j;
  j["command"] = command;
  j["error"] = {{"kind", kind}, {"invariant", invariant}, {"message", message}};
  return j;
}

/// Parses `args` (program name first), runs one subcommand and writes one
/// JSON document to `out` or to the resolved output file.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fermionic state preparation toolkit", "fermiprep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fermiprep 0.1.0");

  Common common;
  auto add_common = [&](CLI::App* s, bool seeded) {
    if (seeded) s->add_option("--seed", common.seed, "RNG seed")->capture_default_str();
    s->add_option("-o,--output", common.output, "Output file (default: stdout)");
  };

  AntisymOptions as;
  auto* s_as = app.add_subcommand("antisym", "Antisymmetrize sorted orbital indices via a reversed sorting network");
  s_as->add_option("--eta", as.eta, "Number of electrons")->required();
  s_as->add_option("--orbitals", as.orbitals, "Number of spin orbitals N")->required();
  s_as->add_option("--values", as.values, "Ascending orbital indices")->delimiter(',');
  s_as->add_option("--network", as.network, "bitonic | odd-even-mergesort | insertion")->capture_default_str();
  s_as->add_option("--variant", as.variant, "parallel | sequential")->capture_default_str();
  s_as->add_option("--f", as.f, "Seed alphabet size (0: smallest power of two >= eta^2)");
  s_as->add_flag("--no-fanout", as.no_fanout, "Controlled swaps without fan-out ancillas");
  s_as->add_option("--attempt-limit", as.attempt_limit, "Collision-check retries")->capture_default_str();
  add_common(s_as, true);

  ShuffleOptions sh;
  auto* s_sh = app.add_subcommand("shuffle", "Antisymmetrize via the quantum Fisher-Yates shuffle");
  s_sh->add_option("--eta", sh.eta, "Number of electrons")->required();
  s_sh->add_option("--orbitals", sh.orbitals, "Number of spin orbitals N")->required();
  s_sh->add_option("--values", sh.values, "Ascending orbital indices")->delimiter(',');
  s_sh->add_option("--variant", sh.variant, "parallel | sequential")->capture_default_str();
  add_common(s_sh, false);

  NetgenOptions ng;
  auto* s_ng = app.add_subcommand("netgen", "Generate and cost a sorting network");
  s_ng->add_option("--family", ng.family, "bitonic | odd-even-mergesort | insertion")->capture_default_str();
  s_ng->add_option("--wires", ng.wires, "Number of wires")->required();
  s_ng->add_flag("--verify", ng.verify, "Run the exhaustive 0-1 check");
  s_ng->add_option("--width", ng.width, "Bits per wire for quantum costing")->capture_default_str();
  s_ng->add_option("--variant", ng.variant, "parallel | sequential")->capture_default_str();
  s_ng->add_flag("--no-fanout", ng.no_fanout, "Controlled swaps without fan-out ancillas");
  add_common(s_ng, false);

  CompareOptions cp;
  auto* s_cp = app.add_subcommand("compare", "Build and cost one quantum comparator");
  s_cp->add_option("--width", cp.width, "Bits per register")->required();
  s_cp->add_option("--variant", cp.variant, "parallel | sequential")->capture_default_str();
  s_cp->add_flag("--no-fanout", cp.no_fanout, "Controlled swap without fan-out ancillas");
  s_cp->add_option("--a", cp.a, "Classical value of register A");
  s_cp->add_option("--b", cp.b, "Classical value of register B");
  s_cp->add_flag("--emit-circuit", cp.emit_circuit, "Embed the gate list");
  add_common(s_cp, false);

  auto add_hamiltonian = [](CLI::App* s, HamiltonianOptions& h) {
    s->add_option("--terms", h.terms, "Pauli terms coef:STRING, comma separated")->delimiter(',');
    s->add_option("--hamiltonian", h.hamiltonian_file, "LCU JSON file");
    s->add_option("--random-qubits", h.random_qubits, "Random LCU on this many qubits");
    s->add_option("--random-terms", h.random_terms, "Terms in the random LCU");
  };

  HamiltonianOptions qb;
  auto* s_qb = app.add_subcommand("qubitize", "Check that the qubiterate spectrum reproduces H");
  add_hamiltonian(s_qb, qb);
  add_common(s_qb, true);

  PhaseOptions pe;
  auto* s_pe = app.add_subcommand("phase-estimate", "Iterative phase estimation with rejection on the qubiterate");
  add_hamiltonian(s_pe, pe.h);
  s_pe->add_option("--state", pe.state, "Real initial amplitudes (default |0>)")->delimiter(',');
  s_pe->add_option("--bits", pe.bits, "Fine phase bits")->capture_default_str();
  s_pe->add_option("--coarse-bits", pe.coarse_bits, "Coarse phase bits (0: from the gap)");
  s_pe->add_option("--e0-bound", pe.e0_bound, "Upper bound on the ground energy");
  s_pe->add_option("--e-star", pe.e_star, "Lowest excited energy with support");
  s_pe->add_option("--attempt-limit", pe.attempt_limit, "Restart budget")->capture_default_str();
  add_common(s_pe, true);

  CostOptions cm;
  auto* s_cm = app.add_subcommand("cost-model", "Monte-Carlo cost of rejection versus naive phase estimation");
  s_cm->add_option("--fixture", cm.fixture, "Named spectral fixture")->capture_default_str();
  s_cm->add_option("--fixture-file", cm.fixture_file, "Spectral fixture JSON file");
  s_cm->add_option("--trials", cm.trials, "Monte-Carlo trials")->capture_default_str();
  add_common(s_cm, true);

  std::string command = "fermiprep";
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    out << dump(error_json(command, "usage", "flag_grammar", e.what()));
    return kExitValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  command = sub->get_name();
  Json config;
  Json result;
  const std::map<std::string, std::function<Json()>> dispatch{
      {"antisym", [&] { return run_antisym(as, common, config); }},
      {"shuffle", [&] { return run_shuffle(sh, config); }},
      {"netgen", [&] { return run_netgen(ng, config); }},
      {"compare", [&] { return run_compare(cp, config); }},
      {"qubitize", [&] { return run_qubitize(qb, common, config); }},
      {"phase-estimate", [&] { return run_phase_estimate(pe, common, config); }},
      {"cost-model", [&] { return run_cost_model(cm, common, config); }},
  };

  auto emit = [&](const Json& doc) {
    std::filesystem::path path = common.output;
    if (path.empty()) {
      if (auto dir = default_output_dir()) path = *dir / (command + ".json");
    }
    if (path.empty()) {
      out << dump(doc);
      return;
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    require(static_cast<bool>(f), "output_writable", "cannot write '" + path.string() + "'");
    f << dump(doc);
    err << "wrote " << path.string() << "\n";
  };

  try {
    result = dispatch.at(command)();
  } catch (const ValidationError& e) {
    err << "fermiprep " << command << ": invariant '" << e.invariant() << "' violated: " << e.what() << "\n";
    out << dump(error_json(command, "validation", e.invariant(), e.what()));
    return kExitValidation;
  } catch (const CapacityError& e) {
    err << "fermiprep " << command << ": " << e.what() << "\n";
    out << dump(error_json(command, "capacity", "qubit_cap", e.what()));
    return kExitCapacity;
  } catch (const AttemptLimitError& e) {
    err << "fermiprep " << command << ": " << e.what() << "\n";
    out << dump(error_json(command, "attempt_limit", "attempt_limit", e.what()));
    return kExitCapacity;
  }

  Json doc;
  doc["command"] = command;
  doc["config"] = config;
  for (auto it = result.begin(); it != result.end(); ++it) doc[it.key()] = it.value();
  doc["generated_at"] = utc_timestamp();
  try {
    emit(doc);
  } catch (const ValidationError& e) {
    err << "fermiprep " << command << ": " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace fermiprep::cli
