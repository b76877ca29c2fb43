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

// Walks through antisymmetrizing three electrons in eight spin orbitals and
// prints the resulting signed superposition.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fermiprep/antisym.hpp"
#include "fermiprep/fyshuffle.hpp"

using namespace fermiprep;

namespace {

std::string slots(BasisIndex index, const Register& reg) {
  std::string s = "|";
  for (unsigned e = 0; e < reg.element_count; ++e) {
    if (e) s += ",";
    s += std::to_string(RegisterLayout::element(index, reg, e));
  }
  return s + ">";
}

void print_state(const Statevector& s, const std::string& reg) {
  const auto& r = s.layout().get(reg);
  for (BasisIndex i = 0; i < s.dimension(); ++i) {
    if (std::abs(s[i]) < 1e-12) continue;
    std::printf("    %+.6f%+.6fi  %s\n", s[i].real(), s[i].imag(), slots(i, r).c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
  antisym::AntisymJob job;
  job.eta = 3;
  job.n_orbitals = 8;
  job.target_values = {0, 2, 7};
  job.family = netgen::Family::Bitonic;

  try {
    const auto prep = antisym::prepare_record(job.eta, job.seed_alphabet(), job.family, seed);
    std::printf("seed register: %u values drawn from %llu symbols\n", job.eta,
                static_cast<unsigned long long>(prep.f_eta));
    std::printf("sorting network: %s, %zu comparators in %zu rounds\n",
                std::string(netgen::to_string(prep.schedule.family)).c_str(), prep.schedule.comparator_count(),
                prep.schedule.depth());
    std::printf("collision check: P(success) = %.6f, accepted after %u attempt(s)\n", prep.success_probability,
                prep.attempts);
    std::printf("seed | record Schmidt rank: %d\n", prep.schmidt_seed_vs_record);

    const auto r = antisym::antisymmetrize(prep, job);
    std::printf("\nantisymmetrized target (%u qubits for the record stage, %u for the target stage):\n",
                r.qubits_stage_a, r.qubits_stage_b);
    print_state(r.state, "target");
    const auto ref = antisym::slater_reference(job.target_values, job.n_orbitals);
    std::printf("fidelity with the determinant: %.12f\n", fidelity(r.state.amplitudes(), ref));
    std::printf("gates %zu, Toffolis %zu, T-count %zu\n", r.resources.gate_count, r.resources.toffoli_count,
                r.resources.t_count);

    const auto fy = fyshuffle::shuffle_antisymmetrize({job.eta, job.n_orbitals, job.target_values});
    std::printf("\nFisher-Yates shuffle on the same input: fidelity %.12f, %zu gates on %u qubits\n",
                fidelity(fy.state, r.state), fy.resources.gate_count, fy.qubits);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "antisymmetrize_demo: %s\n", e.what());
    return 1;
  }
  return 0;
}
