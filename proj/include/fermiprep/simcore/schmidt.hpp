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

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <string>
#include <unordered_map>
#include <vector>

#include "fermiprep/simcore/statevector.hpp"

namespace fermiprep {

/// Number of singular values above `tolerance` of the coefficient matrix
/// for the bipartition (registers in `subset`) | (everything else).
///
/// All-zero rows and columns are pruned before the SVD; they cannot change
/// the rank and dominate the matrix for states with idle ancillas.
inline int schmidt_rank_across(const Statevector& state, const std::vector<std::string>& subset,
                               double tolerance) {
  require(!subset.empty(), "subset_nonempty", "bipartition needs at least one register");
  BasisIndex mask = 0;
  for (const auto& name : subset) mask |= state.layout().get(name).mask();
  const BasisIndex all = state.dimension() - 1;
  require(mask != 0 && mask != all, "subset_proper", "bipartition must be proper");

  // Compress row (subset bits) and column (rest bits) indices to the
  // distinct values that actually carry amplitude.
  std::unordered_map<BasisIndex, long> row_of, col_of;
  std::vector<std::pair<BasisIndex, Amplitude>> nonzero;
  long rows = 0, cols = 0;
  const auto amps = state.amplitudes();
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    if (std::abs(amps[i]) == 0.0) continue;
    const BasisIndex r = i & mask, c = i & ~mask;
    if (row_of.try_emplace(r, rows).second) ++rows;
    if (col_of.try_emplace(c, cols).second) ++cols;
    nonzero.emplace_back(i, amps[i]);
  }
  if (nonzero.empty()) return 0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  for (const auto& [i, a] : nonzero) m(row_of.at(i & mask), col_of.at(i & ~mask)) = a;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > tolerance) ++rank;
  return rank;
}

}  // namespace fermiprep
