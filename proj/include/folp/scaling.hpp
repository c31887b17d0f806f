// Copyright 2026 The FOLP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOLP_SCALING_HPP_
#define FOLP_SCALING_HPP_

#include <utility>
#include <vector>

#include "folp/lp_model.hpp"

namespace folp {

/// Cumulative diagonals of the preconditioning K~ = D1 K D2.
///
/// Note on convention: the literature writes the Ruiz/Pock-Chambolle
/// diagonals as sqrt(norm), which taken literally would inflate row and
/// column norms. We store the reciprocals (each step divides by the square
/// root of the norm); that is the reading under which iterated Ruiz drives
/// every row/column infinity norm to 1.
struct DiagonalScaling {
  std::vector<double> row_scale;  // D1 diagonal, length m1+m2
  std::vector<double> col_scale;  // D2 diagonal, length n

  static DiagonalScaling identity(Index rows, Index cols) {
    return {std::vector<double>(static_cast<std::size_t>(rows), 1.0),
            std::vector<double>(static_cast<std::size_t>(cols), 1.0)};
  }
};

/// One Ruiz equilibration step: d1_j = 1/sqrt(||row j||_inf),
/// d2_i = 1/sqrt(||col i||_inf); zero rows/columns get 1.
std::pair<std::vector<double>, std::vector<double>> ruiz_step(
    const SparseMatrix& k);

/// Pock-Chambolle diagonals for alpha in [0, 2]:
/// d1_j = 1/sqrt(||row j||_{2-alpha}), d2_i = 1/sqrt(||col i||_alpha).
/// The 0-"norm" is taken as the entry count of the row/column.
std::pair<std::vector<double>, std::vector<double>> pock_chambolle_step(
    const SparseMatrix& k, double alpha);

struct ScaledProblem {
  LinearProgram lp;
  DiagonalScaling scaling;
};

/// Composes `ruiz_iterations` Ruiz steps (each on the running scaled
/// matrix) and optionally one Pock-Chambolle step, then transforms the
/// instance: K~ = D1 K D2, c~ = D2 c, q~ = D1 q, l~ = D2^-1 l,
/// u~ = D2^-1 u (infinite bounds stay infinite).
ScaledProblem rescale_problem(const LinearProgram& lp, Index ruiz_iterations,
                              bool apply_pock_chambolle, double alpha);

/// Maps a scaled-space point back: x = D2 x~, y = D1 y~.
PrimalDualPoint unscale_point(const DiagonalScaling& scaling,
                              const PrimalDualPoint& z_scaled);

}  // namespace folp

#endif  // FOLP_SCALING_HPP_
