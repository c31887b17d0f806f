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

#include "folp/scaling.hpp"

#include <cmath>

namespace folp {

namespace {

std::vector<double> reciprocal_sqrt(std::vector<double> norms) {
  for (double& v : norms) {
    v = v > 0.0 ? 1.0 / std::sqrt(v) : 1.0;
  }
  return norms;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> ruiz_step(
    const SparseMatrix& k) {
  return {reciprocal_sqrt(k.axis_norms(Axis::kRows, kInf)),
          reciprocal_sqrt(k.axis_norms(Axis::kCols, kInf))};
}

std::pair<std::vector<double>, std::vector<double>> pock_chambolle_step(
    const SparseMatrix& k, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("pock_chambolle_step: alpha must be in [0,2]");
  }
  const double row_p = 2.0 - alpha;
  return {reciprocal_sqrt(k.axis_norms(Axis::kRows, row_p)),
          reciprocal_sqrt(k.axis_norms(Axis::kCols, alpha))};
}

ScaledProblem rescale_problem(const LinearProgram& lp, Index ruiz_iterations,
                              bool apply_pock_chambolle, double alpha) {
  const Index m = lp.num_rows();
  const Index n = lp.num_variables();
  DiagonalScaling cumulative = DiagonalScaling::identity(m, n);

  SparseMatrix working = lp.constraint_matrix;
  auto accumulate = [&](const std::pair<std::vector<double>,
                                        std::vector<double>>& step) {
    working = working.scaled(step.first, step.second);
    for (Index r = 0; r < m; ++r) {
      cumulative.row_scale[static_cast<std::size_t>(r)] *=
          step.first[static_cast<std::size_t>(r)];
    }
    for (Index c = 0; c < n; ++c) {
      cumulative.col_scale[static_cast<std::size_t>(c)] *=
          step.second[static_cast<std::size_t>(c)];
    }
  };

  for (Index it = 0; it < ruiz_iterations; ++it) accumulate(ruiz_step(working));
  if (apply_pock_chambolle) accumulate(pock_chambolle_step(working, alpha));

  ScaledProblem out;
  out.scaling = cumulative;
  LinearProgram& scaled = out.lp;
  // Build K~ = D1 K D2 in one shot from the cumulative diagonals.
  scaled.constraint_matrix = lp.constraint_matrix.scaled(
      cumulative.row_scale, cumulative.col_scale);
  scaled.num_inequality_rows = lp.num_inequality_rows;
  scaled.objective_constant = lp.objective_constant;
  scaled.objective.resize(static_cast<std::size_t>(n));
  scaled.variable_lower.resize(static_cast<std::size_t>(n));
  scaled.variable_upper.resize(static_cast<std::size_t>(n));
  for (Index c = 0; c < n; ++c) {
    const std::size_t i = static_cast<std::size_t>(c);
    const double d2 = cumulative.col_scale[i];
    scaled.objective[i] = lp.objective[i] * d2;
    scaled.variable_lower[i] = lp.variable_lower[i] / d2;
    scaled.variable_upper[i] = lp.variable_upper[i] / d2;
  }
  scaled.right_hand_side.resize(static_cast<std::size_t>(m));
  for (Index r = 0; r < m; ++r) {
    const std::size_t i = static_cast<std::size_t>(r);
    scaled.right_hand_side[i] =
        lp.right_hand_side[i] * cumulative.row_scale[i];
  }
  return out;
}

PrimalDualPoint unscale_point(const DiagonalScaling& scaling,
                              const PrimalDualPoint& z_scaled) {
  if (z_scaled.primal.size() != scaling.col_scale.size() ||
      z_scaled.dual.size() != scaling.row_scale.size()) {
    throw DimensionMismatch("unscale_point: size mismatch");
  }
  PrimalDualPoint z = z_scaled;
  for (std::size_t i = 0; i < z.primal.size(); ++i) {
    z.primal[i] *= scaling.col_scale[i];
  }
  for (std::size_t j = 0; j < z.dual.size(); ++j) {
    z.dual[j] *= scaling.row_scale[j];
  }
  return z;
}

}  // namespace folp
