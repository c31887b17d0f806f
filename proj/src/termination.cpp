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

#include "folp/termination.hpp"

#include <cmath>

#include "folp/linalg.hpp"

namespace folp {

ConvergenceInfo convergence_info(const LinearProgram& lp,
                                 std::span<const double> x,
                                 std::span<const double> y,
                                 KktPassLedger* ledger) {
  if (static_cast<Index>(x.size()) != lp.num_variables() ||
      static_cast<Index>(y.size()) != lp.num_rows()) {
    throw DimensionMismatch("convergence_info: point size mismatch");
  }
  if (!linalg::all_finite(x) || !linalg::all_finite(y)) {
    throw NonFiniteIterate("convergence_info: point has NaN or inf entries");
  }

  const std::vector<double> kx = lp.constraint_matrix.multiply(x);
  const std::vector<double> kty = lp.constraint_matrix.multiply_transpose(y);
  if (ledger != nullptr) {
    ledger->add_k();
    ledger->add_kt();
  }

  ConvergenceInfo info;
  info.primal_objective =
      linalg::dot(lp.objective, x) + lp.objective_constant;

  std::vector<double> residual(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    residual[i] = lp.objective[i] - kty[i];
  }
  const ReducedCosts lambda = project_reduced_costs(lp, residual);
  info.dual_objective = dual_objective(lp, y, lambda);
  info.gap_abs = std::fabs(info.dual_objective - info.primal_objective);

  double primal_sq = 0.0;
  for (Index r = 0; r < lp.num_rows(); ++r) {
    const std::size_t i = static_cast<std::size_t>(r);
    double v = lp.right_hand_side[i] - kx[i];  // q - Kx
    if (r < lp.num_inequality_rows) v = std::max(v, 0.0);  // (h - Gx)^+
    primal_sq += v * v;
  }
  info.primal_residual_norm = std::sqrt(primal_sq);

  double dual_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = residual[i] - lambda.values[i];
    dual_sq += v * v;
  }
  info.dual_residual_norm = std::sqrt(dual_sq);

  info.norm_q = linalg::norm2(lp.right_hand_side);
  info.norm_c = linalg::norm2(lp.objective);
  return info;
}

bool check_termination(const ConvergenceInfo& info, double eps) {
  const bool gap_ok =
      info.gap_abs <= eps * (1.0 + std::fabs(info.dual_objective) +
                             std::fabs(info.primal_objective));
  const bool primal_ok =
      info.primal_residual_norm <= eps * (1.0 + info.norm_q);
  const bool dual_ok = info.dual_residual_norm <= eps * (1.0 + info.norm_c);
  return gap_ok && primal_ok && dual_ok;
}

double sgm10(std::span<const double> values, double shift) {
  if (values.empty()) {
    throw std::invalid_argument("sgm10: empty input");
  }
  double log_sum = 0.0;
  for (double v : values) log_sum += std::log(v + shift);
  return std::exp(log_sum / static_cast<double>(values.size())) - shift;
}

}  // namespace folp
