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

#include "folp/lp_model.hpp"

#include <algorithm>
#include <cmath>

#include "folp/linalg.hpp"

namespace folp {

namespace {

void require_primal_size(const LinearProgram& lp, std::size_t n,
                         const char* what) {
  if (static_cast<Index>(n) != lp.num_variables()) {
    throw DimensionMismatch(std::string(what) + ": primal length mismatch");
  }
}

void require_dual_size(const LinearProgram& lp, std::size_t m,
                       const char* what) {
  if (static_cast<Index>(m) != lp.num_rows()) {
    throw DimensionMismatch(std::string(what) + ": dual length mismatch");
  }
}

}  // namespace

std::optional<ValidationIssue> validate(const LinearProgram& lp) {
  using Kind = ValidationIssue::Kind;
  const Index n = lp.num_variables();
  const Index m = lp.num_rows();
  if (lp.constraint_matrix.num_cols() != n) {
    return ValidationIssue{Kind::kDimensionMismatch, -1,
                           "objective length differs from matrix columns"};
  }
  if (lp.constraint_matrix.num_rows() != m) {
    return ValidationIssue{Kind::kDimensionMismatch, -1,
                           "right-hand side length differs from matrix rows"};
  }
  if (lp.num_inequality_rows < 0 || lp.num_inequality_rows > m) {
    return ValidationIssue{Kind::kDimensionMismatch, -1,
                           "num_inequality_rows out of range"};
  }
  if (static_cast<Index>(lp.variable_lower.size()) != n ||
      static_cast<Index>(lp.variable_upper.size()) != n) {
    return ValidationIssue{Kind::kDimensionMismatch, -1,
                           "bound vector length differs from variable count"};
  }
  if (!std::isfinite(lp.objective_constant)) {
    return ValidationIssue{Kind::kNonFiniteData, -1,
                           "objective constant is not finite"};
  }
  for (Index i = 0; i < n; ++i) {
    const double c = lp.objective[static_cast<std::size_t>(i)];
    if (!std::isfinite(c)) {
      return ValidationIssue{Kind::kNonFiniteData, i,
                             "objective coefficient is not finite"};
    }
  }
  for (Index i = 0; i < m; ++i) {
    const double q = lp.right_hand_side[static_cast<std::size_t>(i)];
    if (!std::isfinite(q)) {
      return ValidationIssue{Kind::kNonFiniteData, i,
                             "right-hand side entry is not finite"};
    }
  }
  for (Index i = 0; i < n; ++i) {
    const double l = lp.variable_lower[static_cast<std::size_t>(i)];
    const double u = lp.variable_upper[static_cast<std::size_t>(i)];
    if (std::isnan(l) || std::isnan(u)) {
      return ValidationIssue{Kind::kNonFiniteData, i, "bound is NaN"};
    }
    if (l == kInf || u == -kInf) {
      return ValidationIssue{Kind::kBoundViolation, i,
                             "bound closes the feasible interval"};
    }
    if (l > u) {
      return ValidationIssue{Kind::kBoundViolation, i,
                             "lower bound exceeds upper bound"};
    }
  }
  return std::nullopt;
}

double lagrangian(const LinearProgram& lp, const PrimalDualPoint& z) {
  require_primal_size(lp, z.primal.size(), "lagrangian");
  require_dual_size(lp, z.dual.size(), "lagrangian");
  const std::vector<double> kx = lp.constraint_matrix.multiply(z.primal);
  return linalg::dot(lp.objective, z.primal) - linalg::dot(z.dual, kx) +
         linalg::dot(lp.right_hand_side, z.dual) + lp.objective_constant;
}

std::vector<double> project_primal(const LinearProgram& lp,
                                   std::span<const double> x) {
  require_primal_size(lp, x.size(), "project_primal");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::min(std::max(out[i], lp.variable_lower[i]),
                      lp.variable_upper[i]);
  }
  return out;
}

std::vector<double> project_dual(const LinearProgram& lp,
                                 std::span<const double> y) {
  require_dual_size(lp, y.size(), "project_dual");
  std::vector<double> out(y.begin(), y.end());
  for (Index i = 0; i < lp.num_inequality_rows; ++i) {
    out[static_cast<std::size_t>(i)] =
        std::max(out[static_cast<std::size_t>(i)], 0.0);
  }
  return out;
}

ReducedCosts project_reduced_costs(const LinearProgram& lp,
                                   std::span<const double> v) {
  require_primal_size(lp, v.size(), "project_reduced_costs");
  ReducedCosts lambda;
  lambda.values.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool has_lower = lp.variable_lower[i] > -kInf;
    const bool has_upper = lp.variable_upper[i] < kInf;
    if (!has_lower && !has_upper) {
      lambda.values[i] = 0.0;
    } else if (!has_lower) {
      lambda.values[i] = std::min(v[i], 0.0);
    } else if (!has_upper) {
      lambda.values[i] = std::max(v[i], 0.0);
    } else {
      lambda.values[i] = v[i];
    }
  }
  return lambda;
}

double dual_objective(const LinearProgram& lp, std::span<const double> y,
                      const ReducedCosts& lambda) {
  require_dual_size(lp, y.size(), "dual_objective");
  require_primal_size(lp, lambda.values.size(), "dual_objective");
  double value = linalg::dot(lp.right_hand_side, y) + lp.objective_constant;
  for (std::size_t i = 0; i < lambda.values.size(); ++i) {
    const double li = lambda.values[i];
    if (li == 0.0) continue;  // explicit branch, never 0 * inf
    const double bound = li > 0.0 ? lp.variable_lower[i] : lp.variable_upper[i];
    if (!std::isfinite(bound)) {
      throw InfiniteProduct("dual_objective: lambda outside its sign cone");
    }
    value += bound * li;
  }
  return value;
}

double weighted_norm(const PrimalDualPoint& z, double omega) {
  if (!(omega > 0.0)) {
    throw NonPositiveWeight("weighted_norm: omega must be positive");
  }
  return std::sqrt(omega * linalg::norm2_squared(z.primal) +
                   linalg::norm2_squared(z.dual) / omega);
}

}  // namespace folp
