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

#ifndef FOLP_LP_MODEL_HPP_
#define FOLP_LP_MODEL_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folp/sparse_matrix.hpp"
#include "folp/types.hpp"

namespace folp {

/// A linear program in the combined two-block form
///
///   minimize    c'x + objective_constant
///   subject to  Gx >= h        (rows 0 .. m1-1 of K)
///               Ax  = b        (rows m1 .. end of K)
///               l <= x <= u
///
/// with K = (G; A) and q = (h; b). Bounds may be -inf/+inf; everything
/// else is finite. Instances are immutable after construction and safe to
/// share across concurrent solves.
struct LinearProgram {
  std::vector<double> objective;       // c
  double objective_constant = 0.0;     // accumulated by presolve; 0 for raw
  SparseMatrix constraint_matrix;      // K
  std::vector<double> right_hand_side; // q = (h; b)
  Index num_inequality_rows = 0;       // m1
  std::vector<double> variable_lower;  // l, entries in R u {-inf}
  std::vector<double> variable_upper;  // u, entries in R u {+inf}

  Index num_variables() const { return static_cast<Index>(objective.size()); }
  Index num_rows() const {
    return static_cast<Index>(right_hand_side.size());
  }
  Index num_equality_rows() const { return num_rows() - num_inequality_rows; }

  bool operator==(const LinearProgram& other) const = default;
};

/// Primal-dual pair z = (x, y).
struct PrimalDualPoint {
  std::vector<double> primal;  // x, length n
  std::vector<double> dual;    // y, length m1+m2

  bool operator==(const PrimalDualPoint& other) const = default;
};

/// Reduced costs lambda, living in the sign cone determined per
/// coordinate by which variable bounds are finite.
struct ReducedCosts {
  std::vector<double> values;
};

struct ValidationIssue {
  enum class Kind { kDimensionMismatch, kBoundViolation, kNonFiniteData };
  Kind kind;
  Index index;  // first offending coordinate, -1 when not applicable
  std::string message;
};

/// Checks the LinearProgram invariants; nullopt means the instance is
/// well formed. The first violated invariant is reported.
std::optional<ValidationIssue> validate(const LinearProgram& lp);

/// L(x, y) = c'x - y'Kx + q'y + objective_constant.
double lagrangian(const LinearProgram& lp, const PrimalDualPoint& z);

/// Componentwise clamp of x into [l, u].
std::vector<double> project_primal(const LinearProgram& lp,
                                   std::span<const double> x);

/// Clamps the first m1 components to >= 0; equality duals stay free.
std::vector<double> project_dual(const LinearProgram& lp,
                                 std::span<const double> y);

/// Projects v onto the reduced-cost cone: 0 for free variables,
/// min(v, 0) when only the upper bound is finite, max(v, 0) when only the
/// lower bound is finite, v itself for boxed variables.
ReducedCosts project_reduced_costs(const LinearProgram& lp,
                                   std::span<const double> v);

/// q'y + sum_{lambda_i > 0} l_i lambda_i + sum_{lambda_i < 0} u_i lambda_i
/// + objective_constant. Coordinates with lambda_i = 0 contribute exactly
/// zero even when the matching bound is infinite.
double dual_objective(const LinearProgram& lp, std::span<const double> y,
                      const ReducedCosts& lambda);

/// ||z||_omega = sqrt(omega ||x||^2 + ||y||^2 / omega), omega > 0.
double weighted_norm(const PrimalDualPoint& z, double omega);

}  // namespace folp

#endif  // FOLP_LP_MODEL_HPP_
