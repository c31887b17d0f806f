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

#ifndef FOLP_PRESOLVE_HPP_
#define FOLP_PRESOLVE_HPP_

#include <span>
#include <string>
#include <vector>

#include "folp/lp_model.hpp"

namespace folp {

/// Record of the reductions applied by presolve, sufficient to lift any
/// reduced-space point back to the original dimensions.
struct PresolveTransform {
  struct FixedVariable {
    Index original_index;
    double value;
    double objective_coefficient;
  };
  struct EmptyColumn {
    Index original_index;
    double assigned_value;
  };

  std::vector<FixedVariable> fixed_variables;   // l_i == u_i eliminations
  std::vector<Index> removed_empty_rows;        // original row indices
  std::vector<EmptyColumn> removed_empty_cols;
  double objective_offset_added = 0.0;
  Index original_rows = 0;
  Index original_cols = 0;

  Index reduced_rows() const {
    return original_rows - static_cast<Index>(removed_empty_rows.size());
  }
  Index reduced_cols() const {
    return original_cols - static_cast<Index>(fixed_variables.size()) -
           static_cast<Index>(removed_empty_cols.size());
  }
  bool is_identity() const {
    return fixed_variables.empty() && removed_empty_rows.empty() &&
           removed_empty_cols.empty();
  }
};

enum class PresolveStatus { kReduced, kPrimalInfeasible, kDualUnbounded };

struct PresolveResult {
  PresolveStatus status = PresolveStatus::kReduced;
  LinearProgram reduced;        // valid only when status == kReduced
  PresolveTransform transform;
  std::string detail;           // which rule fired, for error reporting
};

/// Applies the cheap reductions until a fixpoint: inconsistent-bound
/// detection, fixed-variable (l = u) elimination, empty-column fixing,
/// and feasible empty-row removal. Bound substitutions fold into the
/// right-hand side and the objective constant so objective values and
/// Eq-style residuals carry over. Requires validate(lp) except that
/// crossed bounds are tolerated and reported as kPrimalInfeasible.
PresolveResult presolve(const LinearProgram& lp);

/// Inverse of the presolve reductions: fixed and empty-column variables
/// are re-inserted at their recorded values, removed rows get a zero
/// dual, and surviving entries are copied back in original order.
PrimalDualPoint postsolve(const PresolveTransform& transform,
                          std::span<const double> x_reduced,
                          std::span<const double> y_reduced);

/// Projects a full-space point down to the reduced space by dropping the
/// eliminated coordinates (used to map a starting point through presolve).
PrimalDualPoint restrict_point(const PresolveTransform& transform,
                               std::span<const double> x_full,
                               std::span<const double> y_full);

}  // namespace folp

#endif  // FOLP_PRESOLVE_HPP_
