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

#ifndef FOLP_TERMINATION_HPP_
#define FOLP_TERMINATION_HPP_

#include <span>
#include <vector>

#include "folp/lp_model.hpp"
#include "folp/types.hpp"

namespace folp {

/// Residuals and objective values entering the three optimality tests:
/// objective gap, primal feasibility, dual feasibility.
struct ConvergenceInfo {
  double primal_objective = 0.0;    // c'x + constant
  double dual_objective = 0.0;      // q'y + bound terms + constant
  double gap_abs = 0.0;             // |dual - primal|
  double primal_residual_norm = 0.0;  // ||(Ax - b; (h - Gx)^+)||_2
  double dual_residual_norm = 0.0;    // ||c - K'y - lambda||_2
  double norm_q = 0.0;
  double norm_c = 0.0;

  bool operator==(const ConvergenceInfo& other) const = default;
};

/// Counts multiplications by K and K'. One "KKT pass" is half of their sum,
/// so a PDHG step (2 K-applies + 1 K'-apply) costs 1.5 and a residual
/// evaluation (1 + 1) costs 1.
struct KktPassLedger {
  Index k_multiplies = 0;
  Index kt_multiplies = 0;

  void add_k(Index count = 1) { k_multiplies += count; }
  void add_kt(Index count = 1) { kt_multiplies += count; }
  void merge(const KktPassLedger& other) {
    k_multiplies += other.k_multiplies;
    kt_multiplies += other.kt_multiplies;
  }
};

inline double kkt_passes(const KktPassLedger& ledger) {
  return 0.5 * static_cast<double>(ledger.k_multiplies + ledger.kt_multiplies);
}

/// Evaluates residuals and objectives of (x, y) against lp, computing
/// lambda = proj(c - K'y) internally. Charges 1 K and 1 K' application
/// when a ledger is supplied.
ConvergenceInfo convergence_info(const LinearProgram& lp,
                                 std::span<const double> x,
                                 std::span<const double> y,
                                 KktPassLedger* ledger = nullptr);

/// True iff all three tolerance tests hold:
///   gap_abs <= eps (1 + |dual_obj| + |primal_obj|)
///   primal_residual <= eps (1 + ||q||)
///   dual_residual <= eps (1 + ||c||)
bool check_termination(const ConvergenceInfo& info, double eps);

/// Shifted geometric mean: exp(mean(log(v_i + shift))) - shift.
double sgm10(std::span<const double> values, double shift = 10.0);

}  // namespace folp

#endif  // FOLP_TERMINATION_HPP_
