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

#include "folp/presolve.hpp"

#include <algorithm>
#include <cmath>

namespace folp {

namespace {

// Rows emptied by substitution carry rounding from q <- q - K_col * value,
// so their feasibility test gets a small scaled slack. Originally empty
// rows have exact right-hand sides and effectively see an exact test.
double empty_row_slack(double original_rhs) {
  return 1e-12 * (1.0 + std::fabs(original_rhs));
}

std::string index_str(Index i) { return std::to_string(i); }

}  // namespace

PresolveResult presolve(const LinearProgram& lp) {
  const Index m = lp.num_rows();
  const Index n = lp.num_variables();
  const SparseMatrix& K = lp.constraint_matrix;

  PresolveResult result;
  result.transform.original_rows = m;
  result.transform.original_cols = n;

  std::vector<char> row_alive(static_cast<std::size_t>(m), 1);
  std::vector<char> col_alive(static_cast<std::size_t>(n), 1);
  std::vector<Index> row_live_entries(static_cast<std::size_t>(m), 0);
  std::vector<Index> col_live_entries(static_cast<std::size_t>(n), 0);
  std::vector<double> rhs = lp.right_hand_side;
  double offset = lp.objective_constant;

  for (Index r = 0; r < m; ++r) {
    row_live_entries[static_cast<std::size_t>(r)] =
        K.row_start()[r + 1] - K.row_start()[r];
  }
  for (Index c = 0; c < n; ++c) {
    col_live_entries[static_cast<std::size_t>(c)] =
        K.col_start()[c + 1] - K.col_start()[c];
  }

  // Substitutes x_i = value: folds the column into the right-hand side.
  auto eliminate_column = [&](Index col, double value) {
    for (Index k = K.col_start()[col]; k < K.col_start()[col + 1]; ++k) {
      const Index r = K.col_rows()[k];
      if (!row_alive[static_cast<std::size_t>(r)]) continue;
      rhs[static_cast<std::size_t>(r)] -= K.col_values()[k] * value;
      row_live_entries[static_cast<std::size_t>(r)]--;
    }
    offset += lp.objective[static_cast<std::size_t>(col)] * value;
    col_alive[static_cast<std::size_t>(col)] = 0;
  };

  auto eliminate_row = [&](Index row) {
    for (Index k = K.row_start()[row]; k < K.row_start()[row + 1]; ++k) {
      const Index c = K.row_cols()[k];
      if (col_alive[static_cast<std::size_t>(c)]) {
        col_live_entries[static_cast<std::size_t>(c)]--;
      }
    }
    row_alive[static_cast<std::size_t>(row)] = 0;
    result.transform.removed_empty_rows.push_back(row);
  };

  bool changed = true;
  while (changed) {
    changed = false;

    for (Index c = 0; c < n; ++c) {
      if (!col_alive[static_cast<std::size_t>(c)]) continue;
      const double lo = lp.variable_lower[static_cast<std::size_t>(c)];
      const double hi = lp.variable_upper[static_cast<std::size_t>(c)];
      if (lo > hi) {
        result.status = PresolveStatus::kPrimalInfeasible;
        result.detail = "crossed bounds on variable " + index_str(c);
        return result;
      }
      if (lo == hi) {
        eliminate_column(c, lo);
        result.transform.fixed_variables.push_back(
            {c, lo, lp.objective[static_cast<std::size_t>(c)]});
        changed = true;
      }
    }

    for (Index c = 0; c < n; ++c) {
      if (!col_alive[static_cast<std::size_t>(c)] ||
          col_live_entries[static_cast<std::size_t>(c)] != 0) {
        continue;
      }
      const double cost = lp.objective[static_cast<std::size_t>(c)];
      const double lo = lp.variable_lower[static_cast<std::size_t>(c)];
      const double hi = lp.variable_upper[static_cast<std::size_t>(c)];
      double value = 0.0;
      if (cost > 0.0) {
        if (lo == -kInf) {
          result.status = PresolveStatus::kDualUnbounded;
          result.detail = "empty column " + index_str(c) +
                          " with positive cost and no lower bound";
          return result;
        }
        value = lo;
      } else if (cost < 0.0) {
        if (hi == kInf) {
          result.status = PresolveStatus::kDualUnbounded;
          result.detail = "empty column " + index_str(c) +
                          " with negative cost and no upper bound";
          return result;
        }
        value = hi;
      } else {
        value = std::min(std::max(0.0, lo), hi);
      }
      eliminate_column(c, value);
      result.transform.removed_empty_cols.push_back({c, value});
      changed = true;
    }

    for (Index r = 0; r < m; ++r) {
      if (!row_alive[static_cast<std::size_t>(r)] ||
          row_live_entries[static_cast<std::size_t>(r)] != 0) {
        continue;
      }
      const double q = rhs[static_cast<std::size_t>(r)];
      const double slack =
          empty_row_slack(lp.right_hand_side[static_cast<std::size_t>(r)]);
      const bool feasible =
          r < lp.num_inequality_rows ? q <= slack : std::fabs(q) <= slack;
      if (!feasible) {
        result.status = PresolveStatus::kPrimalInfeasible;
        result.detail = "empty row " + index_str(r) +
                        " with unsatisfiable right-hand side";
        return result;
      }
      eliminate_row(r);
      changed = true;
    }
  }

  // Materialize the reduced problem, preserving the original ordering.
  std::vector<Index> row_map(static_cast<std::size_t>(m), -1);
  std::vector<Index> col_map(static_cast<std::size_t>(n), -1);
  Index reduced_rows = 0, reduced_ineq = 0;
  for (Index r = 0; r < m; ++r) {
    if (!row_alive[static_cast<std::size_t>(r)]) continue;
    row_map[static_cast<std::size_t>(r)] = reduced_rows++;
    if (r < lp.num_inequality_rows) ++reduced_ineq;
  }
  Index reduced_cols = 0;
  for (Index c = 0; c < n; ++c) {
    if (col_alive[static_cast<std::size_t>(c)]) {
      col_map[static_cast<std::size_t>(c)] = reduced_cols++;
    }
  }

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(K.nnz()));
  for (Index r = 0; r < m; ++r) {
    if (!row_alive[static_cast<std::size_t>(r)]) continue;
    for (Index k = K.row_start()[r]; k < K.row_start()[r + 1]; ++k) {
      const Index c = K.row_cols()[k];
      if (!col_alive[static_cast<std::size_t>(c)]) continue;
      triplets.push_back({row_map[static_cast<std::size_t>(r)],
                          col_map[static_cast<std::size_t>(c)],
                          K.row_values()[k]});
    }
  }

  LinearProgram& red = result.reduced;
  red.constraint_matrix =
      SparseMatrix::from_triplets(reduced_rows, reduced_cols, triplets);
  red.num_inequality_rows = reduced_ineq;
  red.objective_constant = offset;
  red.objective.reserve(static_cast<std::size_t>(reduced_cols));
  red.variable_lower.reserve(static_cast<std::size_t>(reduced_cols));
  red.variable_upper.reserve(static_cast<std::size_t>(reduced_cols));
  for (Index c = 0; c < n; ++c) {
    if (!col_alive[static_cast<std::size_t>(c)]) continue;
    red.objective.push_back(lp.objective[static_cast<std::size_t>(c)]);
    red.variable_lower.push_back(
        lp.variable_lower[static_cast<std::size_t>(c)]);
    red.variable_upper.push_back(
        lp.variable_upper[static_cast<std::size_t>(c)]);
  }
  red.right_hand_side.reserve(static_cast<std::size_t>(reduced_rows));
  for (Index r = 0; r < m; ++r) {
    if (row_alive[static_cast<std::size_t>(r)]) {
      red.right_hand_side.push_back(rhs[static_cast<std::size_t>(r)]);
    }
  }
  return result;
}

PrimalDualPoint postsolve(const PresolveTransform& t,
                          std::span<const double> x_reduced,
                          std::span<const double> y_reduced) {
  if (static_cast<Index>(x_reduced.size()) != t.reduced_cols() ||
      static_cast<Index>(y_reduced.size()) != t.reduced_rows()) {
    throw DimensionMismatch("postsolve: reduced point size mismatch");
  }
  std::vector<double> x(static_cast<std::size_t>(t.original_cols), 0.0);
  std::vector<char> col_filled(static_cast<std::size_t>(t.original_cols), 0);
  for (const auto& f : t.fixed_variables) {
    x[static_cast<std::size_t>(f.original_index)] = f.value;
    col_filled[static_cast<std::size_t>(f.original_index)] = 1;
  }
  for (const auto& e : t.removed_empty_cols) {
    x[static_cast<std::size_t>(e.original_index)] = e.assigned_value;
    col_filled[static_cast<std::size_t>(e.original_index)] = 1;
  }
  std::size_t next = 0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (!col_filled[c]) x[c] = x_reduced[next++];
  }

  std::vector<double> y(static_cast<std::size_t>(t.original_rows), 0.0);
  std::vector<char> row_removed(static_cast<std::size_t>(t.original_rows), 0);
  for (Index r : t.removed_empty_rows) {
    row_removed[static_cast<std::size_t>(r)] = 1;
  }
  next = 0;
  for (std::size_t r = 0; r < y.size(); ++r) {
    if (!row_removed[r]) y[r] = y_reduced[next++];
  }
  return PrimalDualPoint{std::move(x), std::move(y)};
}

PrimalDualPoint restrict_point(const PresolveTransform& t,
                               std::span<const double> x_full,
                               std::span<const double> y_full) {
  if (static_cast<Index>(x_full.size()) != t.original_cols ||
      static_cast<Index>(y_full.size()) != t.original_rows) {
    throw DimensionMismatch("restrict_point: full point size mismatch");
  }
  std::vector<char> col_removed(static_cast<std::size_t>(t.original_cols), 0);
  for (const auto& f : t.fixed_variables) {
    col_removed[static_cast<std::size_t>(f.original_index)] = 1;
  }
  for (const auto& e : t.removed_empty_cols) {
    col_removed[static_cast<std::size_t>(e.original_index)] = 1;
  }
  std::vector<char> row_removed(static_cast<std::size_t>(t.original_rows), 0);
  for (Index r : t.removed_empty_rows) {
    row_removed[static_cast<std::size_t>(r)] = 1;
  }
  PrimalDualPoint z;
  for (std::size_t c = 0; c < x_full.size(); ++c) {
    if (!col_removed[c]) z.primal.push_back(x_full[c]);
  }
  for (std::size_t r = 0; r < y_full.size(); ++r) {
    if (!row_removed[r]) z.dual.push_back(y_full[r]);
  }
  return z;
}

}  // namespace folp
