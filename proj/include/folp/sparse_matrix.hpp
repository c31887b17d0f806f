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

#ifndef FOLP_SPARSE_MATRIX_HPP_
#define FOLP_SPARSE_MATRIX_HPP_

#include <span>
#include <vector>

#include "folp/types.hpp"

namespace folp {

struct Triplet {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

enum class Axis { kRows, kCols };

/// Immutable sparse matrix stored in both row-compressed and
/// column-compressed form, so that K*x and K'*y each cost O(nnz).
/// Stored values are finite and nonzero; duplicate (row, col) triplets
/// are summed at construction and entries that cancel to zero are dropped.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(Index num_rows, Index num_cols,
                                    std::span<const Triplet> triplets);

  Index num_rows() const { return num_rows_; }
  Index num_cols() const { return num_cols_; }
  Index nnz() const { return static_cast<Index>(csr_values_.size()); }

  /// out = K * x. |x| must equal num_cols, |out| num_rows.
  void multiply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// out = K' * y. |y| must equal num_rows, |out| num_cols.
  void multiply_transpose(std::span<const double> y,
                          std::span<double> out) const;
  std::vector<double> multiply_transpose(std::span<const double> y) const;

  /// Largest |value| over stored entries. Throws EmptyMatrix when nnz = 0.
  double max_abs_entry() const;

  /// Per-row (or per-column) l_p norms. p = 0 counts stored entries,
  /// p = +inf takes the max |value|; any p >= 1 uses the power formula.
  /// Zero rows/columns yield 0.
  std::vector<double> axis_norms(Axis axis, double p) const;

  /// Power iteration on K'K from a seeded random start; returns the
  /// square-rooted Rayleigh quotient once the relative change between
  /// successive estimates drops below relative_tol (or max_iterations is
  /// hit). The result can undershoot the true norm; callers apply their
  /// own safety factor. `passes`, when given, is incremented by the number
  /// of K (and equally K') applications performed.
  double estimate_spectral_norm(double relative_tol, Index max_iterations,
                                std::uint64_t seed,
                                Index* multiply_count = nullptr) const;

  /// Returns diag(row_scale) * K * diag(col_scale); scales must be
  /// strictly positive and finite.
  SparseMatrix scaled(std::span<const double> row_scale,
                      std::span<const double> col_scale) const;

  // Row-compressed view (rows in increasing column order).
  std::span<const Index> row_start() const { return csr_start_; }
  std::span<const Index> row_cols() const { return csr_index_; }
  std::span<const double> row_values() const { return csr_values_; }

  // Column-compressed view (columns in increasing row order).
  std::span<const Index> col_start() const { return csc_start_; }
  std::span<const Index> col_rows() const { return csc_index_; }
  std::span<const double> col_values() const { return csc_values_; }

  bool operator==(const SparseMatrix& other) const = default;

 private:
  Index num_rows_ = 0;
  Index num_cols_ = 0;
  std::vector<Index> csr_start_, csr_index_;
  std::vector<double> csr_values_;
  std::vector<Index> csc_start_, csc_index_;
  std::vector<double> csc_values_;
};

}  // namespace folp

#endif  // FOLP_SPARSE_MATRIX_HPP_
