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

#include "folp/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "folp/linalg.hpp"

namespace folp {

namespace {

// Deterministic U(-1, 1) draw from the high bits of a mt19937_64 stream.
// std::uniform_real_distribution is implementation-defined, so we avoid it.
double symmetric_unit_draw(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(Index num_rows, Index num_cols,
                                         std::span<const Triplet> triplets) {
  if (num_rows < 0 || num_cols < 0) {
    throw DimensionMismatch("sparse matrix dimensions must be nonnegative");
  }
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  for (const Triplet& t : sorted) {
    if (t.row < 0 || t.row >= num_rows || t.col < 0 || t.col >= num_cols) {
      throw DimensionMismatch("triplet index out of range");
    }
    if (!std::isfinite(t.value)) {
      throw std::invalid_argument("triplet value must be finite");
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  SparseMatrix m;
  m.num_rows_ = num_rows;
  m.num_cols_ = num_cols;
  m.csr_start_.assign(static_cast<std::size_t>(num_rows) + 1, 0);
  m.csr_index_.reserve(sorted.size());
  m.csr_values_.reserve(sorted.size());

  std::size_t i = 0;
  while (i < sorted.size()) {
    const Index row = sorted[i].row;
    const Index col = sorted[i].col;
    double value = 0.0;
    while (i < sorted.size() && sorted[i].row == row && sorted[i].col == col) {
      value += sorted[i].value;
      ++i;
    }
    if (value != 0.0) {
      m.csr_index_.push_back(col);
      m.csr_values_.push_back(value);
      m.csr_start_[static_cast<std::size_t>(row) + 1]++;
    }
  }
  for (Index r = 0; r < num_rows; ++r) {
    m.csr_start_[static_cast<std::size_t>(r) + 1] +=
        m.csr_start_[static_cast<std::size_t>(r)];
  }

  // Mirror into column-compressed form with a counting pass.
  const Index nnz = m.nnz();
  m.csc_start_.assign(static_cast<std::size_t>(num_cols) + 1, 0);
  m.csc_index_.resize(static_cast<std::size_t>(nnz));
  m.csc_values_.resize(static_cast<std::size_t>(nnz));
  for (Index k = 0; k < nnz; ++k) {
    m.csc_start_[static_cast<std::size_t>(m.csr_index_[k]) + 1]++;
  }
  for (Index c = 0; c < num_cols; ++c) {
    m.csc_start_[static_cast<std::size_t>(c) + 1] +=
        m.csc_start_[static_cast<std::size_t>(c)];
  }
  std::vector<Index> cursor(m.csc_start_.begin(), m.csc_start_.end() - 1);
  for (Index r = 0; r < num_rows; ++r) {
    for (Index k = m.csr_start_[r]; k < m.csr_start_[r + 1]; ++k) {
      const Index c = m.csr_index_[k];
      const Index slot = cursor[static_cast<std::size_t>(c)]++;
      m.csc_index_[static_cast<std::size_t>(slot)] = r;
      m.csc_values_[static_cast<std::size_t>(slot)] = m.csr_values_[k];
    }
  }
  return m;
}

void SparseMatrix::multiply(std::span<const double> x,
                            std::span<double> out) const {
  if (static_cast<Index>(x.size()) != num_cols_ ||
      static_cast<Index>(out.size()) != num_rows_) {
    throw DimensionMismatch("multiply: size mismatch");
  }
  for (Index r = 0; r < num_rows_; ++r) {
    double s = 0.0;
    for (Index k = csr_start_[r]; k < csr_start_[r + 1]; ++k) {
      s += csr_values_[k] * x[static_cast<std::size_t>(csr_index_[k])];
    }
    out[static_cast<std::size_t>(r)] = s;
  }
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> out(static_cast<std::size_t>(num_rows_));
  multiply(x, out);
  return out;
}

void SparseMatrix::multiply_transpose(std::span<const double> y,
                                      std::span<double> out) const {
  if (static_cast<Index>(y.size()) != num_rows_ ||
      static_cast<Index>(out.size()) != num_cols_) {
    throw DimensionMismatch("multiply_transpose: size mismatch");
  }
  for (Index c = 0; c < num_cols_; ++c) {
    double s = 0.0;
    for (Index k = csc_start_[c]; k < csc_start_[c + 1]; ++k) {
      s += csc_values_[k] * y[static_cast<std::size_t>(csc_index_[k])];
    }
    out[static_cast<std::size_t>(c)] = s;
  }
}

std::vector<double> SparseMatrix::multiply_transpose(
    std::span<const double> y) const {
  std::vector<double> out(static_cast<std::size_t>(num_cols_));
  multiply_transpose(y, out);
  return out;
}

double SparseMatrix::max_abs_entry() const {
  if (nnz() == 0) throw EmptyMatrix("max_abs_entry: matrix has no entries");
  double m = 0.0;
  for (double v : csr_values_) m = std::max(m, std::fabs(v));
  return m;
}

std::vector<double> SparseMatrix::axis_norms(Axis axis, double p) const {
  if (std::isnan(p) || (p < 1.0 && p != 0.0)) {
    throw UnsupportedNorm("axis_norms: p must be 0, in [1, inf), or +inf");
  }
  const bool rows = axis == Axis::kRows;
  const Index n = rows ? num_rows_ : num_cols_;
  const std::span<const Index> start = rows ? row_start() : col_start();
  const std::span<const double> values = rows ? row_values() : col_values();
  std::vector<double> norms(static_cast<std::size_t>(n), 0.0);
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Index k = start[i]; k < start[i + 1]; ++k) {
      const double a = std::fabs(values[k]);
      if (p == 0.0) {
        acc += 1.0;
      } else if (std::isinf(p)) {
        acc = std::max(acc, a);
      } else if (p == 1.0) {
        acc += a;
      } else if (p == 2.0) {
        acc += a * a;
      } else {
        acc += std::pow(a, p);
      }
    }
    if (p == 2.0) acc = std::sqrt(acc);
    else if (std::isfinite(p) && p > 1.0 && p != 2.0) acc = std::pow(acc, 1.0 / p);
    norms[static_cast<std::size_t>(i)] = acc;
  }
  return norms;
}

double SparseMatrix::estimate_spectral_norm(double relative_tol,
                                            Index max_iterations,
                                            std::uint64_t seed,
                                            Index* multiply_count) const {
  if (num_rows_ == 0 || num_cols_ == 0 || nnz() == 0) {
    throw EmptyMatrix("estimate_spectral_norm: empty matrix");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> v(static_cast<std::size_t>(num_cols_));
  std::vector<double> w(static_cast<std::size_t>(num_rows_));
  std::vector<double> s(static_cast<std::size_t>(num_cols_));
  for (double& x : v) x = symmetric_unit_draw(rng);
  double vnorm = linalg::norm2(v);
  if (vnorm == 0.0) v[0] = 1.0, vnorm = 1.0;
  linalg::scale(v, 1.0 / vnorm);

  double lambda = 0.0;
  for (Index it = 0; it < max_iterations; ++it) {
    multiply(v, w);
    multiply_transpose(w, s);
    if (multiply_count != nullptr) *multiply_count += 2;
    // With ||v|| = 1 the Rayleigh quotient of K'K is v's image norm squared.
    const double next = linalg::dot(v, s);
    const double snorm = linalg::norm2(s);
    if (snorm == 0.0) return 0.0;  // v fell in the null space
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s[i] / snorm;
    const bool converged =
        it > 0 && std::fabs(next - lambda) <= relative_tol * std::fabs(next);
    lambda = next;
    if (converged) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

SparseMatrix SparseMatrix::scaled(std::span<const double> row_scale,
                                  std::span<const double> col_scale) const {
  if (static_cast<Index>(row_scale.size()) != num_rows_ ||
      static_cast<Index>(col_scale.size()) != num_cols_) {
    throw DimensionMismatch("scaled: scale vector size mismatch");
  }
  SparseMatrix m = *this;
  for (Index r = 0; r < num_rows_; ++r) {
    for (Index k = m.csr_start_[r]; k < m.csr_start_[r + 1]; ++k) {
      m.csr_values_[k] *= row_scale[static_cast<std::size_t>(r)] *
                          col_scale[static_cast<std::size_t>(m.csr_index_[k])];
    }
  }
  for (Index c = 0; c < num_cols_; ++c) {
    for (Index k = m.csc_start_[c]; k < m.csc_start_[c + 1]; ++k) {
      m.csc_values_[k] *= col_scale[static_cast<std::size_t>(c)] *
                          row_scale[static_cast<std::size_t>(m.csc_index_[k])];
    }
  }
  return m;
}

}  // namespace folp
