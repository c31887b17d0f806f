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
#include <random>

#include <doctest.h>

#include "folp/linalg.hpp"
#include "oracles.hpp"

using namespace folp;

namespace {

LinearProgram make(std::vector<double> c, Index rows, Index cols,
                   std::vector<Triplet> entries, std::vector<double> q,
                   Index m1, std::vector<double> l, std::vector<double> u) {
  LinearProgram lp;
  lp.objective = std::move(c);
  lp.constraint_matrix = SparseMatrix::from_triplets(rows, cols, entries);
  lp.right_hand_side = std::move(q);
  lp.num_inequality_rows = m1;
  lp.variable_lower = std::move(l);
  lp.variable_upper = std::move(u);
  return lp;
}

SparseMatrix from_dense(Index rows, Index cols,
                        const std::vector<double>& values) {
  std::vector<Triplet> t;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const double v = values[static_cast<std::size_t>(r * cols + c)];
      if (v != 0.0) t.push_back({r, c, v});
    }
  }
  return SparseMatrix::from_triplets(rows, cols, t);
}

double draw(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

SparseMatrix random_sparse(std::mt19937_64& rng, Index rows, Index cols,
                           double density, double magnitude) {
  std::vector<Triplet> t;
  for (Index r = 0; r < rows; ++r) {
    t.push_back({r, r % cols, magnitude * (0.1 + std::fabs(draw(rng)))});
    for (Index c = 0; c < cols; ++c) {
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) {
        const double v = magnitude * draw(rng);
        if (v != 0.0) t.push_back({r, c, v});
      }
    }
  }
  for (Index c = 0; c < cols; ++c) {
    t.push_back({c % rows, c, magnitude * (0.1 + std::fabs(draw(rng)))});
  }
  return SparseMatrix::from_triplets(rows, cols, t);
}

double max_axis_norm_deviation(const SparseMatrix& k) {
  double worst = 0.0;
  for (double v : k.axis_norms(Axis::kRows, kInf)) {
    if (v > 0.0) worst = std::max(worst, std::fabs(v - 1.0));
  }
  for (double v : k.axis_norms(Axis::kCols, kInf)) {
    if (v > 0.0) worst = std::max(worst, std::fabs(v - 1.0));
  }
  return worst;
}

}  // namespace

TEST_CASE("ruiz_step hand examples") {
  SUBCASE("diagonal matrix equilibrates in one step") {
    const auto [d1, d2] = ruiz_step(from_dense(2, 2, {4, 0, 0, 1}));
    CHECK(d1 == std::vector<double>{0.5, 1.0});
    CHECK(d2 == std::vector<double>{0.5, 1.0});
  }
  SUBCASE("identity is already equilibrated") {
    const auto [d1, d2] = ruiz_step(from_dense(2, 2, {1, 0, 0, 1}));
    CHECK(d1 == std::vector<double>{1.0, 1.0});
    CHECK(d2 == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("wide row") {
    const SparseMatrix k = from_dense(1, 2, {1, 4});
    const auto [d1, d2] = ruiz_step(k);
    CHECK(d1 == std::vector<double>{0.5});
    CHECK(d2 == std::vector<double>{1.0, 0.5});
    const SparseMatrix scaled = k.scaled(d1, d2);
    CHECK(scaled.row_values()[0] == 0.5);
    CHECK(scaled.row_values()[1] == 1.0);
  }
}

TEST_CASE("pock_chambolle_step hand examples") {
  SUBCASE("alpha = 1 uses row and column 1-norms") {
    const auto [d1, d2] =
        pock_chambolle_step(from_dense(2, 2, {1, -2, 0, 3}), 1.0);
    CHECK(d1[0] == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(d1[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(d2[0] == doctest::Approx(1.0));
    CHECK(d2[1] == doctest::Approx(1.0 / std::sqrt(5.0)));
  }
  SUBCASE("identity stays put") {
    const auto [d1, d2] =
        pock_chambolle_step(from_dense(2, 2, {1, 0, 0, 1}), 1.0);
    CHECK(d1 == std::vector<double>{1.0, 1.0});
    CHECK(d2 == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("alpha = 2 counts row entries") {
    const auto [d1, d2] = pock_chambolle_step(from_dense(1, 1, {3}), 2.0);
    CHECK(d1 == std::vector<double>{1.0});  // row 0-"norm" = nnz = 1
    CHECK(d2[0] == doctest::Approx(1.0 / std::sqrt(3.0)));
  }
}

TEST_CASE("rescale_problem with no steps is the identity") {
  const LinearProgram lp =
      make({1.0}, 1, 1, {{0, 0, 2.0}}, {1.0}, 1, {0.0}, {kInf});
  const ScaledProblem scaled = rescale_problem(lp, 0, false, 1.0);
  CHECK(scaled.lp == lp);
  CHECK(scaled.scaling.row_scale == std::vector<double>{1.0});
  CHECK(scaled.scaling.col_scale == std::vector<double>{1.0});
}

TEST_CASE("rescale_problem composes one ruiz step") {
  LinearProgram lp = make({2.0, 2.0}, 2, 2, {{0, 0, 4.0}, {1, 1, 1.0}},
                          {4.0, 1.0}, 1, {0.0, 0.0}, {8.0, kInf});
  const ScaledProblem scaled = rescale_problem(lp, 1, false, 1.0);
  // K = diag(4, 1) equilibrates to the identity in one step.
  CHECK(test::to_dense(scaled.lp.constraint_matrix).at(0, 0) == 1.0);
  CHECK(test::to_dense(scaled.lp.constraint_matrix).at(1, 1) == 1.0);
  CHECK(scaled.lp.objective == std::vector<double>{1.0, 2.0});        // D2 c
  CHECK(scaled.lp.right_hand_side == std::vector<double>{2.0, 1.0});  // D1 q
  CHECK(scaled.lp.variable_upper[0] == 16.0);  // u / d2
  CHECK(scaled.lp.variable_upper[1] == kInf);  // infinite stays infinite
}

TEST_CASE("ten ruiz iterations equilibrate random sparse matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    LinearProgram lp;
    lp.constraint_matrix = random_sparse(rng, 10, 10, 0.3, 10.0);
    const Index n = lp.constraint_matrix.num_cols();
    const Index m = lp.constraint_matrix.num_rows();
    lp.objective.assign(static_cast<std::size_t>(n), 1.0);
    lp.right_hand_side.assign(static_cast<std::size_t>(m), 1.0);
    lp.num_inequality_rows = m;
    lp.variable_lower.assign(static_cast<std::size_t>(n), 0.0);
    lp.variable_upper.assign(static_cast<std::size_t>(n), kInf);

    // Deviation from unit infinity norms shrinks with the iteration count.
    double previous = kInf;
    for (Index iters : {1, 2, 4, 6, 8, 10}) {
      const ScaledProblem scaled = rescale_problem(lp, iters, false, 1.0);
      const double deviation =
          max_axis_norm_deviation(scaled.lp.constraint_matrix);
      CHECK(deviation <= previous * (1.0 + 1e-12));
      previous = deviation;
    }
    CHECK(previous <= 1e-2);
  }
}

TEST_CASE("unscale_point is the diagonal product") {
  DiagonalScaling scaling{{2.0}, {0.5}};
  const PrimalDualPoint z = unscale_point(scaling, {{2.0}, {3.0}});
  CHECK(z.primal == std::vector<double>{1.0});
  CHECK(z.dual == std::vector<double>{6.0});
  const DiagonalScaling identity = DiagonalScaling::identity(1, 1);
  const PrimalDualPoint same = unscale_point(identity, {{2.0}, {3.0}});
  CHECK(same.primal == std::vector<double>{2.0});
  CHECK(same.dual == std::vector<double>{3.0});
}

TEST_CASE("residuals map through the diagonals") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Index m = 5, n = 4;
    LinearProgram lp;
    lp.constraint_matrix = random_sparse(rng, m, n, 0.5, 3.0);
    lp.objective.resize(static_cast<std::size_t>(n));
    for (double& v : lp.objective) v = draw(rng);
    lp.right_hand_side.resize(static_cast<std::size_t>(m));
    for (double& v : lp.right_hand_side) v = draw(rng);
    lp.num_inequality_rows = 2;
    lp.variable_lower.assign(static_cast<std::size_t>(n), -kInf);
    lp.variable_upper.assign(static_cast<std::size_t>(n), kInf);

    const ScaledProblem scaled = rescale_problem(lp, 3, true, 1.0);
    PrimalDualPoint z_scaled;
    z_scaled.primal.resize(static_cast<std::size_t>(n));
    z_scaled.dual.resize(static_cast<std::size_t>(m));
    for (double& v : z_scaled.primal) v = draw(rng);
    for (double& v : z_scaled.dual) v = draw(rng);
    const PrimalDualPoint z = unscale_point(scaled.scaling, z_scaled);

    // Scaled primal residual q~ - K~ x~ = D1 (q - K x) componentwise.
    std::vector<double> scaled_res =
        scaled.lp.constraint_matrix.multiply(z_scaled.primal);
    for (std::size_t j = 0; j < scaled_res.size(); ++j) {
      scaled_res[j] = scaled.lp.right_hand_side[j] - scaled_res[j];
    }
    std::vector<double> original_res = lp.constraint_matrix.multiply(z.primal);
    for (std::size_t j = 0; j < original_res.size(); ++j) {
      original_res[j] = lp.right_hand_side[j] - original_res[j];
    }
    for (std::size_t j = 0; j < scaled_res.size(); ++j) {
      CHECK(scaled_res[j] ==
            doctest::Approx(scaled.scaling.row_scale[j] * original_res[j])
                .epsilon(1e-12));
    }

    // Scaled dual residual c~ - K~'y~ = D2 (c - K'y) componentwise.
    std::vector<double> scaled_dual =
        scaled.lp.constraint_matrix.multiply_transpose(z_scaled.dual);
    for (std::size_t i = 0; i < scaled_dual.size(); ++i) {
      scaled_dual[i] = scaled.lp.objective[i] - scaled_dual[i];
    }
    std::vector<double> original_dual =
        lp.constraint_matrix.multiply_transpose(z.dual);
    for (std::size_t i = 0; i < original_dual.size(); ++i) {
      original_dual[i] = lp.objective[i] - original_dual[i];
    }
    for (std::size_t i = 0; i < scaled_dual.size(); ++i) {
      CHECK(scaled_dual[i] ==
            doctest::Approx(scaled.scaling.col_scale[i] * original_dual[i])
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("optimality is invariant under rescaling") {
  // 3-variable LP with a vertex optimum; the scaled problem has the same
  // optimal value and unscaling recovers a point with that value.
  const LinearProgram lp =
      make({1.0, 2.0, -1.0}, 2, 3,
           {{0, 0, 10.0}, {0, 1, -2.0}, {1, 1, 0.5}, {1, 2, 4.0}},
           {5.0, 2.0}, 1, {0.0, 0.0, 0.0}, {4.0, 4.0, 1.0});
  const auto original = test::enumerate_vertex_optimum(lp);
  REQUIRE(original.has_value());

  const ScaledProblem scaled = rescale_problem(lp, 10, true, 1.0);
  const auto scaled_opt = test::enumerate_vertex_optimum(scaled.lp);
  REQUIRE(scaled_opt.has_value());
  CHECK(scaled_opt->objective ==
        doctest::Approx(original->objective).epsilon(1e-9));
  const PrimalDualPoint unscaled = unscale_point(
      scaled.scaling, {scaled_opt->x, std::vector<double>(2, 0.0)});
  double objective = lp.objective_constant;
  for (std::size_t i = 0; i < unscaled.primal.size(); ++i) {
    objective += lp.objective[i] * unscaled.primal[i];
  }
  CHECK(objective == doctest::Approx(original->objective).epsilon(1e-9));
}
