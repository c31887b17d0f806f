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

#include "folp/instance_gen.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

namespace folp {

namespace {

// Implementation-defined std distributions would break cross-platform
// determinism, so sampling uses raw generator draws only.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // U[0, 1)
}

Index uniform_index(std::mt19937_64& rng, Index n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() / bound * bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<Index>(draw % bound);
}

LinearProgram make_lp(std::vector<double> c, Index rows, Index cols,
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

}  // namespace

Graph barabasi_albert(Index num_nodes, Index attach, std::uint64_t seed,
                      bool connected_seed) {
  if (attach < 1 || num_nodes < attach) {
    throw std::invalid_argument(
        "barabasi_albert: need num_nodes >= attach >= 1");
  }
  Graph g;
  g.num_nodes = num_nodes;
  std::mt19937_64 rng(seed);

  // node_ids holds each node once per unit of degree; sampling an element
  // uniformly is degree-proportional sampling.
  std::vector<Index> node_ids;
  g.edges.reserve(static_cast<std::size_t>(attach * (num_nodes - attach)));

  auto add_edge = [&](Index a, Index b) {
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
    node_ids.push_back(a);
    node_ids.push_back(b);
  };

  if (connected_seed && attach >= 2) {
    if (attach == 2) {
      add_edge(0, 1);
    } else {
      for (Index i = 0; i < attach; ++i) add_edge(i, (i + 1) % attach);
    }
  }

  std::unordered_set<Index> chosen;
  for (Index v = attach; v < num_nodes; ++v) {
    chosen.clear();
    std::vector<Index> targets;
    targets.reserve(static_cast<std::size_t>(attach));
    while (static_cast<Index>(targets.size()) < attach) {
      Index t;
      if (node_ids.empty()) {
        t = uniform_index(rng, v);  // all existing nodes have degree zero
      } else {
        t = node_ids[static_cast<std::size_t>(
            uniform_index(rng, static_cast<Index>(node_ids.size())))];
      }
      if (chosen.insert(t).second) targets.push_back(t);
    }
    for (Index t : targets) add_edge(v, t);
  }
  return g;
}

LinearProgram pagerank_lp(const Graph& g, double damping) {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw std::invalid_argument("pagerank_lp: damping must be in (0,1)");
  }
  const Index n = g.num_nodes;
  std::vector<Index> degree(static_cast<std::size_t>(n), 0);
  for (const auto& [a, b] : g.edges) {
    degree[static_cast<std::size_t>(a)]++;
    degree[static_cast<std::size_t>(b)]++;
  }
  for (Index i = 0; i < n; ++i) {
    if (degree[static_cast<std::size_t>(i)] == 0) {
      throw std::invalid_argument(
          "pagerank_lp: node " + std::to_string(i) +
          " is isolated; column scaling is undefined");
    }
  }

  // Row i: x_i - damping * sum_j S'_ij x_j >= (1 - damping)/n, with
  // S'_ij = A_ij / degree(j). Final row: 1'x = 1.
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * g.edges.size() + 2 * n));
  for (Index i = 0; i < n; ++i) triplets.push_back({i, i, 1.0});
  for (const auto& [a, b] : g.edges) {
    triplets.push_back(
        {a, b, -damping / static_cast<double>(degree[static_cast<std::size_t>(b)])});
    triplets.push_back(
        {b, a, -damping / static_cast<double>(degree[static_cast<std::size_t>(a)])});
  }
  for (Index j = 0; j < n; ++j) triplets.push_back({n, j, 1.0});

  std::vector<double> q(static_cast<std::size_t>(n) + 1,
                        (1.0 - damping) / static_cast<double>(n));
  q.back() = 1.0;
  return make_lp(std::vector<double>(static_cast<std::size_t>(n), 0.0), n + 1,
                 n, std::move(triplets), std::move(q), n,
                 std::vector<double>(static_cast<std::size_t>(n), 0.0),
                 std::vector<double>(static_cast<std::size_t>(n), kInf));
}

std::vector<NamedInstance> handcrafted_suite() {
  std::vector<NamedInstance> suite;
  auto add = [&](std::string name, LinearProgram lp, double objective) {
    suite.push_back(NamedInstance{std::move(name), std::move(lp), objective,
                                  true});
  };

  // min x : x >= 1, x >= 0
  add("one_sided_min",
      make_lp({1.0}, 1, 1, {{0, 0, 1.0}}, {1.0}, 1, {0.0}, {kInf}), 1.0);

  // min -x1 - 2x2 : x1 + x2 <= 1, x >= 0
  add("knapsack_2",
      make_lp({-1.0, -2.0}, 1, 2, {{0, 0, -1.0}, {0, 1, -1.0}}, {-1.0}, 1,
              {0.0, 0.0}, {kInf, kInf}),
      -2.0);

  // min 0 : x = 0.3, 0 <= x <= 1
  add("pinned_by_equality",
      make_lp({0.0}, 1, 1, {{0, 0, 1.0}}, {0.3}, 0, {0.0}, {1.0}), 0.0);

  // min x1 + x2 : x1 + x2 = 2, x1 free, 0 <= x2 <= 1 (optimal face is a
  // segment)
  add("free_variable_line",
      make_lp({1.0, 1.0}, 1, 2, {{0, 0, 1.0}, {0, 1, 1.0}}, {2.0}, 0,
              {-kInf, 0.0}, {kInf, 1.0}),
      2.0);

  // min -x1 - x2 : x1 + 2x2 <= 4, x1 in [0,3], x2 in [0,1]
  add("box_corner",
      make_lp({-1.0, -1.0}, 1, 2, {{0, 0, -1.0}, {0, 1, -2.0}}, {-4.0}, 1,
              {0.0, 0.0}, {3.0, 1.0}),
      -3.5);

  // min x1 + x2 + x3 : x1 + x2 = 1, x2 + x3 = 1, x >= 0
  add("equality_chain",
      make_lp({1.0, 1.0, 1.0}, 2, 3,
              {{0, 0, 1.0}, {0, 1, 1.0}, {1, 1, 1.0}, {1, 2, 1.0}},
              {1.0, 1.0}, 0, {0.0, 0.0, 0.0}, {kInf, kInf, kInf}),
      1.0);

  // min 1000 x1 + 2000 x2 : x1 + x2 >= 1e-3, x >= 0. ||c|| >> ||q|| makes
  // the initial primal weight matter.
  add("unbalanced_norms",
      make_lp({1000.0, 2000.0}, 1, 2, {{0, 0, 1.0}, {0, 1, 1.0}}, {1e-3}, 1,
              {0.0, 0.0}, {kInf, kInf}),
      1.0);

  // min x : x >= -5, x in [-10, 0]
  add("negative_box",
      make_lp({1.0}, 1, 1, {{0, 0, 1.0}}, {-5.0}, 1, {-10.0}, {0.0}), -5.0);

  // 2x2 assignment relaxation with one redundant equality.
  add("assignment_2x2",
      make_lp({2.0, 3.0, 1.0, 4.0}, 4, 4,
              {{0, 0, 1.0},
               {0, 1, 1.0},
               {1, 2, 1.0},
               {1, 3, 1.0},
               {2, 0, 1.0},
               {2, 2, 1.0},
               {3, 1, 1.0},
               {3, 3, 1.0}},
              {1.0, 1.0, 1.0, 1.0}, 0, {0.0, 0.0, 0.0, 0.0},
              {kInf, kInf, kInf, kInf}),
      4.0);

  // min -x1 + x2 : x1 - x2 >= -1, x in [0,2]^2
  add("loose_row_box",
      make_lp({-1.0, 1.0}, 1, 2, {{0, 0, 1.0}, {0, 1, -1.0}}, {-1.0}, 1,
              {0.0, 0.0}, {2.0, 2.0}),
      -2.0);

  // min x1 + 2x2 + 3x3 : x1 + x2 + x3 >= 2 (G), x1 - x2 = 0 (E), x >= 0
  add("mixed_rows",
      make_lp({1.0, 2.0, 3.0}, 2, 3,
              {{0, 0, 1.0}, {0, 1, 1.0}, {0, 2, 1.0}, {1, 0, 1.0},
               {1, 1, -1.0}},
              {2.0, 0.0}, 1, {0.0, 0.0, 0.0}, {kInf, kInf, kInf}),
      3.0);

  // min -x : x <= 3 (as -x >= -3), upper bound 2, no lower bound
  add("upper_bounded_only",
      make_lp({-1.0}, 1, 1, {{0, 0, -1.0}}, {-3.0}, 1, {-kInf}, {2.0}),
      -2.0);

  return suite;
}

LinearProgram random_feasible_lp(std::uint64_t seed, Index num_inequalities,
                                 Index num_equalities, Index num_variables,
                                 double scale_spread) {
  if (num_variables < 1 || num_inequalities < 0 || num_equalities < 0 ||
      num_inequalities + num_equalities < 1) {
    throw std::invalid_argument("random_feasible_lp: bad dimensions");
  }
  std::mt19937_64 rng(seed);
  const Index m = num_inequalities + num_equalities;
  const Index n = num_variables;

  auto magnitude = [&]() {
    return std::pow(10.0, scale_spread * (2.0 * unit_draw(rng) - 1.0));
  };

  // Interior anchor keeps the instance feasible by construction.
  std::vector<double> anchor(static_cast<std::size_t>(n));
  for (double& v : anchor) v = unit_draw(rng);

  std::vector<Triplet> triplets;
  std::vector<double> row_values(static_cast<std::size_t>(n));
  std::vector<double> q(static_cast<std::size_t>(m));
  for (Index r = 0; r < m; ++r) {
    const double row_mag = magnitude();
    std::fill(row_values.begin(), row_values.end(), 0.0);
    // A diagonal-ish backbone keeps every row and column populated.
    row_values[static_cast<std::size_t>(r % n)] =
        (unit_draw(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + unit_draw(rng));
    for (Index c = 0; c < n; ++c) {
      if (c != r % n && unit_draw(rng) < 0.45) {
        row_values[static_cast<std::size_t>(c)] = 2.0 * unit_draw(rng) - 1.0;
      }
    }
    double activity = 0.0;
    for (Index c = 0; c < n; ++c) {
      const double v = row_values[static_cast<std::size_t>(c)] * row_mag;
      if (v != 0.0) {
        triplets.push_back({r, c, v});
        activity += v * anchor[static_cast<std::size_t>(c)];
      }
    }
    // Inequality rows get strict slack at the anchor; equalities are tight.
    q[static_cast<std::size_t>(r)] =
        r < num_inequalities ? activity - (0.1 + unit_draw(rng)) * row_mag
                             : activity;
  }

  std::vector<double> c(static_cast<std::size_t>(n));
  for (double& v : c) v = (2.0 * unit_draw(rng) - 1.0) * magnitude();

  // Finite boxes containing the anchor keep the optimum attained.
  std::vector<double> lower(static_cast<std::size_t>(n), 0.0);
  std::vector<double> upper(static_cast<std::size_t>(n));
  for (double& v : upper) v = 1.5 + 2.0 * unit_draw(rng);

  return make_lp(std::move(c), m, n, std::move(triplets), std::move(q),
                 num_inequalities, std::move(lower), std::move(upper));
}

}  // namespace folp
