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

#ifndef FOLP_INSTANCE_GEN_HPP_
#define FOLP_INSTANCE_GEN_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "folp/lp_model.hpp"

namespace folp {

struct Graph {
  Index num_nodes = 0;
  std::vector<std::pair<Index, Index>> edges;  // undirected, no duplicates
};

/// Preferential-attachment graph: starts from `attach` isolated seed nodes
/// (connected in a ring when connected_seed is set); every later node picks
/// `attach` distinct existing neighbors with probability proportional to
/// current degree (uniformly when all degrees are zero). With isolated
/// seeds the edge count is exactly attach * (n - attach). Deterministic
/// for a fixed seed.
Graph barabasi_albert(Index num_nodes, Index attach, std::uint64_t seed,
                      bool connected_seed = false);

/// Eigenvector-feasibility LP for the damped random surfer on g: with S'
/// the column-stochastic scaled adjacency matrix, the inequality block
/// encodes x_i - damping (S'x)_i >= (1 - damping)/n and one equality row
/// fixes 1'x = 1; x >= 0 with zero objective. nnz = 2|E| + 2n.
LinearProgram pagerank_lp(const Graph& g, double damping);

struct NamedInstance {
  std::string name;
  LinearProgram lp;
  double optimal_objective = 0.0;
  bool has_known_objective = false;
};

/// Small LPs (1-10 variables) with analytic optima: free variables,
/// two-sided bounds, equality-only and inequality-only rows, degenerate
/// optima, and a badly balanced ||c|| >> ||q|| instance.
std::vector<NamedInstance> handcrafted_suite();

/// Random feasible bounded LP: a dense-ish constraint block anchored at an
/// interior feasible point, finite box bounds, and rows/objective scaled
/// by 10^U(-scale_spread, scale_spread) so equilibration has work to do.
LinearProgram random_feasible_lp(std::uint64_t seed, Index num_inequalities,
                                 Index num_equalities, Index num_variables,
                                 double scale_spread);

}  // namespace folp

#endif  // FOLP_INSTANCE_GEN_HPP_
