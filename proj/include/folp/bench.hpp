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

#ifndef FOLP_BENCH_HPP_
#define FOLP_BENCH_HPP_

#include <string>
#include <vector>

#include "folp/instance_gen.hpp"
#include "folp/solver.hpp"

namespace folp {

struct BenchEntry {
  std::string name;
  TerminationReason reason = TerminationReason::kNumericalError;
  bool solved = false;
  Index iterations = 0;
  double kkt_passes = 0.0;
  double wall_seconds = 0.0;
  double primal_objective = 0.0;
};

struct BenchReport {
  std::vector<BenchEntry> entries;  // same order as the input instances
  Index solved_count = 0;
  // Shifted geometric means with unsolved instances pinned to the
  // configured limits.
  double sgm10_kkt_passes = 0.0;
  double sgm10_wall_seconds = 0.0;
};

/// Runs the solver over every instance with shared params. Instances are
/// distributed over `num_threads` worker slots (<= 0 picks a default from
/// FOLP_NUM_THREADS or the hardware); each solve stays single-threaded, so
/// results do not depend on the worker count.
BenchReport run_bench(const std::vector<NamedInstance>& instances,
                      const SolverParams& params, int num_threads = 0);

/// One CSV row per instance plus an SGM10 summary row.
std::string bench_csv(const BenchReport& report);

/// FOLP_NUM_THREADS when set, otherwise the hardware concurrency.
int default_bench_threads();

}  // namespace folp

#endif  // FOLP_BENCH_HPP_
