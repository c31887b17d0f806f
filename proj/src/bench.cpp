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

#include "folp/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "folp/termination.hpp"

namespace folp {

int default_bench_threads() {
  if (const char* env = std::getenv("FOLP_NUM_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

BenchReport run_bench(const std::vector<NamedInstance>& instances,
                      const SolverParams& params, int num_threads) {
  BenchReport report;
  report.entries.resize(instances.size());
  if (instances.empty()) return report;

  int workers = num_threads > 0 ? num_threads : default_bench_threads();
  workers = std::min<int>(workers, static_cast<int>(instances.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      SolverParams local = params;
      local.verbosity = 0;
      local.log_stream = nullptr;
      BenchEntry& entry = report.entries[i];
      entry.name = instances[i].name;
      const SolveResult result = solve(instances[i].lp, local);
      entry.reason = result.termination_reason;
      entry.solved = result.termination_reason == TerminationReason::kOptimal;
      entry.iterations = result.iterations;
      entry.kkt_passes = result.kkt_passes;
      entry.wall_seconds = result.wall_seconds;
      entry.primal_objective = result.final_info.primal_objective;
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Unsolved instances count at the limit values, as in standard solver
  // benchmarking practice.
  std::vector<double> passes, seconds;
  passes.reserve(report.entries.size());
  seconds.reserve(report.entries.size());
  for (const BenchEntry& entry : report.entries) {
    if (entry.solved) {
      report.solved_count++;
      passes.push_back(entry.kkt_passes);
      seconds.push_back(entry.wall_seconds);
    } else {
      passes.push_back(std::isfinite(params.kkt_pass_limit)
                           ? params.kkt_pass_limit
                           : entry.kkt_passes);
      seconds.push_back(std::isfinite(params.time_limit_seconds)
                            ? params.time_limit_seconds
                            : entry.wall_seconds);
    }
  }
  report.sgm10_kkt_passes = sgm10(passes);
  report.sgm10_wall_seconds = sgm10(seconds);
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "instance,termination_reason,iterations,kkt_passes,wall_seconds,"
         "primal_objective\n";
  char buf[160];
  for (const BenchEntry& e : report.entries) {
    std::snprintf(buf, sizeof(buf), ",%s,%lld,%.17g,%.6f,%.17g\n",
                  to_string(e.reason).c_str(),
                  static_cast<long long>(e.iterations), e.kkt_passes,
                  e.wall_seconds, e.primal_objective);
    out << e.name << buf;
  }
  std::snprintf(buf, sizeof(buf), "SGM10,solved=%lld,,%.17g,%.6f,\n",
                static_cast<long long>(report.solved_count),
                report.sgm10_kkt_passes, report.sgm10_wall_seconds);
  out << buf;
  return out.str();
}

}  // namespace folp
