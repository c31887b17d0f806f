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

#include "folp/result_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace folp {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json info_to_json(const ConvergenceInfo& info) {
  ordered_json j;
  j["primal_objective"] = info.primal_objective;
  j["dual_objective"] = info.dual_objective;
  j["gap_abs"] = info.gap_abs;
  j["primal_residual_norm"] = info.primal_residual_norm;
  j["dual_residual_norm"] = info.dual_residual_norm;
  j["norm_q"] = info.norm_q;
  j["norm_c"] = info.norm_c;
  return j;
}

void write_vector(const std::string& path, const std::vector<double>& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  char buf[40];
  for (double x : v) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", x);
    out << buf;
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

std::string result_to_json(const SolveResult& result) {
  ordered_json j;
  j["solver"] = "folp";
  j["version"] = "0.1.0";
  j["termination_reason"] = to_string(result.termination_reason);
  j["iterations"] = result.iterations;
  j["kkt_passes"] = result.kkt_passes;
  j["wall_seconds"] = result.wall_seconds;
  j["restarts"] = result.restarts;
  j["step_trials"] = result.step_trials;
  j["primal_objective"] = result.final_info.primal_objective;
  j["dual_objective"] = result.final_info.dual_objective;
  j["gap_abs"] = result.final_info.gap_abs;
  j["primal_residual_norm"] = result.final_info.primal_residual_norm;
  j["dual_residual_norm"] = result.final_info.dual_residual_norm;
  ordered_json trace = ordered_json::array();
  for (const TraceEntry& entry : result.trace) {
    ordered_json t;
    t["iteration"] = entry.iteration;
    t["kkt_passes"] = entry.kkt_passes;
    t["current"] = info_to_json(entry.current);
    t["average"] = info_to_json(entry.average);
    trace.push_back(std::move(t));
  }
  j["trace"] = std::move(trace);
  return j.dump(2) + "\n";
}

void write_result(const SolveResult& result, const std::string& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create '" + output_dir + "': " + ec.message());
  const std::filesystem::path dir(output_dir);
  {
    const std::string path = (dir / "summary.json").string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << result_to_json(result);
    if (!out) throw IoError("failed writing '" + path + "'");
  }
  write_vector((dir / "primal_solution.txt").string(),
               result.primal_solution);
  write_vector((dir / "dual_solution.txt").string(), result.dual_solution);
  write_vector((dir / "reduced_costs.txt").string(), result.reduced_costs);
}

}  // namespace folp
