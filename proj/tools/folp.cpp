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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "folp/bench.hpp"
#include "folp/instance_gen.hpp"
#include "folp/mps.hpp"
#include "folp/result_io.hpp"
#include "folp/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitLimit = 2;
constexpr int kExitNumericalError = 3;
constexpr int kExitInfeasibleOrUnbounded = 4;

struct SolverOptions {
  double relative_tol = 1e-8;
  double absolute_tol = -1.0;  // must equal relative when given
  std::string method = "pdhg";
  std::string step_size_policy = "adaptive";
  long long l_inf_ruiz_iterations = 10;
  bool pock_chambolle_rescaling = true;
  std::string restart_scheme = "pdlp";
  double primal_weight_update_smoothing = 0.5;
  bool scale_invariant_initial_primal_weight = true;
  double kkt_matrix_pass_limit = 0.0;  // 0 = unlimited
  long long iteration_limit = 0;       // 0 = unlimited
  double time_sec_limit = 0.0;         // 0 = unlimited
  std::string presolve = "on";
  int verbosity = 1;

  void register_flags(CLI::App* cmd) {
    cmd->add_option("--relative_optimality_tol", relative_tol,
                    "Optimality tolerance eps (default 1e-8)");
    cmd->add_option("--absolute_optimality_tol", absolute_tol,
                    "Must equal --relative_optimality_tol; the criteria mix "
                    "absolute and relative terms with one eps");
    cmd->add_option("--method", method, "Solve method (pdhg)")
        ->check(CLI::IsMember({"pdhg"}));
    cmd->add_option("--step_size_policy", step_size_policy,
                    "adaptive | constant | malitsky-pock")
        ->check(CLI::IsMember({"adaptive", "constant", "malitsky-pock"}));
    cmd->add_option("--l_inf_ruiz_iterations", l_inf_ruiz_iterations,
                    "Ruiz equilibration iterations (default 10)");
    cmd->add_option("--pock_chambolle_rescaling", pock_chambolle_rescaling,
                    "Apply Pock-Chambolle scaling after Ruiz (default true)");
    cmd->add_option("--restart_scheme", restart_scheme,
                    "pdlp | theory | none")
        ->check(CLI::IsMember({"pdlp", "theory", "none"}));
    cmd->add_option("--primal_weight_update_smoothing",
                    primal_weight_update_smoothing,
                    "Exponential smoothing theta in [0,1] (default 0.5)");
    cmd->add_option("--scale_invariant_initial_primal_weight",
                    scale_invariant_initial_primal_weight,
                    "Initialize omega as ||c||/||q|| (default true)");
    cmd->add_option("--kkt_matrix_pass_limit", kkt_matrix_pass_limit,
                    "Stop after this many KKT matrix passes (0 = unlimited)");
    cmd->add_option("--iteration_limit", iteration_limit,
                    "Stop after this many iterations (0 = unlimited)");
    cmd->add_option("--time_sec_limit", time_sec_limit,
                    "Wall-clock limit in seconds (0 = unlimited)");
    cmd->add_option("--presolve", presolve, "on | off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--verbosity", verbosity, "0 silent .. 3 debug");
  }

  folp::SolverParams to_params() const {
    if (absolute_tol >= 0.0 && absolute_tol != relative_tol) {
      throw CLI::ValidationError(
          "--absolute_optimality_tol",
          "must equal --relative_optimality_tol (one eps serves both)");
    }
    folp::SolverParams params;
    params.eps_optimal = relative_tol;
    if (step_size_policy == "constant") {
      params.step_policy = folp::StepPolicy::kConstant;
    } else if (step_size_policy == "malitsky-pock") {
      params.step_policy = folp::StepPolicy::kMalitskyPock;
    } else {
      params.step_policy = folp::StepPolicy::kAdaptive;
    }
    params.ruiz_iterations = l_inf_ruiz_iterations;
    params.use_pock_chambolle = pock_chambolle_rescaling;
    if (restart_scheme == "theory") {
      params.restart_scheme = folp::RestartSchemeKind::kTheory;
    } else if (restart_scheme == "none") {
      params.restart_scheme = folp::RestartSchemeKind::kNone;
    } else {
      params.restart_scheme = folp::RestartSchemeKind::kPdlp;
    }
    params.theta_smoothing = primal_weight_update_smoothing;
    params.scale_invariant_initial_primal_weight =
        scale_invariant_initial_primal_weight;
    if (kkt_matrix_pass_limit > 0.0) {
      params.kkt_pass_limit = kkt_matrix_pass_limit;
    }
    if (iteration_limit > 0) params.iteration_limit = iteration_limit;
    if (time_sec_limit > 0.0) params.time_limit_seconds = time_sec_limit;
    params.use_presolve = presolve == "on";
    params.verbosity = verbosity;
    params.log_stream = &std::cout;
    return params;
  }
};

int exit_code_for(folp::TerminationReason reason) {
  switch (reason) {
    case folp::TerminationReason::kOptimal:
      return kExitOk;
    case folp::TerminationReason::kIterationLimit:
    case folp::TerminationReason::kKktPassLimit:
    case folp::TerminationReason::kTimeLimit:
      return kExitLimit;
    case folp::TerminationReason::kNumericalError:
      return kExitNumericalError;
    case folp::TerminationReason::kPrimalInfeasibleDetected:
    case folp::TerminationReason::kDualUnboundedDetected:
      return kExitInfeasibleOrUnbounded;
  }
  return kExitNumericalError;
}

int run_solve(const std::string& instance_path, const std::string& output_dir,
              const SolverOptions& options) {
  const folp::MpsInstance instance = folp::parse_mps_file(instance_path);
  const folp::SolverParams params = options.to_params();
  const folp::SolveResult result = folp::solve(instance.lp, params);

  if (!output_dir.empty()) {
    folp::write_result(result, output_dir);
    nlohmann::ordered_json meta;
    meta["instance"] = instance.name;
    meta["instance_path"] = instance_path;
    meta["objective_sense"] = instance.was_maximization ? "max" : "min";
    // The solver always minimizes; a negated MAX problem reports the
    // original-sense objective here.
    meta["original_sense_objective"] =
        instance.was_maximization ? -result.final_info.primal_objective
                                  : result.final_info.primal_objective;
    std::ofstream meta_out(
        (std::filesystem::path(output_dir) / "instance.json").string(),
        std::ios::binary);
    meta_out << meta.dump(2) << "\n";
  }
  if (options.verbosity >= 1) {
    std::cout << "instance " << instance.name << ": "
              << folp::to_string(result.termination_reason) << ", objective "
              << result.final_info.primal_objective << ", iterations "
              << result.iterations << ", kkt passes " << result.kkt_passes
              << ", wall " << result.wall_seconds << "s\n";
  }
  return exit_code_for(result.termination_reason);
}

int run_generate_pagerank(long long nodes, long long attach,
                          unsigned long long seed, double damping,
                          bool connected_seed, const std::string& output) {
  const folp::Graph graph =
      folp::barabasi_albert(nodes, attach, seed, connected_seed);
  const folp::LinearProgram lp = folp::pagerank_lp(graph, damping);
  const std::string name = "PAGERANK_N" + std::to_string(nodes) + "_S" +
                           std::to_string(seed);
  folp::write_mps_file(lp, name, output);
  std::cout << "wrote " << output << ": " << lp.num_variables()
            << " variables, " << lp.num_rows() << " rows, "
            << lp.constraint_matrix.nnz() << " nonzeros\n";
  return kExitOk;
}

int run_bench(const std::string& corpus_dir, bool use_handcrafted,
              bool with_sgm10, const std::string& output,
              const SolverOptions& options) {
  std::vector<folp::NamedInstance> instances;
  if (use_handcrafted) {
    instances = folp::handcrafted_suite();
  }
  if (!corpus_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry :
         std::filesystem::directory_iterator(corpus_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".mps") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      folp::MpsInstance parsed = folp::parse_mps_file(file.string());
      instances.push_back(folp::NamedInstance{
          file.filename().string(), std::move(parsed.lp), 0.0, false});
    }
  }
  if (instances.empty()) {
    std::cerr << "bench: no instances (pass --corpus DIR with .mps files "
                 "and/or --handcrafted)\n";
    return kExitUsage;
  }
  const folp::BenchReport report =
      folp::run_bench(instances, options.to_params());
  std::string csv = folp::bench_csv(report);
  if (!with_sgm10) {
    const std::size_t row = csv.rfind("SGM10");
    if (row != std::string::npos) csv.erase(row);
  }
  if (output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw folp::IoError("cannot open '" + output + "'");
    out << csv;
    std::cout << "wrote " << output << " (" << report.solved_count << "/"
              << report.entries.size() << " solved, SGM10 kkt passes "
              << report.sgm10_kkt_passes << ")\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folp: a matrix-free first-order linear programming solver"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd =
      app.add_subcommand("solve", "Solve an MPS instance with restarted PDHG");
  std::string instance_path, output_dir;
  SolverOptions solve_options;
  solve_cmd->add_option("--instance_path", instance_path, "MPS file to solve")
      ->required();
  solve_cmd->add_option("--output_dir", output_dir,
                        "Directory for summary.json and solution vectors");
  solve_options.register_flags(solve_cmd);

  // generate pagerank
  auto* generate_cmd =
      app.add_subcommand("generate", "Generate benchmark instances");
  generate_cmd->require_subcommand(1);
  auto* pagerank_cmd = generate_cmd->add_subcommand(
      "pagerank", "PageRank LP on a preferential-attachment graph");
  long long gen_nodes = 1000;
  long long gen_attach = 3;
  unsigned long long gen_seed = 1;
  double gen_damping = 0.85;
  bool gen_connected_seed = false;
  std::string gen_output;
  pagerank_cmd->add_option("--nodes", gen_nodes, "Number of graph nodes")
      ->required();
  pagerank_cmd->add_option("--seed", gen_seed, "Generator seed")->required();
  pagerank_cmd->add_option("--attach", gen_attach,
                           "Edges per added node (default 3)");
  pagerank_cmd->add_option("--damping", gen_damping,
                           "Damping factor in (0,1), default 0.85");
  pagerank_cmd->add_flag("--connected_seed", gen_connected_seed,
                         "Connect the seed nodes in a ring");
  pagerank_cmd->add_option("--output", gen_output, "Output MPS path")
      ->required();

  // bench
  auto* bench_cmd =
      app.add_subcommand("bench", "Run the solver over an instance corpus");
  std::string corpus_dir, bench_output;
  bool bench_handcrafted = false;
  bool bench_sgm10 = true;
  SolverOptions bench_options;
  bench_options.kkt_matrix_pass_limit = 100000;
  bench_options.verbosity = 0;
  bench_cmd->add_option("--corpus", corpus_dir,
                        "Directory of .mps files to run");
  bench_cmd->add_flag("--handcrafted", bench_handcrafted,
                      "Include the built-in handcrafted suite");
  bench_cmd->add_flag("--sgm10,!--no-sgm10", bench_sgm10,
                      "Append the SGM10 summary row (default on)");
  bench_cmd->add_option("--output", bench_output,
                        "CSV output path (default stdout)");
  bench_options.register_flags(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(instance_path, output_dir, solve_options);
    }
    if (pagerank_cmd->parsed()) {
      return run_generate_pagerank(gen_nodes, gen_attach, gen_seed,
                                   gen_damping, gen_connected_seed,
                                   gen_output);
    }
    if (bench_cmd->parsed()) {
      return run_bench(corpus_dir, bench_handcrafted, bench_sgm10,
                       bench_output, bench_options);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const folp::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
