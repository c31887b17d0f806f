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

#ifndef FOLP_SOLVER_HPP_
#define FOLP_SOLVER_HPP_

#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folp/lp_model.hpp"
#include "folp/termination.hpp"
#include "folp/types.hpp"

namespace folp {

enum class StepPolicy { kAdaptive, kConstant, kMalitskyPock };
enum class RestartSchemeKind { kPdlp, kTheory, kNone };

struct SolverParams {
  double eps_optimal = 1e-8;

  // Restart criteria thresholds. The theory scheme overrides both betas
  // with 0.37 at solve time.
  double beta_sufficient = 0.9;
  double beta_necessary = 0.1;
  double beta_artificial = 0.5;
  RestartSchemeKind restart_scheme = RestartSchemeKind::kPdlp;

  double theta_smoothing = 0.5;  // primal weight exponential smoothing
  double eps_zero = 1e-10;

  StepPolicy step_policy = StepPolicy::kAdaptive;
  double mp_breaking_factor = 1.0;
  double mp_downscaling_factor = 0.5;
  double mp_interpolation_coefficient = 0.4;

  Index evaluation_cadence = 40;

  double kkt_pass_limit = kInf;
  Index iteration_limit = std::numeric_limits<Index>::max();
  double time_limit_seconds = kInf;

  Index ruiz_iterations = 10;
  bool use_pock_chambolle = true;
  double pc_alpha = 1.0;
  bool scale_invariant_initial_primal_weight = true;
  bool use_presolve = true;

  int verbosity = 0;
  std::ostream* log_stream = nullptr;

  // Stores (eta, iterate) after every accepted step plus restart markers
  // in the result; test instrumentation for small problems only.
  bool record_iterate_trace = false;
};

enum class TerminationReason {
  kOptimal,
  kIterationLimit,
  kKktPassLimit,
  kTimeLimit,
  kNumericalError,
  kPrimalInfeasibleDetected,
  kDualUnboundedDetected,
};

std::string to_string(TerminationReason reason);

struct TraceEntry {
  Index iteration = 0;
  double kkt_passes = 0.0;
  ConvergenceInfo current;
  ConvergenceInfo average;
};

struct IterateRecord {
  Index iteration = 0;
  double eta_used = 0.0;
  PrimalDualPoint point;  // in the solver's working (scaled) space
};

struct SolveResult {
  TerminationReason termination_reason = TerminationReason::kNumericalError;
  // Original problem space, recovered through postsolve.
  std::vector<double> primal_solution;
  std::vector<double> dual_solution;
  std::vector<double> reduced_costs;
  // Residuals of the presolved instance, which is where the termination
  // criteria are evaluated.
  ConvergenceInfo final_info;
  Index iterations = 0;
  double kkt_passes = 0.0;
  double wall_seconds = 0.0;
  Index restarts = 0;
  Index step_trials = 0;
  Index step_condition_violations = 0;
  std::vector<TraceEntry> trace;
  std::vector<Index> restart_iterations;
  std::vector<IterateRecord> iterate_trace;  // only when requested
};

/// One PDHG step at step size eta and primal weight omega:
///   x' = proj_X(x - (eta/omega)(c - K'y))
///   y' = proj_Y(y + eta omega (q - K(2x' - x)))
/// Charges 2 K-applications and 1 K'-application.
PrimalDualPoint pdhg_step(const LinearProgram& lp, const PrimalDualPoint& z,
                          double eta, double omega,
                          KktPassLedger* ledger = nullptr);

/// Largest step size for which the descent-style inequality holds:
///   ||dz||_omega^2 / (2 cross_term), or +inf when cross_term <= 0
/// (the inequality is then vacuous, including the 0/0 case).
double step_size_limit(const PrimalDualPoint& dz, double cross_term,
                       double omega);

struct AdaptiveStepResult {
  PrimalDualPoint next;
  double eta_used = 0.0;
  double eta_hat_next = 0.0;
  Index trials = 0;
  double movement_sq = 0.0;  // ||z' - z||_omega^2 of the accepted trial
  double cross_term = 0.0;   // (y-y')'K(x'-x) of the accepted trial
};

/// Backtracking step: tries eta_hat, accepts once eta <= eta_bar where
/// eta_bar is the step_size_limit of the trial, and proposes
///   eta' = min((1-(k+1)^-0.3) eta_bar, (1+(k+1)^-0.6) eta)
/// for the next trial or iteration. The counter k is 1-based (k = 0 would
/// zero the reduction factor). Every trial charges the ledger.
AdaptiveStepResult adaptive_step(const LinearProgram& lp,
                                 const PrimalDualPoint& z, double omega,
                                 double eta_hat, Index k,
                                 KktPassLedger* ledger = nullptr);

struct MalitskyPockResult {
  PrimalDualPoint next;
  double eta_next = 0.0;
  double theta_next = 0.0;
  Index trials = 0;
};

/// Malitsky-Pock line search with extrapolation ratio theta =
/// eta_{k-1}/eta_k. The dual candidate is recomputed per retry
/// (1 K-pass + 1 K'-pass each); the primal update costs one K'-pass.
MalitskyPockResult malitsky_pock_step(const LinearProgram& lp,
                                      const PrimalDualPoint& z, double omega,
                                      double eta_prev, double theta_prev,
                                      const SolverParams& params,
                                      KktPassLedger* ledger = nullptr);

/// Normalized duality gap rho_r(z): the maximum Lagrangian difference over
/// the omega-ball of radius r around z intersected with Z, divided by r.
/// The difference is affine in the candidate point, so this reduces to a
/// box-constrained trust-region problem solved by bisection on the ball
/// multiplier. Always >= 0; zero exactly at optima. Costs one K-pass and
/// one K'-pass.
double normalized_duality_gap(const LinearProgram& lp,
                              const PrimalDualPoint& z, double radius,
                              double omega, KktPassLedger* ledger = nullptr);

struct RestartCandidate {
  PrimalDualPoint point;
  double gap = 0.0;
  bool chose_average = false;
};

/// Picks between the current iterate and the running average by the
/// smaller normalized duality gap mu(z, z_restart); the average wins
/// ties. A candidate at zero distance from the restart point has gap 0.
RestartCandidate restart_candidate(const LinearProgram& lp,
                                   const PrimalDualPoint& current,
                                   const PrimalDualPoint& average,
                                   const PrimalDualPoint& last_restart,
                                   double omega,
                                   KktPassLedger* ledger = nullptr);

enum class RestartDecision {
  kNoRestart,
  kSufficient,
  kNecessaryNoProgress,
  kArtificial,
};

/// Evaluates the three restart criteria: strong decay of the candidate's
/// normalized duality gap relative to the gap at the last restart,
/// milder decay combined with no progress since the previous evaluation,
/// and the long-inner-loop fallback. reference_gap is +inf during the
/// first outer loop, which makes the decay test fire at the first
/// evaluation. last_candidate_gap is the candidate gap from the previous
/// evaluation of this inner loop, absent right after a restart.
RestartDecision should_restart(double mu_candidate, double reference_gap,
                               std::optional<double> last_candidate_gap,
                               Index t_inner, Index k_total,
                               const SolverParams& params);

/// ||c|| / ||q|| when both norms exceed eps_zero, else 1.
double initialize_primal_weight(std::span<const double> c,
                                std::span<const double> q, double eps_zero);

/// exp(theta log(dy/dx) + (1-theta) log(omega_prev)) when both movements
/// exceed eps_zero, else omega_prev unchanged.
double update_primal_weight(const PrimalDualPoint& z_new,
                            const PrimalDualPoint& z_old, double omega_prev,
                            double theta, double eps_zero);

/// Full pipeline: presolve, rescale, then the restarted PDHG loop with
/// the configured step policy. Termination is evaluated against the
/// presolved (unscaled) instance at both the current iterate and the
/// running average, every evaluation_cadence iterations and before the
/// first one. The returned solution is postsolved to original dimensions.
SolveResult solve(const LinearProgram& lp_raw, const SolverParams& params,
                  const PrimalDualPoint& z0);
SolveResult solve(const LinearProgram& lp_raw, const SolverParams& params);

}  // namespace folp

#endif  // FOLP_SOLVER_HPP_
