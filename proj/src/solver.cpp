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

#include "folp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "folp/linalg.hpp"
#include "folp/presolve.hpp"
#include "folp/scaling.hpp"

namespace folp {

namespace {

constexpr double kStepSizeFloor = 1e-300;
constexpr double kPowerIterationTol = 1e-4;
constexpr Index kPowerIterationMaxIters = 1000;
constexpr std::uint64_t kPowerIterationSeed = 1;
constexpr double kConstantStepSafety = 0.9;

struct Trial {
  std::vector<double> x_next;
  std::vector<double> y_next;
  std::vector<double> kx_next;
  double movement_sq = 0.0;
  double cross_term = 0.0;
};

// One PDHG update from cached products Kx and K'y; computes Kx' (the one
// K-application charged here) and the movement/cross quantities the step
// size rule needs.
Trial pdhg_trial(const LinearProgram& lp, const PrimalDualPoint& z,
                 std::span<const double> kx, std::span<const double> kty,
                 double eta, double omega, KktPassLedger* ledger) {
  const Index n = lp.num_variables();
  const Index m = lp.num_rows();
  const double tau = eta / omega;
  const double sigma = eta * omega;

  Trial t;
  t.x_next.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    const double v = z.primal[s] - tau * (lp.objective[s] - kty[s]);
    t.x_next[s] =
        std::min(std::max(v, lp.variable_lower[s]), lp.variable_upper[s]);
  }
  t.kx_next = lp.constraint_matrix.multiply(t.x_next);
  if (ledger != nullptr) ledger->add_k();

  t.y_next.resize(static_cast<std::size_t>(m));
  double cross = 0.0;
  double movement = 0.0;
  for (Index j = 0; j < m; ++j) {
    const std::size_t s = static_cast<std::size_t>(j);
    const double extrapolated = 2.0 * t.kx_next[s] - kx[s];
    double v = z.dual[s] + sigma * (lp.right_hand_side[s] - extrapolated);
    if (j < lp.num_inequality_rows) v = std::max(v, 0.0);
    t.y_next[s] = v;
    const double dy = v - z.dual[s];
    // The Lagrangian carries -y'Kx, so the bilinear term that bounds the
    // step is (y - y')'K(x' - x); with the opposite sign the test would
    // be vacuous exactly when it has to bind.
    cross += dy * (kx[s] - t.kx_next[s]);
    movement += dy * dy;
  }
  movement /= omega;
  for (Index i = 0; i < n; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    const double dx = t.x_next[s] - z.primal[s];
    movement += omega * dx * dx;
  }
  t.movement_sq = movement;
  t.cross_term = cross;
  if (!linalg::all_finite(t.x_next) || !linalg::all_finite(t.y_next)) {
    throw NonFiniteIterate("pdhg step produced a NaN or infinite iterate");
  }
  return t;
}

void require_point_matches(const LinearProgram& lp, const PrimalDualPoint& z,
                           const char* what) {
  if (static_cast<Index>(z.primal.size()) != lp.num_variables() ||
      static_cast<Index>(z.dual.size()) != lp.num_rows()) {
    throw DimensionMismatch(std::string(what) + ": point size mismatch");
  }
}

}  // namespace

std::string to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kOptimal:
      return "Optimal";
    case TerminationReason::kIterationLimit:
      return "IterationLimit";
    case TerminationReason::kKktPassLimit:
      return "KktPassLimit";
    case TerminationReason::kTimeLimit:
      return "TimeLimit";
    case TerminationReason::kNumericalError:
      return "NumericalError";
    case TerminationReason::kPrimalInfeasibleDetected:
      return "PrimalInfeasibleDetected";
    case TerminationReason::kDualUnboundedDetected:
      return "DualUnboundedDetected";
  }
  return "Unknown";
}

PrimalDualPoint pdhg_step(const LinearProgram& lp, const PrimalDualPoint& z,
                          double eta, double omega, KktPassLedger* ledger) {
  require_point_matches(lp, z, "pdhg_step");
  if (!(eta > 0.0)) throw std::invalid_argument("pdhg_step: eta must be > 0");
  if (!(omega > 0.0)) throw NonPositiveWeight("pdhg_step: omega must be > 0");
  const std::vector<double> kty =
      lp.constraint_matrix.multiply_transpose(z.dual);
  const std::vector<double> kx = lp.constraint_matrix.multiply(z.primal);
  if (ledger != nullptr) {
    ledger->add_kt();
    ledger->add_k();
  }
  Trial t = pdhg_trial(lp, z, kx, kty, eta, omega, ledger);
  return PrimalDualPoint{std::move(t.x_next), std::move(t.y_next)};
}

double step_size_limit(const PrimalDualPoint& dz, double cross_term,
                       double omega) {
  if (!(omega > 0.0)) {
    throw NonPositiveWeight("step_size_limit: omega must be > 0");
  }
  if (!(cross_term > 0.0)) return kInf;  // inequality is vacuous (also 0/0)
  const double movement_sq = omega * linalg::norm2_squared(dz.primal) +
                             linalg::norm2_squared(dz.dual) / omega;
  return movement_sq / (2.0 * cross_term);
}

AdaptiveStepResult adaptive_step(const LinearProgram& lp,
                                 const PrimalDualPoint& z, double omega,
                                 double eta_hat, Index k,
                                 KktPassLedger* ledger) {
  require_point_matches(lp, z, "adaptive_step");
  if (k < 1) {
    throw std::invalid_argument("adaptive_step: counter k is 1-based");
  }
  if (!(eta_hat > 0.0)) {
    throw std::invalid_argument("adaptive_step: eta_hat must be > 0");
  }
  const std::vector<double> kty =
      lp.constraint_matrix.multiply_transpose(z.dual);
  const std::vector<double> kx = lp.constraint_matrix.multiply(z.primal);
  if (ledger != nullptr) {
    ledger->add_kt();
    ledger->add_k();
  }

  const double kp1 = static_cast<double>(k + 1);
  const double reduction_factor = 1.0 - std::pow(kp1, -0.3);
  const double growth_factor = 1.0 + std::pow(kp1, -0.6);

  double eta = eta_hat;
  AdaptiveStepResult result;
  for (;;) {
    ++result.trials;
    Trial t = pdhg_trial(lp, z, kx, kty, eta, omega, ledger);
    const double eta_bar = t.cross_term > 0.0
                               ? t.movement_sq / (2.0 * t.cross_term)
                               : kInf;
    const double eta_next = std::min(reduction_factor * eta_bar,
                                     growth_factor * eta);
    if (eta <= eta_bar) {
      result.next = PrimalDualPoint{std::move(t.x_next), std::move(t.y_next)};
      result.eta_used = eta;
      result.eta_hat_next = eta_next;
      result.movement_sq = t.movement_sq;
      result.cross_term = t.cross_term;
      return result;
    }
    eta = eta_next;
    if (eta < kStepSizeFloor) {
      throw StepSizeUnderflow("adaptive_step: step size underflow");
    }
  }
}

MalitskyPockResult malitsky_pock_step(const LinearProgram& lp,
                                      const PrimalDualPoint& z, double omega,
                                      double eta_prev, double theta_prev,
                                      const SolverParams& params,
                                      KktPassLedger* ledger) {
  require_point_matches(lp, z, "malitsky_pock_step");
  if (!(eta_prev > 0.0) || !(theta_prev > 0.0)) {
    throw std::invalid_argument(
        "malitsky_pock_step: needs positive previous step size and ratio");
  }
  const Index n = lp.num_variables();
  const Index m = lp.num_rows();

  const std::vector<double> kty =
      lp.constraint_matrix.multiply_transpose(z.dual);
  if (ledger != nullptr) ledger->add_kt();
  std::vector<double> x_next(static_cast<std::size_t>(n));
  const double tau = eta_prev / omega;
  for (Index i = 0; i < n; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    const double v = z.primal[s] - tau * (lp.objective[s] - kty[s]);
    x_next[s] =
        std::min(std::max(v, lp.variable_lower[s]), lp.variable_upper[s]);
  }
  if (!linalg::all_finite(x_next)) {
    throw NonFiniteIterate("malitsky_pock_step: non-finite primal iterate");
  }

  double eta_hat =
      eta_prev +
      params.mp_interpolation_coefficient * (std::sqrt(1.0 + theta_prev) - 1.0) *
          eta_prev;

  MalitskyPockResult result;
  std::vector<double> extrapolated(static_cast<std::size_t>(n));
  std::vector<double> y_hat(static_cast<std::size_t>(m));
  std::vector<double> dy(static_cast<std::size_t>(m));
  for (;;) {
    ++result.trials;
    const double theta_hat = eta_prev / eta_hat;
    for (Index i = 0; i < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      extrapolated[s] = x_next[s] + theta_hat * (x_next[s] - z.primal[s]);
    }
    const std::vector<double> kw =
        lp.constraint_matrix.multiply(extrapolated);
    if (ledger != nullptr) ledger->add_k();
    const double sigma = omega * eta_hat;
    for (Index j = 0; j < m; ++j) {
      const std::size_t s = static_cast<std::size_t>(j);
      double v = z.dual[s] + sigma * (lp.right_hand_side[s] - kw[s]);
      if (j < lp.num_inequality_rows) v = std::max(v, 0.0);
      y_hat[s] = v;
      dy[s] = v - z.dual[s];
    }
    if (!linalg::all_finite(y_hat)) {
      throw NonFiniteIterate("malitsky_pock_step: non-finite dual iterate");
    }
    const std::vector<double> ktdy =
        lp.constraint_matrix.multiply_transpose(dy);
    if (ledger != nullptr) ledger->add_kt();
    if (eta_hat * linalg::norm2(ktdy) <=
        params.mp_breaking_factor * linalg::norm2(dy)) {
      result.next = PrimalDualPoint{std::move(x_next), y_hat};
      result.eta_next = eta_hat;
      result.theta_next = theta_hat;
      return result;
    }
    eta_hat *= params.mp_downscaling_factor;
    if (eta_hat < kStepSizeFloor) {
      throw StepSizeUnderflow("malitsky_pock_step: step size underflow");
    }
  }
}

double normalized_duality_gap(const LinearProgram& lp,
                              const PrimalDualPoint& z, double radius,
                              double omega, KktPassLedger* ledger) {
  require_point_matches(lp, z, "normalized_duality_gap");
  if (!(radius > 0.0)) {
    throw NonPositiveRadius("normalized_duality_gap: radius must be > 0");
  }
  if (!(omega > 0.0)) {
    throw NonPositiveWeight("normalized_duality_gap: omega must be > 0");
  }
  const Index n = lp.num_variables();
  const Index m = lp.num_rows();
  const std::size_t total = static_cast<std::size_t>(n + m);

  const std::vector<double> kty =
      lp.constraint_matrix.multiply_transpose(z.dual);
  const std::vector<double> kx = lp.constraint_matrix.multiply(z.primal);
  if (ledger != nullptr) {
    ledger->add_kt();
    ledger->add_k();
  }

  // The Lagrangian difference is affine in the candidate; maximize
  // g'd over {d : z + d in Z, ||d||_omega <= radius}.
  std::vector<double> g(total), weight(total), lo(total), hi(total);
  for (Index i = 0; i < n; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    g[s] = kty[s] - lp.objective[s];
    weight[s] = omega;
    lo[s] = std::min(0.0, lp.variable_lower[s] - z.primal[s]);
    hi[s] = std::max(0.0, lp.variable_upper[s] - z.primal[s]);
  }
  for (Index j = 0; j < m; ++j) {
    const std::size_t s = static_cast<std::size_t>(n + j);
    const std::size_t sj = static_cast<std::size_t>(j);
    g[s] = lp.right_hand_side[sj] - kx[sj];
    weight[s] = 1.0 / omega;
    lo[s] = j < lp.num_inequality_rows ? std::min(0.0, -z.dual[sj]) : -kInf;
    hi[s] = kInf;
  }

  double gradient_dual_norm_sq = 0.0;  // sum g_i^2 / w_i
  bool any_gradient = false;
  for (std::size_t s = 0; s < total; ++s) {
    if (g[s] != 0.0) any_gradient = true;
    gradient_dual_norm_sq += g[s] * g[s] / weight[s];
  }
  if (!any_gradient) return 0.0;

  std::vector<double> d(total);
  // nu -> 0 limit: every coordinate runs to its box wall.
  bool bounded = true;
  for (std::size_t s = 0; s < total; ++s) {
    d[s] = g[s] > 0.0 ? hi[s] : (g[s] < 0.0 ? lo[s] : 0.0);
    if (!std::isfinite(d[s])) {
      bounded = false;
      break;
    }
  }
  if (bounded) {
    double norm_sq = 0.0;
    for (std::size_t s = 0; s < total; ++s) norm_sq += weight[s] * d[s] * d[s];
    if (std::sqrt(norm_sq) <= radius * (1.0 + 1e-12)) {
      return linalg::dot(g, d) / radius;
    }
  }

  // Bisection on the ball multiplier nu; the clamped direction
  // d_i(nu) = clamp(g_i / (nu w_i), lo_i, hi_i) has nonincreasing norm.
  auto evaluate = [&](double nu) {
    double norm_sq = 0.0;
    for (std::size_t s = 0; s < total; ++s) {
      const double unclamped = g[s] / (nu * weight[s]);
      d[s] = std::min(std::max(unclamped, lo[s]), hi[s]);
      norm_sq += weight[s] * d[s] * d[s];
    }
    return norm_sq;
  };

  double nu_lo = 0.0;
  double nu_hi = std::sqrt(gradient_dual_norm_sq) / radius;  // norm <= radius
  const double radius_sq = radius * radius;
  for (int it = 0; it < 200; ++it) {
    const double nu = 0.5 * (nu_lo + nu_hi);
    const double norm_sq = evaluate(nu);
    if (std::fabs(std::sqrt(norm_sq) - radius) <= 1e-10 * radius) break;
    if (norm_sq > radius_sq) {
      nu_lo = nu;
    } else {
      nu_hi = nu;
    }
  }
  return linalg::dot(g, d) / radius;
}

RestartCandidate restart_candidate(const LinearProgram& lp,
                                   const PrimalDualPoint& current,
                                   const PrimalDualPoint& average,
                                   const PrimalDualPoint& last_restart,
                                   double omega, KktPassLedger* ledger) {
  auto gap_from = [&](const PrimalDualPoint& z) {
    PrimalDualPoint diff;
    diff.primal.resize(z.primal.size());
    diff.dual.resize(z.dual.size());
    linalg::subtract(z.primal, last_restart.primal, diff.primal);
    linalg::subtract(z.dual, last_restart.dual, diff.dual);
    const double radius = weighted_norm(diff, omega);
    if (radius == 0.0) return 0.0;  // no movement: gap defined as 0
    return normalized_duality_gap(lp, z, radius, omega, ledger);
  };
  const double mu_current = gap_from(current);
  const double mu_average = gap_from(average);
  if (mu_current < mu_average) {
    return RestartCandidate{current, mu_current, false};
  }
  return RestartCandidate{average, mu_average, true};  // average wins ties
}

RestartDecision should_restart(double mu_candidate, double reference_gap,
                               std::optional<double> last_candidate_gap,
                               Index t_inner, Index k_total,
                               const SolverParams& params) {
  // The stricter decay threshold justifies a restart on its own; the
  // looser one only gates the no-progress test. Wiring the looser factor
  // into the standalone trigger restarts on any mild decay, which updates
  // the primal weight every evaluation and destabilizes it.
  const double strong =
      std::min(params.beta_necessary, params.beta_sufficient);
  const double gate = std::max(params.beta_necessary, params.beta_sufficient);
  if (mu_candidate <= strong * reference_gap) {
    return RestartDecision::kSufficient;
  }
  if (mu_candidate <= gate * reference_gap &&
      last_candidate_gap.has_value() &&
      mu_candidate > *last_candidate_gap) {
    return RestartDecision::kNecessaryNoProgress;
  }
  if (static_cast<double>(t_inner) >=
      params.beta_artificial * static_cast<double>(k_total)) {
    return RestartDecision::kArtificial;
  }
  return RestartDecision::kNoRestart;
}

double initialize_primal_weight(std::span<const double> c,
                                std::span<const double> q, double eps_zero) {
  const double norm_c = linalg::norm2(c);
  const double norm_q = linalg::norm2(q);
  if (norm_c > eps_zero && norm_q > eps_zero) return norm_c / norm_q;
  return 1.0;
}

double update_primal_weight(const PrimalDualPoint& z_new,
                            const PrimalDualPoint& z_old, double omega_prev,
                            double theta, double eps_zero) {
  if (!(omega_prev > 0.0)) {
    throw NonPositiveWeight("update_primal_weight: omega must be > 0");
  }
  if (theta == 0.0) return omega_prev;
  const double delta_x = linalg::diff_norm2(z_new.primal, z_old.primal);
  const double delta_y = linalg::diff_norm2(z_new.dual, z_old.dual);
  if (delta_x > eps_zero && delta_y > eps_zero) {
    return std::exp(theta * std::log(delta_y / delta_x) +
                    (1.0 - theta) * std::log(omega_prev));
  }
  return omega_prev;
}

namespace {

void check_params(const SolverParams& p) {
  if (!(p.eps_optimal > 0.0)) {
    throw std::invalid_argument("solve: eps_optimal must be > 0");
  }
  if (!(p.beta_necessary > 0.0 && p.beta_necessary < p.beta_sufficient &&
        p.beta_sufficient < 1.0)) {
    throw std::invalid_argument("solve: betas must satisfy 0 < nec < suf < 1");
  }
  if (!(p.beta_artificial > 0.0 && p.beta_artificial < 1.0)) {
    throw std::invalid_argument("solve: beta_artificial must be in (0,1)");
  }
  if (!(p.theta_smoothing >= 0.0 && p.theta_smoothing <= 1.0)) {
    throw std::invalid_argument("solve: theta must be in [0,1]");
  }
  if (p.evaluation_cadence < 1) {
    throw std::invalid_argument("solve: evaluation cadence must be >= 1");
  }
  if (p.ruiz_iterations < 0) {
    throw std::invalid_argument("solve: ruiz_iterations must be >= 0");
  }
}

double violation_score(const ConvergenceInfo& info) {
  const double gap = info.gap_abs / (1.0 + std::fabs(info.primal_objective) +
                                     std::fabs(info.dual_objective));
  const double primal = info.primal_residual_norm / (1.0 + info.norm_q);
  const double dual = info.dual_residual_norm / (1.0 + info.norm_c);
  return std::max(gap, std::max(primal, dual));
}

class SolveDriver {
 public:
  SolveDriver(const LinearProgram& lp_raw, const SolverParams& params,
              const PrimalDualPoint& z0)
      : raw_(lp_raw), params_(params), z0_(z0) {
    start_ = Clock::now();
  }

  SolveResult run();

 private:
  using Clock = std::chrono::steady_clock;

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  // Unscales and clamps a working-space point into the presolved spaces.
  PrimalDualPoint reduced_point(const PrimalDualPoint& z_scaled) const {
    PrimalDualPoint z = unscale_point(scaling_, z_scaled);
    for (std::size_t i = 0; i < z.primal.size(); ++i) {
      z.primal[i] = std::min(std::max(z.primal[i], presolved_.variable_lower[i]),
                             presolved_.variable_upper[i]);
    }
    return z;
  }

  ConvergenceInfo evaluate(const PrimalDualPoint& z_scaled) {
    const PrimalDualPoint z = reduced_point(z_scaled);
    return convergence_info(presolved_, z.primal, z.dual, &ledger_);
  }

  PrimalDualPoint materialize_average() const {
    if (avg_weight_ <= 0.0) return current_;
    PrimalDualPoint avg;
    avg.primal.resize(avg_x_sum_.size());
    avg.dual.resize(avg_y_sum_.size());
    const double inv = 1.0 / avg_weight_;
    for (std::size_t i = 0; i < avg_x_sum_.size(); ++i) {
      avg.primal[i] =
          std::min(std::max(avg_x_sum_[i] * inv, working_.variable_lower[i]),
                   working_.variable_upper[i]);
    }
    for (std::size_t j = 0; j < avg_y_sum_.size(); ++j) {
      double v = avg_y_sum_[j] * inv;
      if (static_cast<Index>(j) < working_.num_inequality_rows) {
        v = std::max(v, 0.0);
      }
      avg.dual[j] = v;
    }
    return avg;
  }

  void accumulate_average(const PrimalDualPoint& z, double eta) {
    for (std::size_t i = 0; i < avg_x_sum_.size(); ++i) {
      avg_x_sum_[i] += eta * z.primal[i];
    }
    for (std::size_t j = 0; j < avg_y_sum_.size(); ++j) {
      avg_y_sum_[j] += eta * z.dual[j];
    }
    avg_weight_ += eta;
  }

  void reset_average() {
    std::fill(avg_x_sum_.begin(), avg_x_sum_.end(), 0.0);
    std::fill(avg_y_sum_.begin(), avg_y_sum_.end(), 0.0);
    avg_weight_ = 0.0;
  }

  void log_evaluation(const ConvergenceInfo& cur, const ConvergenceInfo& avg) {
    if (params_.verbosity < 2 || params_.log_stream == nullptr) return;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%9lld %10.1f  %+.8e %+.8e  %8.2e %8.2e %8.2e",
                  static_cast<long long>(k_total_), kkt_passes(ledger_),
                  cur.primal_objective, cur.dual_objective, cur.gap_abs,
                  cur.primal_residual_norm, cur.dual_residual_norm);
    (*params_.log_stream) << line << " | avg gap " << avg.gap_abs << "\n";
  }

  void log_summary(const SolveResult& result) {
    if (params_.verbosity < 1 || params_.log_stream == nullptr) return;
    (*params_.log_stream)
        << "terminated: " << to_string(result.termination_reason)
        << "  iterations " << result.iterations << "  kkt passes "
        << result.kkt_passes << "  objective "
        << result.final_info.primal_objective << "  restarts "
        << result.restarts << "\n";
  }

  SolveResult finish(TerminationReason reason, const PrimalDualPoint& z_scaled,
                     const ConvergenceInfo& info);
  SolveResult finish_detected(PresolveStatus status);
  SolveResult finish_trivial();
  SolveResult finish_limit(TerminationReason reason);
  SolveResult finish_numerical_error();
  void take_step();
  void evaluate_and_maybe_restart(bool& terminated, SolveResult& result);

  LinearProgram raw_;
  SolverParams params_;
  PrimalDualPoint z0_;
  Clock::time_point start_;

  PresolveTransform transform_;
  LinearProgram presolved_;
  LinearProgram working_;
  DiagonalScaling scaling_;
  KktPassLedger ledger_;

  PrimalDualPoint current_;
  PrimalDualPoint last_restart_;
  std::vector<double> avg_x_sum_, avg_y_sum_;
  double avg_weight_ = 0.0;

  double omega_ = 1.0;
  double eta_hat_ = 1.0;        // adaptive trial step size
  double eta_constant_ = 1.0;   // constant policy step size
  double mp_eta_ = 1.0;         // Malitsky-Pock accepted step size
  double mp_theta_ = 1.0;       // Malitsky-Pock step size ratio
  double last_eta_used_ = 0.0;

  double reference_gap_ = kInf;
  std::optional<double> last_candidate_gap_;

  Index k_total_ = 0;
  Index t_inner_ = 0;
  Index n_outer_ = 0;

  SolveResult result_template_;
};

void SolveDriver::take_step() {
  switch (params_.step_policy) {
    case StepPolicy::kAdaptive: {
      AdaptiveStepResult r = adaptive_step(working_, current_, omega_,
                                           eta_hat_, k_total_ + 1, &ledger_);
      result_template_.step_trials += r.trials;
      // The acceptance test already enforced the movement inequality; a
      // violation here would mean the accepted quantities disagree beyond
      // rounding.
      if (r.cross_term > 0.0 &&
          2.0 * r.eta_used * r.cross_term > r.movement_sq * (1.0 + 1e-9)) {
        result_template_.step_condition_violations++;
      }
      eta_hat_ = r.eta_hat_next;
      last_eta_used_ = r.eta_used;
      current_ = std::move(r.next);
      break;
    }
    case StepPolicy::kConstant: {
      current_ = pdhg_step(working_, current_, eta_constant_, omega_, &ledger_);
      result_template_.step_trials += 1;
      last_eta_used_ = eta_constant_;
      break;
    }
    case StepPolicy::kMalitskyPock: {
      MalitskyPockResult r = malitsky_pock_step(working_, current_, omega_,
                                                mp_eta_, mp_theta_, params_,
                                                &ledger_);
      result_template_.step_trials += r.trials;
      mp_eta_ = r.eta_next;
      mp_theta_ = r.theta_next;
      last_eta_used_ = r.eta_next;
      current_ = std::move(r.next);
      break;
    }
  }
}

SolveResult SolveDriver::finish(TerminationReason reason,
                                const PrimalDualPoint& z_scaled,
                                const ConvergenceInfo& info) {
  SolveResult result = result_template_;
  result.termination_reason = reason;
  result.final_info = info;
  result.iterations = k_total_;
  result.restarts = n_outer_;

  const PrimalDualPoint reduced = reduced_point(z_scaled);
  const PrimalDualPoint full =
      postsolve(transform_, reduced.primal, reduced.dual);
  result.primal_solution = full.primal;
  result.dual_solution = full.dual;

  // Reduced costs are reported against the original problem, including
  // eliminated variables (whose lambda is c_i - K_i'y by convention).
  std::vector<double> residual =
      raw_.constraint_matrix.multiply_transpose(full.dual);
  ledger_.add_kt();
  for (std::size_t i = 0; i < residual.size(); ++i) {
    residual[i] = raw_.objective[i] - residual[i];
  }
  result.reduced_costs = project_reduced_costs(raw_, residual).values;

  result.kkt_passes = kkt_passes(ledger_);
  result.wall_seconds = elapsed();
  log_summary(result);
  return result;
}

SolveResult SolveDriver::finish_detected(PresolveStatus status) {
  SolveResult result = result_template_;
  result.termination_reason = status == PresolveStatus::kPrimalInfeasible
                                  ? TerminationReason::kPrimalInfeasibleDetected
                                  : TerminationReason::kDualUnboundedDetected;
  result.primal_solution.assign(
      static_cast<std::size_t>(raw_.num_variables()), 0.0);
  result.dual_solution.assign(static_cast<std::size_t>(raw_.num_rows()), 0.0);
  result.reduced_costs.assign(
      static_cast<std::size_t>(raw_.num_variables()), 0.0);
  result.kkt_passes = kkt_passes(ledger_);
  result.wall_seconds = elapsed();
  log_summary(result);
  return result;
}

SolveResult SolveDriver::finish_trivial() {
  // Presolve eliminated every variable and row; the reduced problem is
  // the empty LP and the recorded values already solve the original.
  const ConvergenceInfo info = convergence_info(presolved_, {}, {}, &ledger_);
  result_template_.trace.push_back(
      TraceEntry{0, kkt_passes(ledger_), info, info});
  return finish(TerminationReason::kOptimal, PrimalDualPoint{}, info);
}

SolveResult SolveDriver::finish_limit(TerminationReason reason) {
  ConvergenceInfo info_current, info_average;
  PrimalDualPoint average;
  try {
    info_current = evaluate(current_);
    average = materialize_average();
    info_average = evaluate(average);
  } catch (const NonFiniteIterate&) {
    // The iterate can be finite yet overflow when unscaled.
    return finish_numerical_error();
  }
  result_template_.trace.push_back(TraceEntry{k_total_, kkt_passes(ledger_),
                                              info_current, info_average});
  if (check_termination(info_current, params_.eps_optimal)) {
    return finish(TerminationReason::kOptimal, current_, info_current);
  }
  if (check_termination(info_average, params_.eps_optimal)) {
    return finish(TerminationReason::kOptimal, average, info_average);
  }
  if (violation_score(info_current) <= violation_score(info_average)) {
    return finish(reason, current_, info_current);
  }
  return finish(reason, average, info_average);
}

SolveResult SolveDriver::finish_numerical_error() {
  // Fall back to the last finite point we can still evaluate: the running
  // average if possible, otherwise the last restart point.
  PrimalDualPoint candidate = materialize_average();
  if (!linalg::all_finite(candidate.primal) ||
      !linalg::all_finite(candidate.dual)) {
    candidate = last_restart_;
  }
  ConvergenceInfo info;
  try {
    info = evaluate(candidate);
  } catch (const NonFiniteIterate&) {
    candidate = last_restart_;
    info = evaluate(candidate);
  }
  result_template_.trace.push_back(
      TraceEntry{k_total_, kkt_passes(ledger_), info, info});
  const TerminationReason reason = check_termination(info, params_.eps_optimal)
                                       ? TerminationReason::kOptimal
                                       : TerminationReason::kNumericalError;
  return finish(reason, candidate, info);
}

void SolveDriver::evaluate_and_maybe_restart(bool& terminated,
                                             SolveResult& result) {
  const PrimalDualPoint average = materialize_average();
  const ConvergenceInfo info_current = evaluate(current_);
  const ConvergenceInfo info_average = evaluate(average);
  result_template_.trace.push_back(TraceEntry{k_total_, kkt_passes(ledger_),
                                              info_current, info_average});
  log_evaluation(info_current, info_average);

  if (check_termination(info_current, params_.eps_optimal)) {
    result = finish(TerminationReason::kOptimal, current_, info_current);
    terminated = true;
    return;
  }
  if (check_termination(info_average, params_.eps_optimal)) {
    result = finish(TerminationReason::kOptimal, average, info_average);
    terminated = true;
    return;
  }

  if (params_.restart_scheme == RestartSchemeKind::kNone) {
    // No restarts, but the primal weight bookkeeping still follows the
    // artificial-restart schedule so omega keeps adapting.
    if (static_cast<double>(t_inner_) >=
        params_.beta_artificial * static_cast<double>(k_total_)) {
      omega_ = update_primal_weight(current_, last_restart_, omega_,
                                    params_.theta_smoothing, params_.eps_zero);
      last_restart_ = current_;
      t_inner_ = 0;
    }
    return;
  }

  RestartCandidate candidate = restart_candidate(working_, current_, average,
                                                 last_restart_, omega_,
                                                 &ledger_);
  const RestartDecision decision =
      should_restart(candidate.gap, reference_gap_, last_candidate_gap_,
                     t_inner_, k_total_, params_);
  if (decision == RestartDecision::kNoRestart) {
    last_candidate_gap_ = candidate.gap;
    return;
  }

  n_outer_++;
  result_template_.restart_iterations.push_back(k_total_);
  const double new_omega =
      update_primal_weight(candidate.point, last_restart_, omega_,
                           params_.theta_smoothing, params_.eps_zero);
  PrimalDualPoint diff;
  diff.primal.resize(candidate.point.primal.size());
  diff.dual.resize(candidate.point.dual.size());
  linalg::subtract(candidate.point.primal, last_restart_.primal, diff.primal);
  linalg::subtract(candidate.point.dual, last_restart_.dual, diff.dual);
  const double radius = weighted_norm(diff, new_omega);
  reference_gap_ =
      radius > 0.0 ? normalized_duality_gap(working_, candidate.point, radius,
                                            new_omega, &ledger_)
                   : 0.0;
  omega_ = new_omega;
  last_restart_ = candidate.point;
  current_ = candidate.point;
  reset_average();
  last_candidate_gap_.reset();
  t_inner_ = 0;
}

SolveResult SolveDriver::run() {
  check_params(params_);
  if (params_.restart_scheme == RestartSchemeKind::kTheory) {
    params_.beta_sufficient = 0.37;
    params_.beta_necessary = 0.37;
  }
  if (const auto issue = validate(raw_)) {
    // Crossed bounds are a data-dependent infeasibility, not a usage error.
    if (issue->kind == ValidationIssue::Kind::kBoundViolation) {
      return finish_detected(PresolveStatus::kPrimalInfeasible);
    }
    throw std::invalid_argument("solve: invalid program: " + issue->message);
  }

  if (params_.use_presolve) {
    PresolveResult pre = presolve(raw_);
    if (pre.status != PresolveStatus::kReduced) {
      return finish_detected(pre.status);
    }
    presolved_ = std::move(pre.reduced);
    transform_ = std::move(pre.transform);
  } else {
    presolved_ = raw_;
    transform_.original_rows = raw_.num_rows();
    transform_.original_cols = raw_.num_variables();
  }

  if (presolved_.num_variables() == 0) return finish_trivial();

  ScaledProblem scaled = rescale_problem(presolved_, params_.ruiz_iterations,
                                         params_.use_pock_chambolle,
                                         params_.pc_alpha);
  working_ = std::move(scaled.lp);
  scaling_ = std::move(scaled.scaling);

  // Map the starting point into the working space and project it feasible.
  PrimalDualPoint z = restrict_point(transform_, z0_.primal, z0_.dual);
  for (std::size_t i = 0; i < z.primal.size(); ++i) {
    z.primal[i] /= scaling_.col_scale[i];
  }
  for (std::size_t j = 0; j < z.dual.size(); ++j) {
    z.dual[j] /= scaling_.row_scale[j];
  }
  current_.primal = project_primal(working_, z.primal);
  current_.dual = project_dual(working_, z.dual);
  last_restart_ = current_;
  avg_x_sum_.assign(current_.primal.size(), 0.0);
  avg_y_sum_.assign(current_.dual.size(), 0.0);

  omega_ = params_.scale_invariant_initial_primal_weight
               ? initialize_primal_weight(working_.objective,
                                          working_.right_hand_side,
                                          params_.eps_zero)
               : 1.0;
  const bool has_entries = working_.constraint_matrix.nnz() > 0;
  switch (params_.step_policy) {
    case StepPolicy::kAdaptive:
    case StepPolicy::kMalitskyPock: {
      const double max_entry =
          has_entries ? working_.constraint_matrix.max_abs_entry() : 1.0;
      eta_hat_ = 1.0 / max_entry;
      mp_eta_ = eta_hat_;
      mp_theta_ = 1.0;
      break;
    }
    case StepPolicy::kConstant: {
      double norm = 0.0;
      if (has_entries) {
        Index multiplies = 0;
        norm = working_.constraint_matrix.estimate_spectral_norm(
            kPowerIterationTol, kPowerIterationMaxIters, kPowerIterationSeed,
            &multiplies);
        ledger_.add_k(multiplies / 2);
        ledger_.add_kt(multiplies / 2);
      }
      eta_constant_ = norm > 0.0 ? kConstantStepSafety / norm : 1.0;
      break;
    }
  }

  // Termination is checked before the first iteration.
  {
    const ConvergenceInfo info0 = evaluate(current_);
    result_template_.trace.push_back(
        TraceEntry{0, kkt_passes(ledger_), info0, info0});
    log_evaluation(info0, info0);
    if (check_termination(info0, params_.eps_optimal)) {
      return finish(TerminationReason::kOptimal, current_, info0);
    }
  }

  for (;;) {
    if (k_total_ >= params_.iteration_limit) {
      return finish_limit(TerminationReason::kIterationLimit);
    }
    if (kkt_passes(ledger_) >= params_.kkt_pass_limit) {
      return finish_limit(TerminationReason::kKktPassLimit);
    }
    if (elapsed() >= params_.time_limit_seconds) {
      return finish_limit(TerminationReason::kTimeLimit);
    }

    try {
      take_step();
    } catch (const NonFiniteIterate&) {
      return finish_numerical_error();
    } catch (const StepSizeUnderflow&) {
      return finish_numerical_error();
    }
    ++k_total_;
    ++t_inner_;
    accumulate_average(current_, last_eta_used_);
    if (params_.record_iterate_trace) {
      result_template_.iterate_trace.push_back(
          IterateRecord{k_total_, last_eta_used_, current_});
    }

    if (t_inner_ % params_.evaluation_cadence == 0) {
      bool terminated = false;
      SolveResult result;
      try {
        evaluate_and_maybe_restart(terminated, result);
      } catch (const NonFiniteIterate&) {
        return finish_numerical_error();
      }
      if (terminated) return result;
    }
  }
}

}  // namespace

SolveResult solve(const LinearProgram& lp_raw, const SolverParams& params,
                  const PrimalDualPoint& z0) {
  SolveDriver driver(lp_raw, params, z0);
  return driver.run();
}

SolveResult solve(const LinearProgram& lp_raw, const SolverParams& params) {
  PrimalDualPoint z0;
  z0.primal.assign(static_cast<std::size_t>(lp_raw.num_variables()), 0.0);
  z0.dual.assign(static_cast<std::size_t>(lp_raw.num_rows()), 0.0);
  return solve(lp_raw, params, z0);
}

}  // namespace folp
