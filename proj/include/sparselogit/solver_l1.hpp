#pragma once

#include <cmath>
#include <optional>

#include "sparselogit/prox.hpp"
#include "sparselogit/solver_common.hpp"

namespace sparselogit {

/// Per-iteration step sizes for the accelerated (lasso) scheme.
/// The product sigma_k * tau_k * |A|_op^2 = 1 is preserved by the update law.
struct AdaptiveSteps {
  double rho_k;
  double sigma_k;
  double tau_k;
  double op_norm_sq;
};

/// tau0 defaults to 1/(2 |A|_op^2), which maximizes the k^2 coefficient
/// of the rate lower bound; sigma0 = 1/(tau0 |A|_op^2).
inline AdaptiveSteps init_adaptive_steps(double op_norm,
                                         std::optional<double> tau0 = std::nullopt,
                                         double rho0 = 0.5) {
  if (!(op_norm > 0.0))
    throw ContractViolation("init_adaptive_steps: op_norm must be > 0");
  if (!(rho0 > 0.0 && rho0 < 1.0))
    throw ContractViolation("init_adaptive_steps: rho0 must be in (0,1)");
  const double op_sq = op_norm * op_norm;
  const double t0 = tau0.value_or(1.0 / (2.0 * op_sq));
  if (!(t0 > 0.0))
    throw ContractViolation("init_adaptive_steps: tau0 must be > 0");
  return {rho0, 1.0 / (t0 * op_sq), t0, op_sq};
}

/// rho+ = 1/sqrt(1+sigma), sigma+ = rho+ sigma, tau+ = tau/rho+.
inline AdaptiveSteps step_update(const AdaptiveSteps& s) {
  const double rho_next = 1.0 / std::sqrt(1.0 + s.sigma_k);
  return {rho_next, rho_next * s.sigma_k, s.tau_k / rho_next, s.op_norm_sq};
}

/// One iteration of the accelerated scheme: same shape as the fixed-step
/// update but with per-iteration (rho, sigma, tau), an l1 prox with weight
/// m*lambda*tau^(k), and the step update applied afterward.
inline AdaptiveSteps iterate_once_l1(SolverState& st, const AdaptiveSteps& steps,
                                     const Dataset& data, double lambda) {
  const Index m = data.m();
  const double sig = steps.sigma_k, rho = steps.rho_k, tau = steps.tau_k;

  Vector v_next(m);
  for (Index i = 0; i < m; ++i)
    v_next[i] = (sig * st.u_curr[i] + sig * rho * (st.u_curr[i] - st.u_prev[i]) +
                 st.v[i]) /
                (1.0 + sig);
  Vector s_next = sigmoid(v_next);

  Vector resid(m);
  for (Index i = 0; i < m; ++i) resid[i] = s_next[i] - data.y[i];
  Vector grad = data.design.mat_tvec(resid);

  Vector theta_hat(data.n());
  for (Index j = 0; j < data.n(); ++j) theta_hat[j] = st.theta[j] - tau * grad[j];

  st.theta = l1_prox(theta_hat, static_cast<double>(m) * lambda * tau);
  st.u_prev = std::move(st.u_curr);
  st.u_curr = data.design.mat_vec(st.theta);
  st.v = std::move(v_next);
  st.s = std::move(s_next);
  ++st.k;
  return step_update(steps);
}

struct L1SolveConfig : SolveConfig {
  std::optional<double> tau0;
  double rho0 = 0.5;
};

/// Accelerated adaptive-step nonlinear PDHG solve for the lasso (alpha = 1).
inline SolveReport solve_l1(const Dataset& data, double lambda,
                            const L1SolveConfig& cfg = {}) {
  if (!(lambda > 0.0)) throw ContractViolation("solve_l1: lambda must be > 0");

  AdaptiveSteps steps =
      init_adaptive_steps(data.design.operator_norm(), cfg.tau0, cfg.rho0);
  SolverState st = default_init(data, cfg);

  SolveReport report;
  report.termination = Termination::max_iter_reached;
  while (st.k < cfg.max_iter) {
    report.steps.rho.push_back(steps.rho_k);
    report.steps.sigma.push_back(steps.sigma_k);
    report.steps.tau.push_back(steps.tau_k);
    steps = iterate_once_l1(st, steps, data, lambda);
    const double res = dual_residual(st);
    report.residual_history.push_back(res);
    if (cfg.observer) cfg.observer(st);
    if (res <= cfg.tol * std::max(1.0, norm2(st.u_curr))) {
      report.termination = Termination::converged;
      break;
    }
  }
  report.theta_final = st.theta;
  report.s_final = st.s;
  report.iterations = st.k;
  report.objective_final =
      objective(data, report.theta_final, PenaltyParams(lambda, 1.0, data.m()));
  return report;
}

}  // namespace sparselogit
