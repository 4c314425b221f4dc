#pragma once

#include <cmath>

#include "sparselogit/prox.hpp"
#include "sparselogit/solver_common.hpp"

namespace sparselogit {

/// Fixed step sizes for the strongly convex (elastic net) scheme.
struct FixedSteps {
  double rho;
  double sigma;
  double tau;
};

/// Closed-form parameters guaranteeing linear convergence:
///   rho = 1 - (l2 / (2 op^2)) (sqrt(1 + 4 op^2 / l2) - 1),
///   sigma = (1 - rho) / rho,  tau = (1 - rho) / (l2 rho).
inline FixedSteps compute_fixed_steps(double op_norm, double lambda2) {
  if (!(op_norm > 0.0) || !(lambda2 > 0.0))
    throw ContractViolation("compute_fixed_steps: op_norm and lambda2 must be > 0");
  const double op_sq = op_norm * op_norm;
  // algebraically 1 - (l2/(2 op^2))(sqrt(1 + 4 op^2/l2) - 1); rationalized
  // so huge l2 does not cancel to zero
  const double rho = 1.0 - 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * op_sq / lambda2));
  return {rho, (1.0 - rho) / rho, (1.0 - rho) / (lambda2 * rho)};
}

/// One full primal-dual iteration of the fixed-step scheme:
/// logit extrapolated-ascent, sigmoid, gradient step, elastic-net prox,
/// then a fresh mat-vec to refresh u.
inline void iterate_once(SolverState& st, const FixedSteps& steps,
                         const Dataset& data, const PenaltyParams& p) {
  const Index m = data.m();
  const double sig = steps.sigma, rho = steps.rho, tau = steps.tau;

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

  st.theta = elastic_net_prox({std::move(theta_hat), p.lambda1 * tau, p.lambda2 * tau});
  st.u_prev = std::move(st.u_curr);
  st.u_curr = data.design.mat_vec(st.theta);
  st.v = std::move(v_next);
  st.s = std::move(s_next);
  ++st.k;
}

/// Fixed-step nonlinear PDHG solve for alpha < 1 (lambda2 > 0).
inline SolveReport solve(const Dataset& data, const PenaltyParams& p,
                         const SolveConfig& cfg = {}) {
  if (!(p.lambda2 > 0.0))
    throw ContractViolation("solve: elastic-net solver requires alpha < 1");

  const FixedSteps steps = compute_fixed_steps(data.design.operator_norm(), p.lambda2);
  SolverState st = default_init(data, cfg);

  SolveReport report;
  report.termination = Termination::max_iter_reached;
  report.residual_history.reserve(std::min<Index>(cfg.max_iter, 4096));
  while (st.k < cfg.max_iter) {
    iterate_once(st, steps, data, p);
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
  report.objective_final = objective(data, report.theta_final, p);
  return report;
}

}  // namespace sparselogit
