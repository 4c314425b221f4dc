#pragma once

#include <cmath>
#include <random>
#include <stdexcept>

#include "sparselogit/entropy.hpp"
#include "sparselogit/matrix.hpp"
#include "sparselogit/model.hpp"
#include "sparselogit/prox.hpp"
#include "sparselogit/solver_common.hpp"

namespace sparselogit {

class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Residuals of the saddle-point optimality conditions.
struct KktReport {
  double stationarity_residual = 0.0;     // distance of the gradient to lambda*alpha*sub|.|_1
  double dual_consistency_residual = 0.0; // |s - sigmoid(A theta)|_inf
};

/// Checks, coordinatewise, that (1/m) A^T (y - s) - lambda (1-alpha) theta
/// lies in lambda*alpha * subdifferential of |theta|_1. When s is supplied
/// externally the consistency residual against sigmoid(A theta) is reported
/// too; otherwise s is derived and that residual is zero by construction.
inline KktReport kkt_residual(const Dataset& data, const Vector& theta,
                              const PenaltyParams& p,
                              const Vector* s_external = nullptr) {
  if (!all_finite(theta)) throw ContractViolation("kkt_residual: theta not finite");
  const Vector u = data.design.mat_vec(theta);
  const Vector s_model = sigmoid(u);
  const Vector& s = s_external ? *s_external : s_model;

  KktReport rep;
  if (s_external) {
    double worst = 0.0;
    for (Index i = 0; i < data.m(); ++i)
      worst = std::max(worst, std::abs(s[i] - s_model[i]));
    rep.dual_consistency_residual = worst;
  }

  Vector diff(data.m());
  for (Index i = 0; i < data.m(); ++i) diff[i] = data.y[i] - s[i];
  const Vector at = data.design.mat_tvec(diff);
  const double inv_m = 1.0 / static_cast<double>(data.m());
  const double la = p.lambda * p.alpha;
  const double lr = p.lambda * (1.0 - p.alpha);

  double worst = 0.0;
  for (Index j = 0; j < data.n(); ++j) {
    const double g = inv_m * at[j] - lr * theta[j];
    const double r = theta[j] != 0.0 ? std::abs(g - la * sign(theta[j]))
                                     : std::max(0.0, std::abs(g) - la);
    worst = std::max(worst, r);
  }
  rep.stationarity_residual = worst;
  return rep;
}

/// Smallest lambda at which theta = 0 is optimal:
///   |(1/m) A^T (y - 0.5)|_inf / alpha.
inline double lambda_max(const Dataset& data, double alpha) {
  if (!(alpha > 0.0)) throw ContractViolation("lambda_max: alpha must be > 0");
  Vector diff(data.m());
  for (Index i = 0; i < data.m(); ++i) diff[i] = data.y[i] - 0.5;
  const Vector at = data.design.mat_tvec(diff);
  return norm_inf(at) / (static_cast<double>(data.m()) * alpha);
}

/// Power-iteration estimate of the largest singular value |A|_2.
/// Deterministic seeded start so tests are reproducible.
inline double spectral_norm_power_iter(const DesignMatrix& a, Index iters = 200) {
  if (iters < 1) throw ContractViolation("spectral_norm_power_iter: iters >= 1");
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector w(a.cols());
  for (double& x : w) x = unif(rng);
  double nrm = norm2(w);
  if (nrm == 0.0) w[0] = nrm = 1.0;
  for (double& x : w) x /= nrm;

  double sigma = 0.0;
  for (Index it = 0; it < iters; ++it) {
    const Vector aw = a.mat_vec(w);
    sigma = norm2(aw);
    if (sigma == 0.0) return 0.0;
    w = a.mat_tvec(aw);
    const double wn = norm2(w);
    if (wn == 0.0) return sigma;
    for (double& x : w) x /= wn;
  }
  return sigma;
}

/// Forward-backward splitting reference solver with momentum and adaptive
/// restart; step 1/L with L = |A|_2^2/(4m) + lambda(1-alpha). Ground-truth
/// producer for solver comparisons; independent of the primal-dual path.
inline Vector prox_grad_reference(const Dataset& data, const PenaltyParams& p,
                                  double tol, const Vector* theta0 = nullptr,
                                  Index iter_cap = 10000000) {
  if (!(tol > 0.0)) throw ContractViolation("prox_grad_reference: tol must be > 0");
  const Index m = data.m(), n = data.n();
  // 1.01 inflation keeps the step safe against power-iteration underestimate
  const double spec = 1.01 * spectral_norm_power_iter(data.design);
  const double lf = spec * spec / (4.0 * static_cast<double>(m)) +
                    p.lambda * (1.0 - p.alpha);
  const double step = 1.0 / lf;
  const double inv_m = 1.0 / static_cast<double>(m);

  Vector theta = theta0 ? *theta0 : Vector(n, 0.0);
  if (theta.size() != n)
    throw ContractViolation("prox_grad_reference: theta0 has wrong length");
  Vector z = theta;
  double t = 1.0;
  for (Index it = 0; it < iter_cap; ++it) {
    const Vector u = data.design.mat_vec(z);
    Vector resid(m);
    for (Index i = 0; i < m; ++i) resid[i] = sigmoid_scalar(u[i]) - data.y[i];
    Vector grad = data.design.mat_tvec(resid);
    Vector anchor(n);
    for (Index j = 0; j < n; ++j)
      anchor[j] = z[j] - step * (inv_m * grad[j] + p.lambda * (1.0 - p.alpha) * z[j]);
    Vector theta_next = l1_prox(anchor, step * p.lambda * p.alpha);

    // gradient-based restart
    double cross = 0.0;
    for (Index j = 0; j < n; ++j)
      cross += (z[j] - theta_next[j]) * (theta_next[j] - theta[j]);
    if (cross > 0.0) {
      t = 1.0;
      z = theta_next;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      for (Index j = 0; j < n; ++j)
        z[j] = theta_next[j] + ((t - 1.0) / t_next) * (theta_next[j] - theta[j]);
      t = t_next;
    }
    theta = std::move(theta_next);

    if (it % 10 == 0 &&
        kkt_residual(data, theta, p).stationarity_residual <= tol)
      return theta;
  }
  throw OracleFailure("prox_grad_reference: iteration cap reached before tolerance");
}

}  // namespace sparselogit
