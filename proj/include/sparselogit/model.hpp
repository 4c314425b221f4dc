#pragma once

#include <cmath>
#include <stdexcept>

#include "sparselogit/matrix.hpp"

namespace sparselogit {

/// Penalty weights (lambda, alpha) with the solver-side scalings
/// lambda1 = m*lambda*alpha and lambda2 = m*lambda*(1-alpha).
struct PenaltyParams {
  double lambda;
  double alpha;
  double lambda1;
  double lambda2;

  PenaltyParams(double lam, double a, Index m) : lambda(lam), alpha(a) {
    if (!(lam > 0.0)) throw ContractViolation("PenaltyParams: lambda must be > 0");
    if (!(a >= 0.0 && a <= 1.0))
      throw ContractViolation("PenaltyParams: alpha must be in [0,1]");
    lambda1 = static_cast<double>(m) * lam * a;
    lambda2 = static_cast<double>(m) * lam * (1.0 - a);
  }
};

/// log(1 + exp(u)) without overflow for large |u|.
inline double log1pexp(double u) {
  return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
}

/// Elastic-net regularized negative log-likelihood:
///   (1/m) sum_i log(1+exp((A theta)_i)) - (1/m) <y, A theta>
///   + lambda * (alpha |theta|_1 + (1-alpha)/2 |theta|_2^2)
inline double objective(const Dataset& data, const Vector& theta,
                        const PenaltyParams& p) {
  if (!all_finite(theta)) throw ContractViolation("objective: theta not finite");
  const Vector u = data.design.mat_vec(theta);
  const double m = static_cast<double>(data.m());
  double loss = 0.0;
  for (Index i = 0; i < data.m(); ++i) loss += log1pexp(u[i]) - data.y[i] * u[i];
  loss /= m;
  double l1 = 0.0, l2sq = 0.0;
  for (double t : theta) {
    l1 += std::abs(t);
    l2sq += t * t;
  }
  return loss + p.lambda * (p.alpha * l1 + 0.5 * (1.0 - p.alpha) * l2sq);
}

}  // namespace sparselogit
