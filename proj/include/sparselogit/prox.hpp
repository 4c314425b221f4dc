#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>

#include "sparselogit/matrix.hpp"

namespace sparselogit {

/// Inputs to the primal prox step: the gradient-step anchor and the
/// l1 / ridge weights already multiplied by the step size.
struct ProxRequest {
  Vector theta_hat;
  double l1_weight = 0.0;
  double ridge_weight = 0.0;
};

inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

inline double soft_threshold_shrink(double x, double l1w, double l2w) {
  return sign(x) * std::max(0.0, (std::abs(x) - l1w) / (1.0 + l2w));
}

/// Soft thresholding with ridge shrinkage,
///   theta_j = sign(th_j) max(0, (|th_j| - l1w) / (1 + l2w)).
inline Vector elastic_net_prox(const ProxRequest& req) {
  if (!(req.l1_weight >= 0.0) || !(req.ridge_weight >= 0.0) ||
      !std::isfinite(req.l1_weight) || !std::isfinite(req.ridge_weight))
    throw ContractViolation("elastic_net_prox: weights must be finite and >= 0");
  Vector out(req.theta_hat.size());
  for (Index j = 0; j < out.size(); ++j)
    out[j] = soft_threshold_shrink(req.theta_hat[j], req.l1_weight, req.ridge_weight);
  return out;
}

/// Plain soft thresholding (ridge weight zero).
inline Vector l1_prox(const Vector& theta_hat, double weight) {
  return elastic_net_prox({theta_hat, weight, 0.0});
}

class UnsupportedPenalty : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which solver a penalty instance may drive. The fixed-step scheme
/// needs strong convexity; the adaptive scheme needs only convexity.
/// Admissibility is declared by the penalty author, not checked.
enum class SolverAdmissibility { fixed_step, adaptive_step, both };

/// Plug-in point for penalties with an exact prox map. Shipped
/// instances cover elastic net, plain l1, ridge, and zero penalties.
class Penalty {
 public:
  virtual ~Penalty() = default;
  virtual bool has_prox() const { return true; }
  virtual SolverAdmissibility admissibility() const = 0;
  virtual Vector prox(const Vector& theta_hat, double step) const = 0;
};

class ElasticNetPenalty final : public Penalty {
 public:
  ElasticNetPenalty(double lambda1, double lambda2)
      : lambda1_(lambda1), lambda2_(lambda2) {}
  SolverAdmissibility admissibility() const override {
    return lambda2_ > 0.0 ? SolverAdmissibility::both
                          : SolverAdmissibility::adaptive_step;
  }
  Vector prox(const Vector& theta_hat, double step) const override {
    return elastic_net_prox({theta_hat, lambda1_ * step, lambda2_ * step});
  }

 private:
  double lambda1_, lambda2_;
};

class L1Penalty final : public Penalty {
 public:
  explicit L1Penalty(double weight) : weight_(weight) {}
  SolverAdmissibility admissibility() const override {
    return SolverAdmissibility::adaptive_step;
  }
  Vector prox(const Vector& theta_hat, double step) const override {
    return l1_prox(theta_hat, weight_ * step);
  }

 private:
  double weight_;
};

class ZeroPenalty final : public Penalty {
 public:
  SolverAdmissibility admissibility() const override {
    return SolverAdmissibility::adaptive_step;
  }
  Vector prox(const Vector& theta_hat, double) const override {
    return theta_hat;
  }
};

inline Vector apply_penalty_prox(const Penalty& penalty, const Vector& theta_hat,
                                 double step) {
  if (!penalty.has_prox())
    throw UnsupportedPenalty("penalty does not implement a prox map");
  if (!(step > 0.0)) throw ContractViolation("apply_penalty_prox: step must be > 0");
  return penalty.prox(theta_hat, step);
}

}  // namespace sparselogit
