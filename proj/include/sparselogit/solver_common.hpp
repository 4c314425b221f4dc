#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "sparselogit/entropy.hpp"
#include "sparselogit/matrix.hpp"
#include "sparselogit/model.hpp"

namespace sparselogit {

/// Primal-dual iterate with the auxiliary linear and logit variables.
/// u_curr/u_prev hold A theta^(k) and A theta^(k-1); s = sigmoid(v).
struct SolverState {
  Vector theta;
  Vector u_curr;
  Vector u_prev;
  Vector v;
  Vector s;
  Index k = 0;
};

enum class Termination { converged, max_iter_reached };

/// Per-iteration step sizes as recorded by the adaptive solver.
struct StepTrace {
  std::vector<double> rho;
  std::vector<double> sigma;
  std::vector<double> tau;
};

struct SolveReport {
  Vector theta_final;
  Vector s_final;
  Index iterations = 0;
  std::vector<double> residual_history;  // |u^(k) - v^(k)|_2 per iteration
  Termination termination = Termination::max_iter_reached;
  double objective_final = 0.0;
  StepTrace steps;  // filled by the adaptive solver only
};

struct SolveConfig {
  double tol = 1e-8;
  Index max_iter = 100000;
  std::optional<Vector> theta0;  // default: zero vector
  std::optional<Vector> s0;      // default: 0.5 everywhere
  // Called after each iteration; used by diagnostics and tests.
  std::function<void(const SolverState&)> observer;
};

inline double norm2(const Vector& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

inline double norm_inf(const Vector& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

inline double norm1(const Vector& v) {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc;
}

inline double dot(const Vector& a, const Vector& b) {
  double acc = 0.0;
  for (Index i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Relative residual |u - v|_2 <= tol * max(1, |u|_2), the stopping rule.
inline double dual_residual(const SolverState& st) {
  double acc = 0.0;
  for (Index i = 0; i < st.u_curr.size(); ++i) {
    const double d = st.u_curr[i] - st.v[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

/// Shared initialization: u_curr = u_prev = A theta0 (theta^(-1) = theta^(0)),
/// v = logit(s0), k = 0.
inline SolverState init_state(const Dataset& data, const Vector& theta0,
                              const Vector& s0) {
  if (theta0.size() != data.n())
    throw ContractViolation("init_state: theta0 has wrong length");
  if (s0.size() != data.m())
    throw ContractViolation("init_state: s0 has wrong length");
  SolverState st;
  st.theta = theta0;
  st.u_curr = data.design.mat_vec(theta0);
  st.u_prev = st.u_curr;
  st.v = grad_psi(s0);
  st.s = sigmoid(st.v);
  st.k = 0;
  return st;
}

inline SolverState default_init(const Dataset& data, const SolveConfig& cfg) {
  Vector theta0 = cfg.theta0.value_or(Vector(data.n(), 0.0));
  Vector s0 = cfg.s0.value_or(Vector(data.m(), 0.5));
  return init_state(data, theta0, s0);
}

}  // namespace sparselogit
