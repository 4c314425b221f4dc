#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sparselogit/oracle.hpp"
#include "sparselogit/solver_en.hpp"
#include "sparselogit/solver_l1.hpp"

namespace sparselogit {

class EmptyPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PathConfig {
  Index n_lambda = 100;
  double lambda_min_ratio = 1e-3;
  double alpha = 1.0;  // (0,1]
  double tol = 1e-8;
  Index max_iter = 100000;
  bool warm_start = true;

  void validate() const {
    if (n_lambda < 2) throw ContractViolation("PathConfig: n_lambda must be >= 2");
    if (!(lambda_min_ratio > 0.0 && lambda_min_ratio < 1.0))
      throw ContractViolation("PathConfig: lambda_min_ratio must be in (0,1)");
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw ContractViolation("PathConfig: alpha must be in (0,1]");
  }
};

struct PathResult {
  std::vector<double> lambdas;          // strictly decreasing
  std::vector<Vector> coefficients;
  std::vector<Index> nonzero_counts;
  std::vector<double> objectives;
  std::vector<Index> per_solve_iterations;
  std::vector<bool> converged;
  bool partial = false;  // true if any solve hit max_iter
};

/// n_lambda log-spaced values from lambda_max down to ratio * lambda_max.
inline std::vector<double> make_lambda_grid(const Dataset& data,
                                            const PathConfig& cfg) {
  cfg.validate();
  const double lmax = lambda_max(data, cfg.alpha);
  if (lmax <= 0.0)
    throw EmptyPathError("make_lambda_grid: lambda_max is 0, response carries no signal at theta = 0");
  std::vector<double> grid(cfg.n_lambda);
  const double log_hi = std::log(lmax);
  const double log_lo = std::log(lmax * cfg.lambda_min_ratio);
  for (Index i = 0; i < cfg.n_lambda; ++i) {
    const double frac =
        static_cast<double>(i) / static_cast<double>(cfg.n_lambda - 1);
    grid[i] = std::exp(log_hi + frac * (log_lo - log_hi));
  }
  grid.front() = lmax;  // anchor exactly
  return grid;
}

/// Sequential solves in decreasing-lambda order. Each solve warm-starts
/// both primal and dual variables from the previous solution; step
/// parameters are recomputed per lambda. Per-lambda failures are flagged,
/// not fatal.
inline PathResult solve_path(const Dataset& data, const PathConfig& cfg) {
  PathResult result;
  result.lambdas = make_lambda_grid(data, cfg);

  Vector theta_prev(data.n(), 0.0);
  for (double lam : result.lambdas) {
    SolveReport rep;
    if (cfg.alpha < 1.0) {
      PenaltyParams p(lam, cfg.alpha, data.m());
      SolveConfig scfg;
      scfg.tol = cfg.tol;
      scfg.max_iter = cfg.max_iter;
      if (cfg.warm_start) {
        scfg.theta0 = theta_prev;
        scfg.s0 = sigmoid(data.design.mat_vec(theta_prev));
      }
      rep = solve(data, p, scfg);
    } else {
      L1SolveConfig scfg;
      scfg.tol = cfg.tol;
      scfg.max_iter = cfg.max_iter;
      if (cfg.warm_start) {
        scfg.theta0 = theta_prev;
        scfg.s0 = sigmoid(data.design.mat_vec(theta_prev));
      }
      rep = solve_l1(data, lam, scfg);
    }

    Index nz = 0;
    for (double t : rep.theta_final)
      if (t != 0.0) ++nz;
    result.coefficients.push_back(rep.theta_final);
    result.nonzero_counts.push_back(nz);
    result.objectives.push_back(rep.objective_final);
    result.per_solve_iterations.push_back(rep.iterations);
    const bool ok = rep.termination == Termination::converged;
    result.converged.push_back(ok);
    if (!ok) result.partial = true;
    if (cfg.warm_start) theta_prev = rep.theta_final;
  }
  return result;
}

}  // namespace sparselogit
