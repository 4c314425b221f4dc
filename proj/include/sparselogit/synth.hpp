#pragma once

#include <cmath>
#include <random>

#include "sparselogit/entropy.hpp"
#include "sparselogit/matrix.hpp"

namespace sparselogit {

/// Seeded correlated-Gaussian benchmark instance: equicorrelated rows
/// (pairwise feature correlation `correlation`), a planted sparse
/// coefficient vector, labels sampled through the logistic model.
struct SynthConfig {
  Index m = 200;
  Index n = 50;
  double correlation = 0.0;  // in [0,1)
  Index n_signal = 0;        // nonzero true coefficients; default n/10, >= 1
  double amplitude = 2.0;
  std::uint64_t seed = 0;
};

struct SynthInstance {
  Dataset data;
  Vector theta_true;
};

inline SynthInstance make_synthetic(const SynthConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 1)
    throw ContractViolation("make_synthetic: m and n must be >= 1");
  if (!(cfg.correlation >= 0.0 && cfg.correlation < 1.0))
    throw ContractViolation("make_synthetic: correlation must be in [0,1)");
  const Index k = cfg.n_signal > 0 ? std::min(cfg.n_signal, cfg.n)
                                   : std::max<Index>(1, cfg.n / 10);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const double w_shared = std::sqrt(cfg.correlation);
  const double w_own = std::sqrt(1.0 - cfg.correlation);

  Vector values(cfg.m * cfg.n);
  for (Index i = 0; i < cfg.m; ++i) {
    const double shared = gauss(rng);
    for (Index j = 0; j < cfg.n; ++j)
      values[i * cfg.n + j] = w_own * gauss(rng) + w_shared * shared;
  }
  DesignMatrix a = DesignMatrix::dense(cfg.m, cfg.n, std::move(values));

  Vector theta_true(cfg.n, 0.0);
  for (Index j = 0; j < k; ++j)
    theta_true[j] = (j % 2 == 0 ? cfg.amplitude : -cfg.amplitude);

  const Vector logits = a.mat_vec(theta_true);
  Vector y(cfg.m);
  for (Index i = 0; i < cfg.m; ++i)
    y[i] = unif(rng) < sigmoid_scalar(logits[i]) ? 1.0 : 0.0;

  return {Dataset(std::move(a), std::move(y)), std::move(theta_true)};
}

/// Same instance with the design converted to CSR storage (all entries kept);
/// exercises the sparse kernels on identical data.
inline DesignMatrix to_csr(const DesignMatrix& a) {
  std::vector<Index> offsets{0}, indices;
  Vector values;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const double v = a.at(i, j);
      if (v != 0.0) {
        indices.push_back(j);
        values.push_back(v);
      }
    }
    offsets.push_back(values.size());
  }
  return DesignMatrix::csr(a.rows(), a.cols(), std::move(offsets),
                           std::move(indices), std::move(values));
}

}  // namespace sparselogit
