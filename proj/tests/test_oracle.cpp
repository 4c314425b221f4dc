#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sparselogit/oracle.hpp"
#include "sparselogit/synth.hpp"

using namespace sparselogit;

namespace {

SynthInstance small_instance(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.m = 60;
  cfg.n = 20;
  cfg.correlation = 0.2;
  cfg.seed = seed;
  return make_synthetic(cfg);
}

}  // namespace

TEST_CASE("kkt_residual at theta = 0") {
  auto inst = small_instance(301);
  const Vector zero(inst.data.n(), 0.0);

  // at theta = 0, s = 0.5 everywhere; residual vanishes iff
  // lambda*alpha >= |(1/m) A^T (y - 0.5)|_inf
  const double lmax = lambda_max(inst.data, 1.0);
  CHECK(kkt_residual(inst.data, zero, PenaltyParams(1.01 * lmax, 1.0, inst.data.m()))
            .stationarity_residual == 0.0);
  CHECK(kkt_residual(inst.data, zero, PenaltyParams(0.9 * lmax, 1.0, inst.data.m()))
            .stationarity_residual > 0.0);
}

TEST_CASE("kkt_residual with balanced degenerate response") {
  // A^T (y - 0.5) = 0 by construction: identical rows, complementary labels
  Dataset data(DesignMatrix::dense(2, 2, {1, 2, 1, 2}), {1, 0});
  const Vector zero{0.0, 0.0};
  for (double lam : {0.01, 0.5, 10.0}) {
    CHECK(kkt_residual(data, zero, PenaltyParams(lam, 1.0, 2)).stationarity_residual ==
          0.0);
  }
}

TEST_CASE("kkt_residual reports dual consistency for external s") {
  auto inst = small_instance(307);
  Vector theta(inst.data.n(), 0.1);
  Vector s_model = sigmoid(inst.data.design.mat_vec(theta));
  PenaltyParams p(0.1, 0.5, inst.data.m());

  auto rep0 = kkt_residual(inst.data, theta, p, &s_model);
  CHECK(rep0.dual_consistency_residual <= 1e-15);

  Vector s_off = s_model;
  s_off[3] += 0.05;
  auto rep1 = kkt_residual(inst.data, theta, p, &s_off);
  CHECK(rep1.dual_consistency_residual == Catch::Approx(0.05).epsilon(1e-10));
}

TEST_CASE("lambda_max scalar example") {
  Dataset data(DesignMatrix::dense(1, 1, {2.0}), {1.0});
  CHECK(lambda_max(data, 1.0) == Catch::Approx(1.0));
  CHECK(lambda_max(data, 0.5) == Catch::Approx(2.0));
  CHECK_THROWS_AS(lambda_max(data, 0.0), ContractViolation);

  // degenerate: A^T (y - 0.5) = 0
  Dataset bal(DesignMatrix::dense(2, 1, {1.0, 1.0}), {1.0, 0.0});
  CHECK(lambda_max(bal, 1.0) == 0.0);
}

TEST_CASE("lambda_max is the zero-solution boundary") {
  auto inst = small_instance(311);
  const double lmax = lambda_max(inst.data, 1.0);
  PenaltyParams above(1.01 * lmax, 1.0, inst.data.m());
  PenaltyParams below(0.9 * lmax, 1.0, inst.data.m());
  Vector t_above = prox_grad_reference(inst.data, above, 1e-10);
  Vector t_below = prox_grad_reference(inst.data, below, 1e-10);
  CHECK(norm_inf(t_above) == 0.0);
  CHECK(norm_inf(t_below) > 0.0);
}

TEST_CASE("spectral norm power iteration") {
  CHECK(spectral_norm_power_iter(DesignMatrix::dense(2, 2, {3, 0, 0, 1})) ==
        Catch::Approx(3.0).epsilon(1e-10));

  // closed-form largest singular value of [[3,4],[0,1]]:
  // sigma^2 = (26 + sqrt(640)) / 2
  CHECK(spectral_norm_power_iter(DesignMatrix::dense(2, 2, {3, 4, 0, 1})) ==
        Catch::Approx(5.06449510224598).epsilon(1e-9));

  // rank-1 outer(a, b) has norm |a|_2 |b|_2
  Vector a{1.0, -2.0, 0.5}, b{3.0, 1.0};
  Vector vals(6);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 2; ++j) vals[i * 2 + j] = a[i] * b[j];
  CHECK(spectral_norm_power_iter(DesignMatrix::dense(3, 2, std::move(vals))) ==
        Catch::Approx(norm2(a) * norm2(b)).epsilon(1e-10));

  CHECK_THROWS_AS(spectral_norm_power_iter(DesignMatrix::dense(1, 1, {1.0}), 0),
                  ContractViolation);
}

TEST_CASE("|A^T s|_2 <= |A|_2 |s|_2 with the power-iteration estimate") {
  std::mt19937_64 rng(317);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 20; ++rep) {
    Vector vals(40);
    for (double& v : vals) v = gauss(rng);
    auto a = DesignMatrix::dense(8, 5, std::move(vals));
    const double spec = spectral_norm_power_iter(a);
    Vector s(8);
    for (double& x : s) x = gauss(rng);
    CHECK(norm2(a.mat_tvec(s)) <= spec * norm2(s) * (1.0 + 1e-6));
  }
}

TEST_CASE("prox_grad_reference satisfies its own KKT tolerance") {
  auto inst = small_instance(331);
  const double lmax = lambda_max(inst.data, 0.9);
  PenaltyParams p(0.3 * lmax, 0.9, inst.data.m());
  Vector theta = prox_grad_reference(inst.data, p, 1e-9);
  CHECK(kkt_residual(inst.data, theta, p).stationarity_residual <= 1e-9);
}

TEST_CASE("prox_grad_reference 1-D grid sanity") {
  Dataset data(DesignMatrix::dense(1, 1, {1.5}), {1.0});
  PenaltyParams p(0.2, 0.5, 1);
  Vector theta = prox_grad_reference(data, p, 1e-10);

  double best = 0.0, best_val = 1e300;
  for (double t = -5.0; t <= 5.0; t += 1e-5) {
    const double val = objective(data, {t}, p);
    if (val < best_val) {
      best_val = val;
      best = t;
    }
  }
  CHECK(theta[0] == Catch::Approx(best).margin(1e-4));
}

TEST_CASE("distinct starts agree for alpha < 1 (unique minimum)") {
  auto inst = small_instance(337);
  const double lmax = lambda_max(inst.data, 0.5);
  PenaltyParams p(0.3 * lmax, 0.5, inst.data.m());

  Vector from_zero = prox_grad_reference(inst.data, p, 1e-10);
  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss;
  Vector start(inst.data.n());
  for (double& x : start) x = gauss(rng);
  Vector from_random = prox_grad_reference(inst.data, p, 1e-10, &start);

  CHECK(objective(inst.data, from_zero, p) ==
        Catch::Approx(objective(inst.data, from_random, p)).epsilon(1e-7));
}

TEST_CASE("oracle failure surfaces instead of passing silently") {
  auto inst = small_instance(347);
  PenaltyParams p(0.05, 0.5, inst.data.m());
  CHECK_THROWS_AS(prox_grad_reference(inst.data, p, 1e-300, nullptr, 200),
                  OracleFailure);
}
