#pragma once

#include <cmath>
#include <stdexcept>

#include "sparselogit/matrix.hpp"

namespace sparselogit {

/// Dual iterates live in the open cube (0,1)^m; sigmoid outputs are
/// clamped into [kEpsS, 1 - kEpsS] so the logit map stays finite.
inline constexpr double kEpsS = 1e-15;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {
// x log x with the boundary convention 0 * log 0 = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace detail

/// Negative sum of binary entropies,
///   psi(s) = sum_i s_i log s_i + (1-s_i) log(1-s_i),  s in [0,1]^m.
inline double psi(const Vector& s) {
  double acc = 0.0;
  for (double si : s) {
    if (!(si >= 0.0 && si <= 1.0))
      throw DomainError("psi: entry outside [0,1]");
    acc += detail::xlogx(si) + detail::xlogx(1.0 - si);
  }
  return acc;
}

/// Componentwise logit, the gradient of psi on the open cube.
inline Vector grad_psi(const Vector& s) {
  Vector v(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0 && s[i] < 1.0))
      throw DomainError("grad_psi: entry on or outside the boundary of (0,1)");
    v[i] = std::log(s[i] / (1.0 - s[i]));
  }
  return v;
}

inline double sigmoid_scalar(double v) {
  // branch on sign so exp never overflows
  double s;
  if (v >= 0.0) {
    s = 1.0 / (1.0 + std::exp(-v));
  } else {
    const double e = std::exp(v);
    s = e / (1.0 + e);
  }
  return std::min(1.0 - kEpsS, std::max(kEpsS, s));
}

/// Componentwise 1/(1+exp(-v)), clamped into the open cube.
inline Vector sigmoid(const Vector& v) {
  Vector s(v.size());
  for (Index i = 0; i < v.size(); ++i) s[i] = sigmoid_scalar(v[i]);
  return s;
}

/// KL divergence generated by psi:
///   D_H(s,s') = sum_i s_i log(s_i/s'_i) + (1-s_i) log((1-s_i)/(1-s'_i)).
/// Evaluated term by term; tighter near the boundary than the Bregman form.
inline double kl_divergence(const Vector& s, const Vector& s_prime) {
  if (s.size() != s_prime.size())
    throw ContractViolation("kl_divergence: length mismatch");
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    const double a = s[i], b = s_prime[i];
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
      throw DomainError("kl_divergence: entry outside [0,1]");
    if (a > 0.0) {
      if (b <= 0.0) throw DomainError("kl_divergence: s' boundary where s > 0");
      acc += a * std::log(a / b);
    }
    if (a < 1.0) {
      if (b >= 1.0) throw DomainError("kl_divergence: s' boundary where s < 1");
      acc += (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
    }
  }
  return acc;
}

}  // namespace sparselogit
