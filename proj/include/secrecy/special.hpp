#pragma once

#include <cmath>
#include <cstdint>

#include "secrecy/errors.hpp"

namespace secrecy {

inline constexpr double kLn2 = 0.69314718055994530941723212145818;

inline double log2_of(double x) { return std::log(x) / kLn2; }

inline double factorial(unsigned n) {
  double f = 1.0;
  for (unsigned k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

/// Complementary regularized lower incomplete gamma at integer shape:
/// P[Erlang(s, scale 1) >= x] = e^{-x} sum_{k<s} x^k / k!.
/// Numerically preferable to 1 - Gamma_i/(s-1)! near x = 0.
inline double erlang_ccdf(unsigned s, double x) {
  if (s == 0) throw numeric_domain_error("erlang_ccdf: shape must be >= 1");
  if (x < 0.0) throw numeric_domain_error("erlang_ccdf: negative argument");
  double term = 1.0;
  double sum = 1.0;
  for (unsigned k = 1; k < s; ++k) {
    term *= x / static_cast<double>(k);
    sum += term;
  }
  return std::exp(-x) * sum;
}

/// Lower incomplete gamma at integer shape:
/// Gamma_i(s, x) = integral_0^x t^{s-1} e^{-t} dt = (s-1)! (1 - erlang_ccdf(s, x)).
inline double incomplete_gamma_lower(unsigned s, double x) {
  if (s == 0) throw numeric_domain_error("incomplete_gamma_lower: shape must be >= 1");
  if (x < 0.0) throw numeric_domain_error("incomplete_gamma_lower: negative argument");
  return factorial(s - 1) * (1.0 - erlang_ccdf(s, x));
}

/// log(cosh(z)) without overflow for large |z|.
inline double log_cosh(double z) {
  const double a = std::abs(z);
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

}  // namespace secrecy
