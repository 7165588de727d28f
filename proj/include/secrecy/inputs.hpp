#pragma once

#include <cmath>
#include <utility>
#include <variant>

#include "secrecy/complex_matrix.hpp"
#include "secrecy/errors.hpp"

namespace secrecy {

/// u == x, x complex Gaussian with covariance K_x.
struct GaussianNonPrecoded {
  ComplexMatrix covariance;
};

/// u == x, scalar x = +-sqrt(power) equiprobable on the real axis.
struct BpskScalar {
  double power = 1.0;
};

/// x = x_I + x_M with independent Gaussian information part (covariance
/// K_info, u == x_I) and Gaussian mask (covariance K_mask).
struct GaussianWithMask {
  ComplexMatrix k_info;
  ComplexMatrix k_mask;
};

using InputDistribution = std::variant<GaussianNonPrecoded, BpskScalar, GaussianWithMask>;

struct PowerBudget {
  double p_t = 0.0;

  explicit PowerBudget(double power) : p_t(power) {
    if (power < 0.0) throw config_error("PowerBudget: negative power");
  }
};

inline double total_power(const InputDistribution& d) {
  if (const auto* g = std::get_if<GaussianNonPrecoded>(&d)) return g->covariance.trace_real();
  if (const auto* b = std::get_if<BpskScalar>(&d)) return b->power;
  const auto& m = std::get<GaussianWithMask>(d);
  return m.k_info.trace_real() + m.k_mask.trace_real();
}

inline std::size_t input_dim(const InputDistribution& d) {
  if (const auto* g = std::get_if<GaussianNonPrecoded>(&d)) return g->covariance.rows();
  if (std::get_if<BpskScalar>(&d)) return 1;
  return std::get<GaussianWithMask>(d).k_info.rows();
}

/// Checks dimensions, positive semidefiniteness of every covariance payload
/// and the average power budget. Returns the input unchanged on success;
/// idempotent.
inline InputDistribution validate_input(const InputDistribution& d, const PowerBudget& budget,
                                        std::size_t in_dim) {
  if (input_dim(d) != in_dim)
    throw config_error("validate_input: input dimension does not match the channel in-dim");
  if (const auto* g = std::get_if<GaussianNonPrecoded>(&d)) {
    if (!is_psd(g->covariance, 1e-10))
      throw config_error("validate_input: covariance is not positive semidefinite");
  } else if (const auto* b = std::get_if<BpskScalar>(&d)) {
    if (b->power < 0.0) throw config_error("validate_input: negative BPSK power");
  } else {
    const auto& m = std::get<GaussianWithMask>(d);
    if (m.k_info.rows() != m.k_mask.rows() || m.k_info.cols() != m.k_mask.cols())
      throw config_error("validate_input: information and mask covariances differ in shape");
    if (!is_psd(m.k_info, 1e-10) || !is_psd(m.k_mask, 1e-10))
      throw config_error("validate_input: covariance is not positive semidefinite");
  }
  if (total_power(d) > budget.p_t + 1e-9)
    throw config_error("validate_input: total power exceeds the budget");
  return d;
}

/// 2x2 covariance (a, beta; beta, P_T - a) from the two-mass-eavesdropper
/// construction. beta is real because only Re(b) enters the secrecy rates.
inline InputDistribution counterexample_gaussian_input(double a, double beta, double p_t) {
  if (a < 0.0 || a > p_t) throw config_error("counterexample_gaussian_input: a outside [0, P_T]");
  const double c = p_t - a;
  if (a * c + 1e-12 < beta * beta)
    throw config_error("counterexample_gaussian_input: Sylvester criterion violated");
  ComplexMatrix k(2, 2);
  k(0, 0) = a;
  k(0, 1) = beta;
  k(1, 0) = beta;
  k(1, 1) = c;
  return GaussianNonPrecoded{std::move(k)};
}

/// Artificial-noise input of the two-antenna counterexample: information on
/// antenna 1, mask on antenna 2, equal power P_T/2 each.
inline InputDistribution counterexample_an_input(double p_t) {
  if (p_t < 0.0) throw config_error("counterexample_an_input: negative power");
  return GaussianWithMask{ComplexMatrix::diagonal({p_t / 2.0, 0.0}),
                          ComplexMatrix::diagonal({0.0, p_t / 2.0})};
}

}  // namespace secrecy
