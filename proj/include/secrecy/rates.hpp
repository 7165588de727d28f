#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "secrecy/complex_matrix.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/quadrature.hpp"
#include "secrecy/special.hpp"

namespace secrecy {

/// Instantaneous secrecy rate of the non-precoded Gaussian input, in bits:
/// log2 det(I + H K_x H^dagger) - log2 det(I + G K_x G^dagger).
inline double gaussian_secrecy_rate(const ComplexMatrix& h, const ComplexMatrix& g,
                                    const ComplexMatrix& k_x) {
  if (h.cols() != g.cols()) throw config_error("gaussian_secrecy_rate: channel in-dims differ");
  const double bob = logdet_hermitian_psd(gram_plus_identity(h, k_x));
  const double eve = logdet_hermitian_psd(gram_plus_identity(g, k_x));
  return (bob - eve) / kLn2;
}

/// Instantaneous secrecy rate of the Gaussian-plus-mask input, in bits. The
/// mask acts as interference at both receivers:
/// [log2 det(I+H K_x H') - log2 det(I+H K_M H')] - [same at G],
/// with K_x = K_info + K_mask.
inline double masked_gaussian_secrecy_rate(const ComplexMatrix& h, const ComplexMatrix& g,
                                           const ComplexMatrix& k_info,
                                           const ComplexMatrix& k_mask) {
  const ComplexMatrix k_total = k_info + k_mask;
  const double bob = logdet_hermitian_psd(gram_plus_identity(h, k_total)) -
                     logdet_hermitian_psd(gram_plus_identity(h, k_mask));
  const double eve = logdet_hermitian_psd(gram_plus_identity(g, k_total)) -
                     logdet_hermitian_psd(gram_plus_identity(g, k_mask));
  return (bob - eve) / kLn2;
}

/// Mutual information of equiprobable BPSK over the complex AWGN channel
/// y = sqrt(gamma) x + w, E|x|^2 = 1, unit-variance noise, in bits.
///
/// The imaginary noise dimension carries no information; the real-axis
/// reduction of H(y) - H(y|x) collapses to
///   I(gamma) = 2 gamma log2(e) - E_t[log2 cosh(2 gamma + sqrt(2 gamma) t)],
/// t standard normal, evaluated by Gauss-Hermite quadrature.
inline double i_bpsk(double gamma,
                     const QuadratureSpec& spec = QuadratureSpec::gauss_hermite()) {
  if (gamma < 0.0) throw numeric_domain_error("i_bpsk: negative SNR");
  if (gamma == 0.0) return 0.0;
  const double root = std::sqrt(2.0 * gamma);
  const double expected = gauss_hermite_expect(
      [gamma, root](double t) { return log_cosh(2.0 * gamma + root * t); }, spec);
  const double bits = (2.0 * gamma - expected) / kLn2;
  // The value is a mutual information in [0, 1]; clip quadrature roundoff.
  return std::min(std::max(bits, 0.0), 1.0);
}

/// MMSE of BPSK x from y = sqrt(gamma) x + w (complex unit-variance noise):
/// 1 - E_t[tanh^2(2 gamma + sqrt(2 gamma) t)]. Equals dI/dgamma in nats.
inline double bpsk_mmse(double gamma,
                        const QuadratureSpec& spec = QuadratureSpec::gauss_hermite()) {
  if (gamma < 0.0) throw numeric_domain_error("bpsk_mmse: negative SNR");
  if (gamma == 0.0) return 1.0;
  const double root = std::sqrt(2.0 * gamma);
  const double expected = gauss_hermite_expect(
      [gamma, root](double t) {
        const double v = std::tanh(2.0 * gamma + root * t);
        return v * v;
      },
      spec);
  return std::min(std::max(1.0 - expected, 0.0), 1.0);
}

/// The two scalar input families compared by the dichotomy construction.
enum class ScalarInputKind { gaussian, bpsk };

/// I(gamma) in bits for a scalar input of the given kind and average power.
inline double scalar_mutual_information(ScalarInputKind kind, double power, double gamma) {
  if (gamma < 0.0) throw numeric_domain_error("scalar_mutual_information: negative SNR");
  if (kind == ScalarInputKind::gaussian) return std::log1p(power * gamma) / kLn2;
  return i_bpsk(power * gamma);
}

struct DeltaCurve {
  std::vector<double> gamma_grid;
  std::vector<double> delta_values;        // bits
  std::vector<double> derivative_estimates;  // bits per SNR unit
};

/// Difference curve Delta(gamma) = I_p(gamma) - I_q(gamma) over the grid,
/// with central-difference derivative estimates (one-sided at the left edge
/// when the step would cross gamma = 0).
inline DeltaCurve delta_curve(ScalarInputKind p_kind, ScalarInputKind q_kind, double power,
                              const std::vector<double>& grid) {
  if (grid.empty()) throw config_error("delta_curve: empty grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1])) throw config_error("delta_curve: grid not strictly increasing");
  if (grid.front() < 0.0) throw numeric_domain_error("delta_curve: negative SNR in grid");

  auto delta = [&](double gamma) {
    return scalar_mutual_information(p_kind, power, gamma) -
           scalar_mutual_information(q_kind, power, gamma);
  };

  DeltaCurve curve;
  curve.gamma_grid = grid;
  curve.delta_values.reserve(grid.size());
  curve.derivative_estimates.reserve(grid.size());
  for (double gamma : grid) {
    curve.delta_values.push_back(delta(gamma));
    const double step = 1e-4 * std::max(gamma, 1.0);
    if (gamma >= step) {
      curve.derivative_estimates.push_back((delta(gamma + step) - delta(gamma - step)) /
                                           (2.0 * step));
    } else {
      curve.derivative_estimates.push_back((delta(gamma + step) - delta(gamma)) / step);
    }
  }
  return curve;
}

struct ConvexityInterval {
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
  bool increasing = true;
  std::size_t index_lo = 0;
  std::size_t index_hi = 0;
};

/// Longest grid interval where the discrete second difference of Delta is
/// strictly positive (threshold 1e-9 against noise) and the first difference
/// keeps a constant sign. Empty optional when no such interval exists.
inline std::optional<ConvexityInterval> find_convexity_interval(const DeltaCurve& c) {
  const std::size_t n = c.gamma_grid.size();
  if (n < 32) throw config_error("find_convexity_interval: grid must have >= 32 points");

  // Divided second differences accommodate non-uniform grids.
  auto second_diff = [&](std::size_t i) {
    const double x0 = c.gamma_grid[i - 1], x1 = c.gamma_grid[i], x2 = c.gamma_grid[i + 1];
    const double d01 = (c.delta_values[i] - c.delta_values[i - 1]) / (x1 - x0);
    const double d12 = (c.delta_values[i + 1] - c.delta_values[i]) / (x2 - x1);
    return 2.0 * (d12 - d01) / (x2 - x0);
  };
  auto first_sign = [&](std::size_t i) {
    const double d = c.delta_values[i + 1] - c.delta_values[i];
    return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
  };

  std::optional<ConvexityInterval> best;
  std::size_t run_start = 0;
  bool in_run = false;
  int run_sign = 0;
  auto close_run = [&](std::size_t end_index) {
    if (!in_run || end_index <= run_start) return;
    if (!best || c.gamma_grid[end_index] - c.gamma_grid[run_start] >
                     best->gamma_hi - best->gamma_lo) {
      best = ConvexityInterval{c.gamma_grid[run_start], c.gamma_grid[end_index], run_sign > 0,
                               run_start, end_index};
    }
    in_run = false;
  };

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool convex = second_diff(i) > 1e-9;
    const int sign_before = first_sign(i - 1);
    const int sign_after = first_sign(i);
    const bool monotone = sign_before != 0 && sign_before == sign_after &&
                          (!in_run || sign_before == run_sign);
    if (convex && monotone) {
      if (!in_run) {
        run_start = i - 1;
        run_sign = sign_before;
        in_run = true;
      }
    } else {
      close_run(i);
    }
  }
  close_run(n - 2 + 1);
  return best;
}

}  // namespace secrecy
