#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "secrecy/errors.hpp"

namespace secrecy {

struct QuadratureSpec {
  enum class Scheme { gauss_hermite, adaptive_simpson };

  Scheme scheme = Scheme::gauss_hermite;
  int node_count = 64;
  double tolerance = 1e-9;

  static QuadratureSpec gauss_hermite(int nodes = 64) {
    if (nodes < 16) throw config_error("QuadratureSpec: gauss-hermite needs >= 16 nodes");
    QuadratureSpec s;
    s.scheme = Scheme::gauss_hermite;
    s.node_count = nodes;
    return s;
  }

  static QuadratureSpec adaptive_simpson(double tol = 1e-9) {
    if (!(tol > 0.0) || tol > 1e-3)
      throw config_error("QuadratureSpec: adaptive-simpson tolerance must be in (0, 1e-3]");
    QuadratureSpec s;
    s.scheme = Scheme::adaptive_simpson;
    s.tolerance = tol;
    return s;
  }
};

namespace detail {

struct HermiteRule {
  std::vector<double> nodes;    // roots of H_n, positive-to-negative symmetric
  std::vector<double> weights;  // for weight function e^{-x^2}
};

/// Gauss-Hermite nodes and weights by Newton iteration on the orthonormal
/// Hermite recurrence (the classical gauher construction).
inline HermiteRule build_hermite_rule(int n) {
  HermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

inline const HermiteRule& hermite_rule(int n) {
  static std::mutex mu;
  static std::map<int, HermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_hermite_rule(n)).first;
  return it->second;
}

inline double simpson_estimate(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa,
                                   double b, double fb, double m, double fm, double whole,
                                   double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_estimate(a, fa, m, fm, flm);
  const double right = simpson_estimate(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Integral of f over [a, b] by adaptive Simpson with absolute tolerance.
inline double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-9, int max_depth = 48) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = detail::simpson_estimate(a, fa, b, fb, fm);
  return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

/// E[f(T)] with T ~ N(0, 1).
inline double gauss_hermite_expect(const std::function<double(double)>& f,
                                   const QuadratureSpec& spec = QuadratureSpec::gauss_hermite()) {
  if (spec.scheme == QuadratureSpec::Scheme::adaptive_simpson) {
    const double kInvSqrt2Pi = 0.39894228040143267793994605993438;
    // Truncation at |t| = 10 leaves mass below 1e-23.
    return integrate_adaptive(
        [&](double t) { return f(t) * kInvSqrt2Pi * std::exp(-0.5 * t * t); }, -10.0, 10.0,
        spec.tolerance);
  }
  if (spec.node_count < 16) throw config_error("gauss_hermite_expect: node count < 16");
  const auto& rule = detail::hermite_rule(spec.node_count);
  const double kInvSqrtPi = 0.56418958354775628694807945156077;
  const double kSqrt2 = 1.4142135623730950488016887242097;
  double acc = 0.0;
  for (int i = 0; i < spec.node_count; ++i)
    acc += rule.weights[i] * f(kSqrt2 * rule.nodes[i]);
  return acc * kInvSqrtPi;
}

}  // namespace secrecy
