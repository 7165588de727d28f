#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secrecy/channels.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/inputs.hpp"
#include "secrecy/metrics.hpp"
#include "secrecy/quadrature.hpp"
#include "secrecy/rates.hpp"

namespace secrecy {

namespace detail {

inline bool finite_pair(const ChannelEnsemble& eH, const ChannelEnsemble& eG) {
  auto finite = [](const ChannelEnsemble& e) {
    return e.get_if<Deterministic>() != nullptr || e.get_if<FiniteSupport>() != nullptr;
  };
  return finite(eH) && finite(eG);
}

/// E[log2 det(I+H K H')/det(I+G K G')]: exact over finite supports
/// (stderr 0), Monte Carlo otherwise.
inline MetricEstimate expected_logdet_ratio(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                                            const ComplexMatrix& k, std::uint64_t n,
                                            std::uint64_t seed) {
  const InputDistribution input = GaussianNonPrecoded{k};
  if (finite_pair(eH, eG)) {
    MetricEstimate est;
    est.kind = MetricKind::ESR;
    est.seed = seed;
    est.n_samples = 0;
    est.value = finite_support_metric_exact(eH, eG, input, MetricKind::ESR);
    est.stderr_ = 0.0;
    return est;
  }
  return esr_mc(eH, eG, input, n, seed);
}

}  // namespace detail

struct LowerBoundResult {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t best_mask_index = 0;  // into the evaluated grid (0 = zero mask)
  double best_power = 0.0;          // SIMOME variant only
};

/// Aggregated ESR bound pair. upper_plain is the density-difference variant,
/// upper_ccdf the tail-difference variant; upper is the minimum of whatever
/// was computable. Invariant: lower <= upper + 1e-9 up to MC noise.
struct EsrBounds {
  double lower = 0.0;
  double lower_stderr = 0.0;
  double upper = 0.0;
  std::optional<double> upper_plain;
  std::optional<double> upper_ccdf;
  std::size_t best_mask_index = 0;
  double best_power = 0.0;
};

/// Canonical feasible mask candidates for the lower-bound search: K_x/2 and
/// every axis-aligned diagonal mask that satisfies 0 <= K_M <= K_x. The zero
/// mask is added by the search itself.
inline std::vector<ComplexMatrix> default_mask_grid(const ComplexMatrix& k_x) {
  std::vector<ComplexMatrix> grid;
  auto feasible = [&](const ComplexMatrix& m) {
    return is_psd(m, 1e-10) && is_psd(k_x - m, 1e-10);
  };
  const ComplexMatrix half = 0.5 * k_x;
  if (feasible(half)) grid.push_back(half);
  for (std::size_t i = 0; i < k_x.rows(); ++i) {
    ComplexMatrix axis(k_x.rows(), k_x.cols());
    axis(i, i) = k_x(i, i);
    if (feasible(axis)) grid.push_back(axis);
  }
  return grid;
}

/// Lower ESR bound: plain Gaussian term at K_x plus the best reversed-ratio
/// term over a feasible mask grid. The zero mask is always part of the grid,
/// so the bound never falls below the plain Gaussian ESR.
inline LowerBoundResult cs_minus_mimome(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                                        const ComplexMatrix& k_x,
                                        std::vector<ComplexMatrix> mask_grid, std::uint64_t n,
                                        std::uint64_t seed) {
  ComplexMatrix zero(k_x.rows(), k_x.cols());
  mask_grid.insert(mask_grid.begin(), zero);
  for (const auto& k_m : mask_grid) {
    if (!is_psd(k_m, 1e-10) || !is_psd(k_x - k_m, 1e-10))
      throw config_error("cs_minus_mimome: mask violates 0 <= K_M <= K_x");
  }

  const MetricEstimate plain = detail::expected_logdet_ratio(eH, eG, k_x, n, seed);
  LowerBoundResult best;
  best.value = plain.value;  // zero mask contributes exactly 0
  best.stderr_ = plain.stderr_;
  best.best_mask_index = 0;
  for (std::size_t i = 1; i < mask_grid.size(); ++i) {
    // Reversed roles: the mask hurts Eve more than Bob when this is positive.
    const MetricEstimate reversed = detail::expected_logdet_ratio(eG, eH, mask_grid[i], n,
                                                                  seed + 0x6d61736bULL);
    const double candidate = plain.value + reversed.value;
    if (candidate > best.value) {
      best.value = candidate;
      best.stderr_ = std::hypot(plain.stderr_, reversed.stderr_);
      best.best_mask_index = i;
    }
  }
  return best;
}

/// Exact upper ESR bound over a common finite support:
/// sum over points of log2 det(I + A K_x A') * (p_H(A) - p_G(A))^+.
inline double cs_plus_finite(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                             const ComplexMatrix& k_x) {
  if (!detail::finite_pair(eH, eG))
    throw config_error("cs_plus_finite: both ensembles must have finite support");
  const auto sh = detail::support_of(eH);
  const auto sg = detail::support_of(eG);

  // Union of supports; absent points carry weight 0.
  std::vector<std::pair<ComplexMatrix, std::pair<double, double>>> merged;
  auto find = [&](const ComplexMatrix& m) -> std::pair<double, double>* {
    for (auto& [point, w] : merged)
      if (point.approx_equal(m, 1e-12)) return &w;
    return nullptr;
  };
  for (const auto& [m, w] : sh) {
    if (auto* entry = find(m)) entry->first += w;
    else merged.push_back({m, {w, 0.0}});
  }
  for (const auto& [m, w] : sg) {
    if (auto* entry = find(m)) entry->second += w;
    else merged.push_back({m, {0.0, w}});
  }

  double bound = 0.0;
  for (const auto& [point, w] : merged) {
    const double excess = w.first - w.second;
    if (excess <= 0.0) continue;
    bound += excess * logdet_hermitian_psd(gram_plus_identity(point, k_x)) / kLn2;
  }
  return bound;
}

struct SimomeUpperBounds {
  std::optional<double> plain;  // density-difference integral
  double ccdf = 0.0;            // CCDF-difference integral
  double min_upper() const { return plain ? std::min(*plain, ccdf) : ccdf; }
};

namespace detail {

inline double law_truncation_point(const ScalarNormLaw& law) {
  if (std::isfinite(law.support_max)) return law.support_max;
  double a = 1.0;
  while (law.ccdf(a) > 1e-12 && a < 1e9) a *= 2.0;
  return a;
}

/// Integrate f over [0, hi] splitting at the CCDF jump locations of both laws,
/// so the adaptive rule only ever sees piecewise-smooth integrands. A uniform
/// seed grid keeps the adaptive rule from stepping over narrow density bumps.
inline double integrate_split(const std::function<double(double)>& f, double hi,
                              const ScalarNormLaw& lawH, const ScalarNormLaw& lawG, double tol) {
  std::vector<double> cuts;
  for (int i = 0; i <= 32; ++i) cuts.push_back(hi * i / 32.0);
  for (const auto* law : {&lawH, &lawG})
    for (double a : law->atoms)
      if (a > 0.0 && a < hi) cuts.push_back(a);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], up = cuts[i + 1];
    if (up - lo < 1e-15) continue;
    // Evaluate strictly inside each panel so jump points are never sampled
    // ambiguously: nudge the endpoints inward by a vanishing amount.
    const double eps = 1e-12 * (1.0 + up);
    total += integrate_adaptive(f, lo + eps, up - eps, tol / static_cast<double>(cuts.size()));
  }
  return total;
}

}  // namespace detail

/// Theorem-level SIMOME upper bounds from the norm laws.
///
/// plain: integral of log2(1+P_T a^2) (p_h(a) - p_g(a))^+ da, available when
/// the main-channel law has a density.
/// ccdf: integral of 2 a P_T (P[|h|>=a] - P[|g|>=a])^+ / ((1+P_T a^2) ln 2) da.
/// The 2a factor is the Jacobian of the a^2 substitution in the underlying
/// integration by parts; without it the expression is not an upper bound.
inline SimomeUpperBounds cs_plus_simome(const ScalarNormLaw& lawH, const ScalarNormLaw& lawG,
                                        double p_t, double tol = 1e-8) {
  SimomeUpperBounds out;
  const double hi_h = detail::law_truncation_point(lawH);
  const double hi_g = detail::law_truncation_point(lawG);

  if (lawH.density) {
    const auto& ph = *lawH.density;
    auto pg = [&](double a) { return lawG.density ? (*lawG.density)(a) : 0.0; };
    out.plain = detail::integrate_split(
        [&](double a) {
          const double excess = ph(a) - pg(a);
          return excess > 0.0 ? std::log1p(p_t * a * a) / kLn2 * excess : 0.0;
        },
        hi_h, lawH, lawG, tol);
  }

  out.ccdf = detail::integrate_split(
      [&](double a) {
        const double excess = lawH.ccdf(a) - lawG.ccdf(a);
        if (excess <= 0.0) return 0.0;
        return 2.0 * a * p_t * excess / ((1.0 + p_t * a * a) * kLn2);
      },
      std::max(hi_h, hi_g), lawH, lawG, tol);
  return out;
}

/// Lower SIMOME bound: best split of the budget between information power P
/// and an isotropic padding P_T - P, searched by a coarse scan plus
/// golden-section refinement (concavity in P is not assumed).
inline LowerBoundResult cs_minus_simome(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                                        double p_t, std::uint64_t n, std::uint64_t seed) {
  if (eH.in_dim() != 1 || eG.in_dim() != 1)
    throw config_error("cs_minus_simome: SIMOME ensembles must have in-dim 1");

  // One fixed set of norm-squared draws (or the exact finite support) shared
  // across all P values keeps the objective smooth in P.
  std::vector<std::pair<double, double>> pairs;  // (|h|^2, |g|^2)
  std::vector<double> weights;
  const bool exact = detail::finite_pair(eH, eG);
  if (exact) {
    for (const auto& [h, wh] : detail::support_of(eH))
      for (const auto& [g, wg] : detail::support_of(eG)) {
        const double hn = h.frobenius_norm(), gn = g.frobenius_norm();
        pairs.emplace_back(hn * hn, gn * gn);
        weights.push_back(wh * wg);
      }
  } else {
    pairs.reserve(n);
    const std::uint64_t batches = (n + detail::kBatchSize - 1) / detail::kBatchSize;
    for (std::uint64_t b = 0; b < batches; ++b) {
      RngStream rng(seed, b);
      const std::uint64_t hi = std::min<std::uint64_t>(n, (b + 1) * detail::kBatchSize);
      for (std::uint64_t i = b * detail::kBatchSize; i < hi; ++i) {
        const auto [h, g] = joint_sample(eH, eG, rng);
        const double hn = h.frobenius_norm(), gn = g.frobenius_norm();
        pairs.emplace_back(hn * hn, gn * gn);
      }
    }
    weights.assign(pairs.size(), 1.0 / static_cast<double>(pairs.size()));
  }

  auto objective = [&](double p) {
    const double pad = 1.0 + p_t - p;
    double acc = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      acc += weights[i] * std::log((pad + p * pairs[i].first) / (pad + p * pairs[i].second));
    return acc / kLn2;
  };

  // 33-point coarse scan over [0, P_T].
  double best_p = p_t;
  double best_v = objective(p_t);
  for (int i = 0; i <= 32; ++i) {
    const double p = p_t * i / 32.0;
    const double v = objective(p);
    if (v > best_v) {
      best_v = v;
      best_p = p;
    }
  }
  // Golden-section refinement around the best coarse point.
  double lo = std::max(0.0, best_p - p_t / 32.0);
  double hi = std::min(p_t, best_p + p_t / 32.0);
  const double phi = 0.61803398874989484820458683436564;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > 1e-4 * std::max(p_t, 1e-30)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  best_p = 0.5 * (lo + hi);
  best_v = std::max(best_v, objective(best_p));

  LowerBoundResult out;
  out.value = best_v;
  out.best_power = best_p;
  if (!exact) {
    // Sample standard error of the objective at the selected P.
    const double pad = 1.0 + p_t - best_p;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [h2, g2] : pairs) {
      const double v = std::log((pad + best_p * h2) / (pad + best_p * g2)) / kLn2;
      sum += v;
      sum_sq += v * v;
    }
    const double m = static_cast<double>(pairs.size());
    const double mean = sum / m;
    out.stderr_ = std::sqrt(std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0)) / m);
  }
  return out;
}

enum class OrderingKind { degraded, uniformly_less_noisy, ccdf_dominance };
enum class OrderingHolds { yes, no, undecided };

inline const char* ordering_kind_name(OrderingKind k) {
  switch (k) {
    case OrderingKind::degraded: return "degraded";
    case OrderingKind::uniformly_less_noisy: return "uniformly-less-noisy";
    default: return "ccdf-dominance";
  }
}

inline const char* ordering_holds_name(OrderingHolds h) {
  switch (h) {
    case OrderingHolds::yes: return "yes";
    case OrderingHolds::no: return "no";
    default: return "undecided";
  }
}

struct OrderingVerdict {
  OrderingKind kind = OrderingKind::degraded;
  OrderingHolds holds = OrderingHolds::undecided;
  std::string witness;  // refuting pair or confirming construction; "no" always carries one
};

/// Decides the channel partial orders within the implemented sufficient
/// conditions; anything beyond them is reported as "undecided" rather than
/// guessed.
inline OrderingVerdict check_ordering(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                                      OrderingKind kind) {
  OrderingVerdict verdict;
  verdict.kind = kind;

  const auto* cascade = eG.get_if<DegradedCascade>();
  const bool structural_cascade = cascade != nullptr && cascade->base->structurally_equal(eH);

  if (kind == OrderingKind::degraded) {
    if (structural_cascade) {
      verdict.holds = OrderingHolds::yes;
      verdict.witness = "G = Gtilde*H cascade over the main ensemble";
    }
    return verdict;
  }

  if (kind == OrderingKind::uniformly_less_noisy) {
    if (structural_cascade) {
      verdict.holds = OrderingHolds::yes;
      verdict.witness = "degraded cascade construction";
      return verdict;
    }
    if (eH.in_dim() != 1 || eG.in_dim() != 1) return verdict;  // undecided
    ScalarNormLaw lawH, lawG;
    try {
      lawH = norm_law(eH);
      lawG = norm_law(eG);
    } catch (const not_implemented_error&) {
      return verdict;
    }
    if (lawH.support_min >= lawG.support_max) {
      verdict.holds = OrderingHolds::yes;
      verdict.witness = "min ||h|| = " + std::to_string(lawH.support_min) +
                        " >= max ||g|| = " + std::to_string(lawG.support_max);
    } else {
      // Refuting pair: a main-channel norm that falls below an eavesdropper
      // norm occurring with positive probability.
      const double g_hi = std::isfinite(lawG.support_max)
                              ? lawG.support_max
                              : std::max(1.0, 2.0 * lawH.support_min + 1.0);
      verdict.holds = OrderingHolds::no;
      verdict.witness = "||h|| = " + std::to_string(lawH.support_min) +
                        " < ||g|| = " + std::to_string(g_hi);
    }
    return verdict;
  }

  // CCDF dominance (sufficient for less-noisy-on-average in SIMOME).
  if (eH.in_dim() != 1 || eG.in_dim() != 1) return verdict;
  ScalarNormLaw lawH, lawG;
  try {
    lawH = norm_law(eH);
    lawG = norm_law(eG);
  } catch (const not_implemented_error&) {
    return verdict;
  }
  const double hi = std::max(detail::law_truncation_point(lawH),
                             detail::law_truncation_point(lawG));
  for (int i = 0; i < 200; ++i) {
    const double a = hi * (i + 0.5) / 200.0;
    if (lawH.ccdf(a) < lawG.ccdf(a) - 1e-12) {
      verdict.holds = OrderingHolds::no;
      verdict.witness = "a = " + std::to_string(a) + ": P[||h||>=a] = " +
                        std::to_string(lawH.ccdf(a)) + " < P[||g||>=a] = " +
                        std::to_string(lawG.ccdf(a));
      return verdict;
    }
  }
  verdict.holds = OrderingHolds::yes;
  verdict.witness = "CCDF of ||h|| dominates on a 200-point grid over [0, " +
                    std::to_string(hi) + "]";
  return verdict;
}

struct RayleighPairScenario {
  std::size_t n_a = 2;
  std::size_t n_b = 2;
  std::size_t n_e = 2;
  double sigma_h2 = 1.0;
  double sigma_g2 = 0.5;  // cascade-tail variance when degraded, else Eve's
  bool degraded = true;
  double p_t = 2.0;
  std::optional<double> sop_r;  // also compare SOP at this rate when set

  ChannelEnsemble main_ensemble() const {
    return ChannelEnsemble(RayleighIID{n_b, n_a, sigma_h2});
  }
  ChannelEnsemble eve_ensemble() const {
    if (degraded)
      return ChannelEnsemble(DegradedCascade{
          std::make_shared<ChannelEnsemble>(main_ensemble()), RayleighIID{n_e, n_b, sigma_g2}});
    return ChannelEnsemble(RayleighIID{n_e, n_a, sigma_g2});
  }
};

struct CovarianceTrial {
  std::vector<double> diag;
  MetricEstimate esr;
  std::optional<MetricEstimate> sop;
};

struct IsotropicReport {
  CovarianceTrial isotropic;
  std::vector<CovarianceTrial> competitors;
  bool esr_not_beaten = true;
  bool sop_not_beaten = true;
};

/// Compares the isotropic covariance (P_T/N_A) I against random
/// trace-preserving diagonal competitors. Common seeds across covariances
/// keep the comparison paired.
inline IsotropicReport verify_isotropic_optimality(const RayleighPairScenario& scenario,
                                                   std::size_t perturbations, std::uint64_t n,
                                                   std::uint64_t seed) {
  const ChannelEnsemble eH = scenario.main_ensemble();
  const ChannelEnsemble eG = scenario.eve_ensemble();

  auto evaluate = [&](const std::vector<double>& diag) {
    CovarianceTrial trial;
    trial.diag = diag;
    const InputDistribution input = GaussianNonPrecoded{ComplexMatrix::diagonal(diag)};
    trial.esr = esr_mc(eH, eG, input, n, seed);
    if (scenario.sop_r) trial.sop = sop_mc(eH, eG, input, *scenario.sop_r, n, seed);
    return trial;
  };

  IsotropicReport report;
  report.isotropic =
      evaluate(std::vector<double>(scenario.n_a, scenario.p_t / static_cast<double>(scenario.n_a)));

  RngStream perturbation_rng(seed, 0xd1a60000ULL);
  for (std::size_t k = 0; k < perturbations; ++k) {
    std::vector<double> diag(scenario.n_a);
    double total = 0.0;
    for (double& d : diag) {
      d = perturbation_rng.uniform();
      total += d;
    }
    for (double& d : diag) d *= scenario.p_t / total;
    report.competitors.push_back(evaluate(diag));
  }

  for (const auto& comp : report.competitors) {
    const double esr_margin = 3.0 * std::hypot(report.isotropic.esr.stderr_, comp.esr.stderr_);
    if (report.isotropic.esr.value < comp.esr.value - esr_margin) report.esr_not_beaten = false;
    if (comp.sop && report.isotropic.sop) {
      const double sop_margin =
          3.0 * std::hypot(report.isotropic.sop->stderr_, comp.sop->stderr_);
      if (report.isotropic.sop->value > comp.sop->value + sop_margin)
        report.sop_not_beaten = false;
    }
  }
  return report;
}

struct CounterexampleReport {
  double p_t = 0.0;
  double r = 0.5;
  struct GridPoint {
    double a, beta, esr, rs1, rs2;
  };
  std::vector<GridPoint> grid;
  double max_gaussian_esr = 0.0;   // over the full feasible (a, beta) grid
  double max_beta0_esr = 0.0;      // over the uncorrelated (beta = 0) slice
  double max_min_rate = 0.0;       // max over grid of min(R_s1, R_s2)
  double an_rate = 0.0;            // artificial-noise secrecy rate (both g's)
  double an_sop = 0.0;             // SOP of the AN input at r

  // Checked claims. Note that the full-grid Gaussian ESR is NOT non-positive:
  // correlation between the antennas lowers the eavesdropper's average
  // log-SNR ((1+P)^2 - 4 beta^2 < (1+P)^2), so small positive ESRs exist off
  // the beta = 0 slice. The strict statements are that every Gaussian input
  // keeps min(R_s1, R_s2) <= 0 (outage probability at least 1/2) and that the
  // artificial-noise input strictly beats the whole Gaussian sweep.
  bool beta0_esr_nonpositive = false;
  bool min_rate_nonpositive = false;
  bool an_rate_positive = false;
  bool an_sop_zero = false;
  bool an_beats_every_gaussian = false;

  bool all_pass() const {
    return beta0_esr_nonpositive && min_rate_nonpositive && an_rate_positive && an_sop_zero &&
           an_beats_every_gaussian;
  }
};

/// Two-antenna counterexample: deterministic h = (1, 0), eavesdropper
/// g = (+-1, 1) with equal probability. Sweeps every feasible non-precoded
/// Gaussian covariance and evaluates the artificial-noise alternative.
inline CounterexampleReport counterexample_report(double p_t, std::size_t resolution,
                                                  double r = 0.5) {
  if (!(p_t > 0.0)) throw config_error("counterexample_report: P_T must be positive");
  if (resolution < 2) throw config_error("counterexample_report: resolution must be >= 2");

  ComplexMatrix h(1, 2);
  h(0, 0) = 1.0;
  ComplexMatrix g1(1, 2), g2(1, 2);
  g1(0, 0) = 1.0;
  g1(0, 1) = 1.0;
  g2(0, 0) = -1.0;
  g2(0, 1) = 1.0;
  const ChannelEnsemble eH{Deterministic{h}};
  const ChannelEnsemble eG{FiniteSupport{{g1, g2}, {0.5, 0.5}}};

  CounterexampleReport report;
  report.p_t = p_t;
  report.r = r;
  report.max_gaussian_esr = -std::numeric_limits<double>::infinity();
  report.max_beta0_esr = -std::numeric_limits<double>::infinity();
  report.max_min_rate = -std::numeric_limits<double>::infinity();
  report.grid.reserve(resolution * resolution);

  for (std::size_t i = 0; i < resolution; ++i) {
    const double a = p_t * static_cast<double>(i) / static_cast<double>(resolution - 1);
    const double beta_max = std::sqrt(std::max(0.0, a * (p_t - a)));
    for (std::size_t j = 0; j < resolution; ++j) {
      const double beta =
          resolution == 1 ? 0.0
                          : -beta_max + 2.0 * beta_max * static_cast<double>(j) /
                                            static_cast<double>(resolution - 1);
      const InputDistribution input = counterexample_gaussian_input(a, beta, p_t);
      const auto& k = std::get<GaussianNonPrecoded>(input).covariance;
      const double rs1 = gaussian_secrecy_rate(h, g1, k);
      const double rs2 = gaussian_secrecy_rate(h, g2, k);
      const double esr = 0.5 * (rs1 + rs2);
      report.grid.push_back({a, beta, esr, rs1, rs2});
      report.max_gaussian_esr = std::max(report.max_gaussian_esr, esr);
      if (std::abs(beta) < 1e-12) report.max_beta0_esr = std::max(report.max_beta0_esr, esr);
      report.max_min_rate = std::max(report.max_min_rate, std::min(rs1, rs2));
    }
  }

  const InputDistribution an = counterexample_an_input(p_t);
  const auto& masked = std::get<GaussianWithMask>(an);
  report.an_rate = masked_gaussian_secrecy_rate(h, g1, masked.k_info, masked.k_mask);
  report.an_sop = finite_support_metric_exact(eH, eG, an, MetricKind::SOP, r);

  const double tol = 1e-9;
  report.beta0_esr_nonpositive = report.max_beta0_esr <= tol;
  report.min_rate_nonpositive = report.max_min_rate <= tol;
  report.an_rate_positive = report.an_rate > 0.0;
  report.an_sop_zero = report.an_sop == 0.0 && r < report.an_rate;
  report.an_beats_every_gaussian = report.an_rate > report.max_gaussian_esr + tol;
  return report;
}

}  // namespace secrecy
