#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "secrecy/channels.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/inputs.hpp"
#include "secrecy/rates.hpp"

namespace secrecy {

enum class MetricKind { SOP, ESR, EPSR };

inline const char* metric_name(MetricKind k) {
  switch (k) {
    case MetricKind::SOP: return "sop";
    case MetricKind::ESR: return "esr";
    default: return "epsr";
  }
}

struct MetricEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  MetricKind kind = MetricKind::ESR;
};

/// Per-realization secrecy rate in bits for the given input family.
/// BPSK is supported only when both channels have a single transmit antenna
/// (the SIMOME reduction to i_bpsk of the norm-squared SNR).
inline double instantaneous_secrecy_rate(const ComplexMatrix& h, const ComplexMatrix& g,
                                         const InputDistribution& d) {
  if (const auto* gauss = std::get_if<GaussianNonPrecoded>(&d))
    return gaussian_secrecy_rate(h, g, gauss->covariance);
  if (const auto* masked = std::get_if<GaussianWithMask>(&d))
    return masked_gaussian_secrecy_rate(h, g, masked->k_info, masked->k_mask);
  const auto& bpsk = std::get<BpskScalar>(d);
  if (h.cols() != 1 || g.cols() != 1)
    throw not_implemented_error("BPSK secrecy rate: scalar-input channels only");
  const double hn = h.frobenius_norm();
  const double gn = g.frobenius_norm();
  return i_bpsk(bpsk.power * hn * hn) - i_bpsk(bpsk.power * gn * gn);
}

namespace detail {

inline constexpr std::uint64_t kBatchSize = 4096;

struct BatchMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
};

/// Streams n evaluations of `stat` over joint channel draws in fixed-size
/// batches; batch k always uses stream-id k, so the totals are identical for
/// any worker count. Batches are reduced in index order.
inline BatchMoments mc_moments(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                               const std::function<double(const ComplexMatrix&,
                                                          const ComplexMatrix&)>& stat,
                               std::uint64_t n, std::uint64_t seed, unsigned workers) {
  const std::uint64_t batches = (n + kBatchSize - 1) / kBatchSize;
  std::vector<BatchMoments> partial(batches);
  auto run_batch = [&](std::uint64_t b) {
    RngStream rng(seed, b);
    const std::uint64_t lo = b * kBatchSize;
    const std::uint64_t hi = std::min(n, lo + kBatchSize);
    BatchMoments m;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const auto [h, g] = joint_sample(eH, eG, rng);
      const double v = stat(h, g);
      m.sum += v;
      m.sum_sq += v * v;
      ++m.count;
    }
    partial[b] = m;
  };

  if (workers <= 1 || batches <= 1) {
    for (std::uint64_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    const unsigned k = std::min<std::uint64_t>(workers, batches);
    for (unsigned w = 0; w < k; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < batches; b += k) run_batch(b);
      });
    for (auto& t : pool) t.join();
  }

  BatchMoments total;
  for (const auto& m : partial) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
    total.count += m.count;
  }
  return total;
}

inline MetricEstimate mean_estimate(const BatchMoments& m, std::uint64_t seed, MetricKind kind) {
  MetricEstimate est;
  est.kind = kind;
  est.seed = seed;
  est.n_samples = m.count;
  const double n = static_cast<double>(m.count);
  est.value = m.sum / n;
  const double var = m.count > 1 ? std::max(0.0, (m.sum_sq - n * est.value * est.value) / (n - 1.0))
                                 : 0.0;
  est.stderr_ = std::sqrt(var / n);
  return est;
}

}  // namespace detail

/// Monte Carlo secrecy outage probability at target rate r.
inline MetricEstimate sop_mc(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                             const InputDistribution& d, double r, std::uint64_t n,
                             std::uint64_t seed, unsigned workers = 1) {
  if (r < 0.0) throw numeric_domain_error("sop_mc: negative target rate");
  const auto m = detail::mc_moments(
      eH, eG,
      [&](const ComplexMatrix& h, const ComplexMatrix& g) {
        return instantaneous_secrecy_rate(h, g, d) < r ? 1.0 : 0.0;
      },
      n, seed, workers);
  MetricEstimate est;
  est.kind = MetricKind::SOP;
  est.seed = seed;
  est.n_samples = m.count;
  const double p = m.sum / static_cast<double>(m.count);
  est.value = p;
  est.stderr_ = std::sqrt(p * (1.0 - p) / static_cast<double>(m.count));
  return est;
}

/// Monte Carlo ergodic secrecy rate (sample mean of the signed rate).
inline MetricEstimate esr_mc(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                             const InputDistribution& d, std::uint64_t n, std::uint64_t seed,
                             unsigned workers = 1) {
  return detail::mean_estimate(
      detail::mc_moments(
          eH, eG,
          [&](const ComplexMatrix& h, const ComplexMatrix& g) {
            return instantaneous_secrecy_rate(h, g, d);
          },
          n, seed, workers),
      seed, MetricKind::ESR);
}

/// Monte Carlo ergodic positive secrecy rate (sample mean of the positive part).
inline MetricEstimate epsr_mc(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                              const InputDistribution& d, std::uint64_t n, std::uint64_t seed,
                              unsigned workers = 1) {
  return detail::mean_estimate(
      detail::mc_moments(
          eH, eG,
          [&](const ComplexMatrix& h, const ComplexMatrix& g) {
            return std::max(0.0, instantaneous_secrecy_rate(h, g, d));
          },
          n, seed, workers),
      seed, MetricKind::EPSR);
}

namespace detail {

inline std::vector<std::pair<ComplexMatrix, double>> support_of(const ChannelEnsemble& e) {
  if (const auto* d = e.get_if<Deterministic>()) return {{d->matrix, 1.0}};
  if (const auto* f = e.get_if<FiniteSupport>()) {
    std::vector<std::pair<ComplexMatrix, double>> out;
    for (std::size_t i = 0; i < f->points.size(); ++i) out.emplace_back(f->points[i], f->weights[i]);
    return out;
  }
  throw config_error("finite_support_metric_exact: ensemble has infinite support");
}

}  // namespace detail

/// Exact metric value over a finite joint support (independent product law).
/// r is only consulted for the SOP.
inline double finite_support_metric_exact(const ChannelEnsemble& eH, const ChannelEnsemble& eG,
                                          const InputDistribution& d, MetricKind kind,
                                          double r = 0.0) {
  const auto sh = detail::support_of(eH);
  const auto sg = detail::support_of(eG);
  double acc = 0.0;
  for (const auto& [h, wh] : sh)
    for (const auto& [g, wg] : sg) {
      const double rate = instantaneous_secrecy_rate(h, g, d);
      double contribution = 0.0;
      switch (kind) {
        case MetricKind::SOP: contribution = rate < r ? 1.0 : 0.0; break;
        case MetricKind::ESR: contribution = rate; break;
        case MetricKind::EPSR: contribution = std::max(0.0, rate); break;
      }
      acc += wh * wg * contribution;
    }
  return acc;
}

/// SIMOME Rayleigh scenario of the closed forms: constant known main channel
/// of norm h_norm, eavesdropper vector of N_E i.i.d. complex Gaussian entries
/// with per-entry variance sigma2, Gaussian input at full power P_T.
struct SimomeRayleighScenario {
  double h_norm = 1.0;
  unsigned n_e = 1;
  double sigma2 = 1.0;
  double p_t = 1.0;

  double main_capacity_bits() const { return std::log1p(p_t * h_norm * h_norm) / kLn2; }

  ChannelEnsemble main_ensemble() const {
    ComplexMatrix h(1, 1);
    h(0, 0) = h_norm;
    return ChannelEnsemble(Deterministic{h});
  }
  ChannelEnsemble eve_ensemble() const {
    return ChannelEnsemble(RayleighIID{n_e, 1, sigma2});
  }
};

/// Closed-form optimal SOP. For r within the main channel capacity the outage
/// threshold on ||g||^2 is x_r = 1/(2^r P_T) + ||h||^2/2^r - 1/P_T and
/// SOP(r) = P[||g||^2 >= x_r] through the chi-square (Erlang) tail.
inline double sop_closed_form(const SimomeRayleighScenario& s, double r) {
  if (r < 0.0) throw numeric_domain_error("sop_closed_form: negative target rate");
  if (r > s.main_capacity_bits()) return 1.0;
  const double pow2r = std::exp2(r);
  const double x_r = 1.0 / (pow2r * s.p_t) + s.h_norm * s.h_norm / pow2r - 1.0 / s.p_t;
  if (x_r <= 0.0) return 1.0;
  return erlang_ccdf(s.n_e, x_r / s.sigma2);
}

/// Closed-form optimal EPSR: integral of 1 - SOP over [0, main capacity].
inline double epsr_closed_form(const SimomeRayleighScenario& s, double tol = 1e-8) {
  const double cap = s.main_capacity_bits();
  if (cap == 0.0) return 0.0;
  return integrate_adaptive([&](double r) { return 1.0 - sop_closed_form(s, r); }, 0.0, cap, tol);
}

}  // namespace secrecy
