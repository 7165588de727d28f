#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "secrecy/complex_matrix.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/rng.hpp"
#include "secrecy/special.hpp"

namespace secrecy {

class ChannelEnsemble;

/// Channel matrix known and constant.
struct Deterministic {
  ComplexMatrix matrix;
};

/// Discrete channel law: draws point i with probability weights[i].
struct FiniteSupport {
  std::vector<ComplexMatrix> points;
  std::vector<double> weights;
};

/// i.i.d. circularly symmetric complex Gaussian entries, E|h_ij|^2 = sigma2.
struct RayleighIID {
  std::size_t out_dim = 1;
  std::size_t in_dim = 1;
  double sigma2 = 1.0;
};

/// Eavesdropper G = Gtilde * H: a Rayleigh tail applied to a draw from the
/// base ensemble. The coupling makes G a degraded version of H by construction.
struct DegradedCascade {
  std::shared_ptr<ChannelEnsemble> base;  // law of H
  RayleighIID tail;                       // law of Gtilde, tail.in_dim == base out_dim
};

/// Single-transmit-antenna scenario with a constant known main channel of the
/// given norm and a Rayleigh eavesdropper vector. Sampling this ensemble draws
/// the eavesdropper channel; main_channel() gives the fixed h.
struct SimomeScenario {
  double h_norm = 1.0;
  RayleighIID eve;  // in_dim must be 1
};

/// Law of a channel norm ||.||: CCDF always available, density when the law
/// is continuous. support_max may be infinite.
struct ScalarNormLaw {
  std::function<double(double)> ccdf;
  std::optional<std::function<double(double)>> density;
  double support_min = 0.0;
  double support_max = std::numeric_limits<double>::infinity();
  std::vector<double> atoms;  // CCDF jump locations, for quadrature splitting
};

class ChannelEnsemble {
 public:
  using Variant = std::variant<Deterministic, FiniteSupport, RayleighIID, DegradedCascade,
                               SimomeScenario>;

  ChannelEnsemble(Deterministic d) : v_(std::move(d)) { validate(); }
  ChannelEnsemble(FiniteSupport f) : v_(std::move(f)) { validate(); }
  ChannelEnsemble(RayleighIID r) : v_(std::move(r)) { validate(); }
  ChannelEnsemble(DegradedCascade c) : v_(std::move(c)) { validate(); }
  ChannelEnsemble(SimomeScenario s) : v_(std::move(s)) { validate(); }

  const Variant& variant() const { return v_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  std::size_t out_dim() const {
    return std::visit(
        [](const auto& e) -> std::size_t {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Deterministic>) return e.matrix.rows();
          if constexpr (std::is_same_v<T, FiniteSupport>) return e.points.front().rows();
          if constexpr (std::is_same_v<T, RayleighIID>) return e.out_dim;
          if constexpr (std::is_same_v<T, DegradedCascade>) return e.tail.out_dim;
          if constexpr (std::is_same_v<T, SimomeScenario>) return e.eve.out_dim;
        },
        v_);
  }

  std::size_t in_dim() const {
    return std::visit(
        [](const auto& e) -> std::size_t {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Deterministic>) return e.matrix.cols();
          if constexpr (std::is_same_v<T, FiniteSupport>) return e.points.front().cols();
          if constexpr (std::is_same_v<T, RayleighIID>) return e.in_dim;
          if constexpr (std::is_same_v<T, DegradedCascade>) return e.base->in_dim();
          if constexpr (std::is_same_v<T, SimomeScenario>) return 1;
        },
        v_);
  }

  bool structurally_equal(const ChannelEnsemble& other) const {
    if (v_.index() != other.v_.index()) return false;
    if (const auto* d = get_if<Deterministic>())
      return d->matrix.approx_equal(other.get_if<Deterministic>()->matrix, 0.0);
    if (const auto* f = get_if<FiniteSupport>()) {
      const auto* g = other.get_if<FiniteSupport>();
      if (f->points.size() != g->points.size()) return false;
      for (std::size_t i = 0; i < f->points.size(); ++i)
        if (!f->points[i].approx_equal(g->points[i], 0.0) || f->weights[i] != g->weights[i])
          return false;
      return true;
    }
    if (const auto* r = get_if<RayleighIID>()) {
      const auto* s = other.get_if<RayleighIID>();
      return r->out_dim == s->out_dim && r->in_dim == s->in_dim && r->sigma2 == s->sigma2;
    }
    if (const auto* c = get_if<DegradedCascade>()) {
      const auto* d = other.get_if<DegradedCascade>();
      return c->tail.out_dim == d->tail.out_dim && c->tail.sigma2 == d->tail.sigma2 &&
             c->base->structurally_equal(*d->base);
    }
    const auto* a = get_if<SimomeScenario>();
    const auto* b = other.get_if<SimomeScenario>();
    return a->h_norm == b->h_norm && a->eve.out_dim == b->eve.out_dim &&
           a->eve.sigma2 == b->eve.sigma2;
  }

 private:
  void validate() const {
    if (const auto* f = get_if<FiniteSupport>()) {
      if (f->points.empty()) throw config_error("FiniteSupport: no points");
      if (f->points.size() != f->weights.size())
        throw config_error("FiniteSupport: points/weights length mismatch");
      double sum = 0.0;
      for (double w : f->weights) {
        if (w < 0.0) throw config_error("FiniteSupport: negative weight");
        sum += w;
      }
      if (std::abs(sum - 1.0) > 1e-12) throw config_error("FiniteSupport: weights must sum to 1");
      for (const auto& p : f->points)
        if (p.rows() != f->points.front().rows() || p.cols() != f->points.front().cols())
          throw config_error("FiniteSupport: inconsistent point dimensions");
    } else if (const auto* r = get_if<RayleighIID>()) {
      if (r->out_dim == 0 || r->in_dim == 0) throw config_error("RayleighIID: zero dimension");
      if (r->sigma2 < 0.0) throw config_error("RayleighIID: negative variance");
    } else if (const auto* c = get_if<DegradedCascade>()) {
      if (!c->base) throw config_error("DegradedCascade: missing base ensemble");
      if (c->tail.in_dim != c->base->out_dim())
        throw config_error("DegradedCascade: tail in-dim must equal base out-dim");
    } else if (const auto* s = get_if<SimomeScenario>()) {
      if (s->h_norm < 0.0) throw config_error("SimomeScenario: negative h-norm");
      if (s->eve.in_dim != 1) throw config_error("SimomeScenario: eve must have in-dim 1");
    }
  }

  Variant v_;
};

inline ComplexMatrix sample_rayleigh(const RayleighIID& r, RngStream& rng) {
  ComplexMatrix m(r.out_dim, r.in_dim);
  for (std::size_t i = 0; i < r.out_dim; ++i)
    for (std::size_t j = 0; j < r.in_dim; ++j) m(i, j) = rng.complex_gaussian(r.sigma2);
  return m;
}

inline ComplexMatrix sample_channel(const ChannelEnsemble& e, RngStream& rng) {
  if (const auto* d = e.get_if<Deterministic>()) return d->matrix;
  if (const auto* f = e.get_if<FiniteSupport>()) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < f->points.size(); ++i) {
      acc += f->weights[i];
      if (u <= acc) return f->points[i];
    }
    return f->points.back();
  }
  if (const auto* r = e.get_if<RayleighIID>()) return sample_rayleigh(*r, rng);
  if (const auto* c = e.get_if<DegradedCascade>()) {
    const ComplexMatrix h = sample_channel(*c->base, rng);
    return sample_rayleigh(c->tail, rng) * h;
  }
  const auto* s = e.get_if<SimomeScenario>();
  return sample_rayleigh(s->eve, rng);
}

/// Main channel of a SIMOME scenario: the fixed 1x1 matrix with |h| = h_norm.
inline ChannelEnsemble simome_main_channel(const SimomeScenario& s) {
  ComplexMatrix h(1, 1);
  h(0, 0) = s.h_norm;
  return ChannelEnsemble(Deterministic{h});
}

/// One joint draw of (H, G). When eG is a degraded cascade over eH, the same
/// H realization feeds both outputs; otherwise the draws are independent.
inline std::pair<ComplexMatrix, ComplexMatrix> joint_sample(const ChannelEnsemble& eH,
                                                            const ChannelEnsemble& eG,
                                                            RngStream& rng) {
  if (const auto* c = eG.get_if<DegradedCascade>()) {
    if (!c->base->structurally_equal(eH))
      throw config_error("joint_sample: cascade base differs from the main-channel ensemble");
    const ComplexMatrix h = sample_channel(eH, rng);
    ComplexMatrix g = sample_rayleigh(c->tail, rng) * h;
    return {h, std::move(g)};
  }
  if (eH.in_dim() != eG.in_dim())
    throw config_error("joint_sample: ensembles disagree on transmit dimension");
  ComplexMatrix h = sample_channel(eH, rng);
  ComplexMatrix g = sample_channel(eG, rng);
  return {std::move(h), std::move(g)};
}

/// Exact law of the channel norm for in-dim-1 ensembles.
inline ScalarNormLaw norm_law(const ChannelEnsemble& e) {
  if (e.in_dim() != 1) throw not_implemented_error("norm_law: only in-dim-1 ensembles");
  if (const auto* d = e.get_if<Deterministic>()) {
    const double n = d->matrix.frobenius_norm();
    ScalarNormLaw law;
    law.ccdf = [n](double a) { return a <= n ? 1.0 : 0.0; };
    law.support_min = n;
    law.support_max = n;
    law.atoms = {n};
    return law;
  }
  if (const auto* f = e.get_if<FiniteSupport>()) {
    std::vector<double> norms;
    norms.reserve(f->points.size());
    for (const auto& p : f->points) norms.push_back(p.frobenius_norm());
    std::vector<double> weights = f->weights;
    ScalarNormLaw law;
    law.ccdf = [norms, weights](double a) {
      double p = 0.0;
      for (std::size_t i = 0; i < norms.size(); ++i)
        if (norms[i] >= a) p += weights[i];
      return p;
    };
    law.support_min = *std::min_element(norms.begin(), norms.end());
    law.support_max = *std::max_element(norms.begin(), norms.end());
    law.atoms = norms;
    std::sort(law.atoms.begin(), law.atoms.end());
    return law;
  }
  if (const auto* r = e.get_if<RayleighIID>()) {
    // ||g||^2 is Erlang with shape N = out_dim and mean N*sigma2, i.e.
    // 2||g||^2/sigma2 is chi-square with 2N degrees of freedom.
    const unsigned n = static_cast<unsigned>(r->out_dim);
    const double sigma2 = r->sigma2;
    ScalarNormLaw law;
    law.ccdf = [n, sigma2](double a) {
      if (a <= 0.0) return 1.0;
      return erlang_ccdf(n, a * a / sigma2);
    };
    law.density = [n, sigma2](double a) {
      if (a <= 0.0) return 0.0;
      const double x = a * a / sigma2;
      return 2.0 * a / sigma2 * std::pow(x, static_cast<double>(n - 1)) * std::exp(-x) /
             factorial(n - 1);
    };
    law.support_min = 0.0;
    return law;
  }
  if (const auto* s = e.get_if<SimomeScenario>())
    return norm_law(ChannelEnsemble(s->eve));
  throw not_implemented_error("norm_law: unsupported ensemble variant");
}

}  // namespace secrecy
