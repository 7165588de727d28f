#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>

#include "secrecy/analysis.hpp"
#include "secrecy/rng.hpp"

using namespace secrecy;

namespace {

ComplexMatrix scalar(double v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

ComplexMatrix row2(double a, double b) {
  ComplexMatrix m(1, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  return m;
}

// The two-antenna pair used throughout: known main channel (1, 0), two-mass
// eavesdropper (+-1, 1).
const ChannelEnsemble ce_main{Deterministic{row2(1.0, 0.0)}};
const ChannelEnsemble ce_eve{FiniteSupport{{row2(1.0, 1.0), row2(-1.0, 1.0)}, {0.5, 0.5}}};

}  // namespace

TEST_CASE("lower bound with an empty grid reduces to the plain rate") {
  const ComplexMatrix k_x = ComplexMatrix::diagonal({1.5, 1.5});
  const LowerBoundResult bound = cs_minus_mimome(ce_main, ce_eve, k_x, {}, 1000, 1);
  const double plain =
      finite_support_metric_exact(ce_main, ce_eve, GaussianNonPrecoded{k_x}, MetricKind::ESR);
  CHECK(bound.value == Catch::Approx(plain).margin(1e-12));
  CHECK(bound.stderr_ == 0.0);
  CHECK(bound.best_mask_index == 0);
}

TEST_CASE("lower bound is zero when both receivers share the ensemble") {
  const ComplexMatrix k_x = ComplexMatrix::diagonal({1.0, 1.0});
  const LowerBoundResult bound =
      cs_minus_mimome(ce_eve, ce_eve, k_x, default_mask_grid(k_x), 1000, 1);
  CHECK(bound.value == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("lower bound reaches the artificial-noise rate on the two-antenna pair") {
  const ComplexMatrix k_x = ComplexMatrix::diagonal({1.5, 1.5});
  const LowerBoundResult bound =
      cs_minus_mimome(ce_main, ce_eve, k_x, default_mask_grid(k_x), 1000, 1);
  // The mask diag(0, 1.5) is in the default grid and realizes log2(25/16).
  CHECK(bound.value >= std::log2(25.0 / 16.0) - 1e-9);
}

TEST_CASE("infeasible masks are rejected") {
  const ComplexMatrix k_x = ComplexMatrix::diagonal({1.0, 1.0});
  CHECK_THROWS_AS(
      cs_minus_mimome(ce_main, ce_eve, k_x, {ComplexMatrix::diagonal({2.0, 0.0})}, 100, 1),
      config_error);
  CHECK_THROWS_AS(
      cs_minus_mimome(ce_main, ce_eve, k_x, {ComplexMatrix::diagonal({-0.1, 0.0})}, 100, 1),
      config_error);
}

TEST_CASE("default mask grid members are feasible") {
  const ComplexMatrix k_x = ComplexMatrix::diagonal({1.0, 2.0});
  for (const auto& m : default_mask_grid(k_x)) {
    CHECK(is_psd(m));
    CHECK(is_psd(k_x - m));
  }
}

TEST_CASE("exact upper bound over a finite support") {
  const ComplexMatrix k_x = ComplexMatrix::diagonal({1.5, 1.5});
  // Identical laws: every density difference vanishes.
  CHECK(cs_plus_finite(ce_eve, ce_eve, k_x) == Catch::Approx(0.0).margin(1e-12));

  // Disjoint supports: full positive part, i.e. the main channel's average.
  const double full = cs_plus_finite(ce_main, ce_eve, k_x);
  CHECK(full == Catch::Approx(std::log2(1.0 + 1.5)).margin(1e-10));

  const ChannelEnsemble rayleigh{RayleighIID{2, 2, 1.0}};
  CHECK_THROWS_AS(cs_plus_finite(ce_main, rayleigh, k_x), config_error);
}

TEST_CASE("upper bound dominates the exact rate on random finite pairs") {
  RngStream rng(41, 0);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix p1(2, 2), p2(2, 2), q1(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        p1(i, j) = rng.complex_gaussian(1.0);
        p2(i, j) = rng.complex_gaussian(1.0);
        q1(i, j) = rng.complex_gaussian(0.5);
      }
    const ChannelEnsemble eH{FiniteSupport{{p1, p2}, {0.4, 0.6}}};
    const ChannelEnsemble eG{FiniteSupport{{q1}, {1.0}}};
    const ComplexMatrix k_x = ComplexMatrix::diagonal({1.0, 1.0});
    const double exact =
        finite_support_metric_exact(eH, eG, GaussianNonPrecoded{k_x}, MetricKind::ESR);
    CHECK(cs_plus_finite(eH, eG, k_x) >= exact - 1e-10);
  }
}

TEST_CASE("scalar-law upper bounds vanish for identical laws") {
  const ScalarNormLaw law = norm_law(ChannelEnsemble{RayleighIID{2, 1, 1.0}});
  const SimomeUpperBounds upper = cs_plus_simome(law, law, 3.0);
  REQUIRE(upper.plain.has_value());
  CHECK(std::abs(*upper.plain) < 1e-7);
  CHECK(std::abs(upper.ccdf) < 1e-7);
}

TEST_CASE("ccdf upper bound respects the capacity cap for a dominated eavesdropper") {
  // Deterministic ||h|| = 2 against a weak Rayleigh eavesdropper: the bound
  // integrand is the derivative of log2(1 + P a^2) times a CCDF gap <= 1, so
  // the integral cannot exceed log2(1 + P h0^2).
  const double p_t = 3.0;
  const ScalarNormLaw lawH = norm_law(ChannelEnsemble{Deterministic{scalar(2.0)}});
  const ScalarNormLaw lawG = norm_law(ChannelEnsemble{RayleighIID{1, 1, 0.2}});
  const SimomeUpperBounds upper = cs_plus_simome(lawH, lawG, p_t);
  CHECK_FALSE(upper.plain.has_value());  // deterministic law has no density
  CHECK(upper.ccdf <= std::log2(1.0 + p_t * 4.0) + 1e-6);
  CHECK(upper.ccdf > 0.0);
  CHECK(upper.min_upper() == upper.ccdf);
}

TEST_CASE("scalar lower bound search") {
  // Point-mass eavesdropper dominating the main channel: no positive rate at
  // any power split, best bound found near P = 0.
  const ChannelEnsemble weak_h{Deterministic{scalar(1.0)}};
  const ChannelEnsemble strong_g{Deterministic{scalar(2.0)}};
  const LowerBoundResult dominated = cs_minus_simome(weak_h, strong_g, 3.0, 1000, 1);
  CHECK(dominated.value <= 1e-9);
  CHECK(dominated.value >= -1e-9);  // P = 0 yields exactly zero

  // Full power is always scanned, so the bound dominates the plain rate.
  const ChannelEnsemble eH{FiniteSupport{{scalar(2.0), scalar(3.0)}, {0.5, 0.5}}};
  const ChannelEnsemble eG{FiniteSupport{{scalar(0.5), scalar(1.0)}, {0.5, 0.5}}};
  const double p_t = 2.0;
  const LowerBoundResult bound = cs_minus_simome(eH, eG, p_t, 1000, 1);
  const double plain = finite_support_metric_exact(eH, eG, GaussianNonPrecoded{scalar(p_t)},
                                                   MetricKind::ESR);
  CHECK(bound.value >= plain - 1e-9);
  CHECK(bound.best_power >= 0.0);
  CHECK(bound.best_power <= p_t);

  const ChannelEnsemble wide{RayleighIID{2, 2, 1.0}};
  CHECK_THROWS_AS(cs_minus_simome(wide, wide, 1.0, 100, 1), config_error);
}

TEST_CASE("degraded order holds structurally for cascades") {
  auto base = std::make_shared<ChannelEnsemble>(RayleighIID{2, 1, 1.0});
  const ChannelEnsemble eH{RayleighIID{2, 1, 1.0}};
  const ChannelEnsemble eG{DegradedCascade{base, RayleighIID{2, 2, 0.5}}};

  const OrderingVerdict degraded = check_ordering(eH, eG, OrderingKind::degraded);
  CHECK(degraded.holds == OrderingHolds::yes);

  const OrderingVerdict uln = check_ordering(eH, eG, OrderingKind::uniformly_less_noisy);
  CHECK(uln.holds == OrderingHolds::yes);

  // Without the cascade structure the degraded check cannot decide.
  const ChannelEnsemble independent{RayleighIID{2, 1, 0.5}};
  CHECK(check_ordering(eH, independent, OrderingKind::degraded).holds ==
        OrderingHolds::undecided);
}

TEST_CASE("uniformly-less-noisy on scalar finite supports") {
  const ChannelEnsemble eH{FiniteSupport{{scalar(2.0), scalar(3.0)}, {0.5, 0.5}}};
  const ChannelEnsemble eG{FiniteSupport{{scalar(1.0), scalar(1.5)}, {0.5, 0.5}}};
  const OrderingVerdict yes = check_ordering(eH, eG, OrderingKind::uniformly_less_noisy);
  CHECK(yes.holds == OrderingHolds::yes);

  const ChannelEnsemble eH2{FiniteSupport{{scalar(1.0), scalar(3.0)}, {0.5, 0.5}}};
  const ChannelEnsemble eG2{Deterministic{scalar(2.0)}};
  const OrderingVerdict no = check_ordering(eH2, eG2, OrderingKind::uniformly_less_noisy);
  CHECK(no.holds == OrderingHolds::no);
  CHECK_FALSE(no.witness.empty());

  const OrderingVerdict ccdf = check_ordering(eH2, eG2, OrderingKind::ccdf_dominance);
  CHECK(ccdf.holds == OrderingHolds::no);
  CHECK_FALSE(ccdf.witness.empty());
}

TEST_CASE("ccdf dominance on rayleigh laws with ordered variances") {
  const ChannelEnsemble eH{RayleighIID{2, 1, 1.0}};
  const ChannelEnsemble eG{RayleighIID{2, 1, 0.5}};
  CHECK(check_ordering(eH, eG, OrderingKind::ccdf_dominance).holds == OrderingHolds::yes);
  CHECK(check_ordering(eG, eH, OrderingKind::ccdf_dominance).holds == OrderingHolds::no);

  // Multi-antenna-input ensembles are beyond the implemented conditions.
  const ChannelEnsemble wide{RayleighIID{2, 2, 1.0}};
  CHECK(check_ordering(wide, wide, OrderingKind::ccdf_dominance).holds ==
        OrderingHolds::undecided);
}

TEST_CASE("isotropic optimality smoke run") {
  RayleighPairScenario scenario;
  scenario.sop_r = 0.5;
  const IsotropicReport report = verify_isotropic_optimality(scenario, 2, 5000, 3);
  CHECK(report.competitors.size() == 2);
  CHECK(report.isotropic.diag.size() == 2);
  CHECK(report.isotropic.diag[0] == Catch::Approx(1.0));
  REQUIRE(report.isotropic.sop.has_value());
  for (const auto& comp : report.competitors) {
    CHECK(comp.diag[0] + comp.diag[1] == Catch::Approx(scenario.p_t).margin(1e-12));
    CHECK(comp.esr.n_samples == 5000);
  }
}

TEST_CASE("counterexample report") {
  const CounterexampleReport report = counterexample_report(3.0, 21, 0.5);
  CHECK(report.beta0_esr_nonpositive);
  CHECK(report.min_rate_nonpositive);
  CHECK(report.an_rate == Catch::Approx(std::log2(25.0 / 16.0)).margin(1e-9));
  CHECK(report.an_sop == 0.0);
  CHECK(report.an_beats_every_gaussian);
  CHECK(report.all_pass());

  // Correlated covariances buy a small positive ESR (the eavesdropper's two
  // realizations average a smaller log-SNR), but far below the masked input.
  CHECK(report.max_gaussian_esr > 0.0);
  CHECK(report.max_gaussian_esr < 0.12);
  CHECK(report.max_gaussian_esr < report.an_rate);
  // Hand witness at a = 2, beta = sqrt(2): ESR = log2(3) - (1/2) log2(8).
  const double witness =
      0.5 * (gaussian_secrecy_rate(row2(1.0, 0.0), row2(1.0, 1.0),
                                   std::get<GaussianNonPrecoded>(
                                       counterexample_gaussian_input(2.0, std::sqrt(2.0), 3.0))
                                       .covariance) +
             gaussian_secrecy_rate(row2(1.0, 0.0), row2(-1.0, 1.0),
                                   std::get<GaussianNonPrecoded>(
                                       counterexample_gaussian_input(2.0, std::sqrt(2.0), 3.0))
                                       .covariance));
  CHECK(witness == Catch::Approx(std::log2(3.0) - 1.5).margin(1e-9));
  CHECK(witness > 0.0);

  // Every grid point obeys the closed form log2(1+a) - (1/2)log2((1+P)^2 - 4 b^2).
  for (const auto& point : report.grid) {
    const double expected =
        std::log2(1.0 + point.a) - 0.5 * std::log2(16.0 - 4.0 * point.beta * point.beta);
    CHECK(point.esr == Catch::Approx(expected).margin(1e-9));
  }

  CHECK_THROWS_AS(counterexample_report(0.0, 11), config_error);
  CHECK_THROWS_AS(counterexample_report(3.0, 1), config_error);
}

TEST_CASE("counterexample fixed point: a = 1.5, beta = 0") {
  const CounterexampleReport report = counterexample_report(3.0, 3, 0.5);
  // Resolution 3 puts a grid point exactly at a = 1.5, beta = 0.
  bool found = false;
  for (const auto& point : report.grid) {
    if (std::abs(point.a - 1.5) < 1e-12 && std::abs(point.beta) < 1e-12) {
      CHECK(point.esr == Catch::Approx(std::log2(2.5) - 2.0).margin(1e-12));
      found = true;
    }
  }
  CHECK(found);
}
