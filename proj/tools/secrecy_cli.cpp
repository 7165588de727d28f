// Command-line front end: scenario configuration, metric estimation, bound
// and ordering reports, and the figure/counterexample drivers. All output is
// CSV with provenance comments (tool version, config hash, seed).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "secrecy/config.hpp"
#include "secrecy/csv.hpp"
#include "secrecy/secrecy.hpp"

namespace {

using namespace secrecy;

struct CliOptions {
  std::string command;
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<double> r;
};

ExperimentConfig load_config(const CliOptions& cli) {
  ExperimentConfig cfg;
  if (!cli.config_path.empty()) {
    std::ifstream in(cli.config_path, std::ios::binary);
    if (!in) throw config_error("config: cannot open '" + cli.config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    cfg = parse_config(text.str());
  }
  // Flag overrides win over config scalars.
  cfg.command = cli.command;
  if (cli.seed) cfg.seed = *cli.seed;
  if (cli.samples) cfg.samples = *cli.samples;
  if (cli.r) cfg.r = *cli.r;
  if (!cli.out_path.empty()) cfg.out_path = cli.out_path;
  return cfg;
}

// Provenance hash covering the config file bytes and every effective scalar,
// so identical invocations stamp identical headers.
std::uint64_t provenance_hash(const ExperimentConfig& cfg) {
  std::ostringstream key;
  key << cfg.raw_text << "|cmd=" << cfg.command << "|seed=" << cfg.seed
      << "|samples=" << cfg.samples << "|r=" << format_sig(cfg.r);
  return fnv1a64(key.str());
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit OutputTarget(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw config_error("output: cannot open '" + path + "' for writing");
    stream = &file;
  }
};

const ChannelEnsemble& require_main(const ExperimentConfig& cfg) {
  if (!cfg.main) throw config_error("config: command '" + cfg.command + "' needs a main ensemble");
  return *cfg.main;
}

const ChannelEnsemble& require_eve(const ExperimentConfig& cfg) {
  if (!cfg.eve) throw config_error("config: command '" + cfg.command + "' needs an eve ensemble");
  return *cfg.eve;
}

const InputDistribution& require_input(const ExperimentConfig& cfg) {
  if (!cfg.input) throw config_error("config: command '" + cfg.command + "' needs an input block");
  return *cfg.input;
}

bool finite_pair(const ChannelEnsemble& eH, const ChannelEnsemble& eG) {
  auto finite = [](const ChannelEnsemble& e) {
    return e.get_if<Deterministic>() != nullptr || e.get_if<FiniteSupport>() != nullptr;
  };
  return finite(eH) && finite(eG);
}

int run_metric(const ExperimentConfig& cfg, MetricKind kind) {
  const auto& eH = require_main(cfg);
  const auto& eG = require_eve(cfg);
  const auto& input = require_input(cfg);
  if (cfg.power_budget) validate_input(input, PowerBudget(*cfg.power_budget), eH.in_dim());
  if (kind == MetricKind::SOP && cfg.r < 0.0)
    throw numeric_domain_error("sop: negative target rate");

  MetricEstimate est;
  est.kind = kind;
  est.seed = cfg.seed;
  if (finite_pair(eH, eG)) {
    est.value = finite_support_metric_exact(eH, eG, input, kind, cfg.r);
    est.stderr_ = 0.0;
    est.n_samples = 0;
  } else if (kind == MetricKind::SOP) {
    est = sop_mc(eH, eG, input, cfg.r, cfg.samples, cfg.seed);
  } else if (kind == MetricKind::ESR) {
    est = esr_mc(eH, eG, input, cfg.samples, cfg.seed);
  } else {
    est = epsr_mc(eH, eG, input, cfg.samples, cfg.seed);
  }

  OutputTarget out(cfg.out_path);
  CsvWriter csv(*out.stream);
  const std::uint64_t hash = provenance_hash(cfg);
  csv.provenance(hash, cfg.seed);
  csv.header({"metric", "value", "stderr", "n", "seed", "scenario_hash"});
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  csv.row({std::string(metric_name(kind)), est.value, est.stderr_, est.n_samples, est.seed,
           std::string(hex)});
  return 0;
}

int run_bounds(const ExperimentConfig& cfg) {
  const auto& eH = require_main(cfg);
  const auto& eG = require_eve(cfg);
  const auto& input = require_input(cfg);
  const auto* gauss = std::get_if<GaussianNonPrecoded>(&input);
  if (!gauss) throw config_error("config: bounds needs a gaussian input (its covariance is K_x)");
  const ComplexMatrix& k_x = gauss->covariance;
  const double p_t = cfg.power_budget ? *cfg.power_budget : k_x.trace_real();

  std::vector<ComplexMatrix> grid = default_mask_grid(k_x);
  grid.insert(grid.end(), cfg.mask_grid.begin(), cfg.mask_grid.end());
  const LowerBoundResult mimome = cs_minus_mimome(eH, eG, k_x, grid, cfg.samples, cfg.seed);

  EsrBounds bounds;
  bounds.lower = mimome.value;
  bounds.lower_stderr = mimome.stderr_;
  bounds.best_mask_index = mimome.best_mask_index;

  std::optional<LowerBoundResult> simome_lower;
  if (eH.in_dim() == 1 && eG.in_dim() == 1) {
    simome_lower = cs_minus_simome(eH, eG, p_t, cfg.samples, cfg.seed);
    bounds.best_power = simome_lower->best_power;
    if (simome_lower->value > bounds.lower) {
      bounds.lower = simome_lower->value;
      bounds.lower_stderr = simome_lower->stderr_;
    }
  }

  const double quad_tol = 1e-8;
  if (finite_pair(eH, eG)) {
    bounds.upper_plain = cs_plus_finite(eH, eG, k_x);
    bounds.upper = *bounds.upper_plain;
  } else if (eH.in_dim() == 1 && eG.in_dim() == 1) {
    const SimomeUpperBounds upper = cs_plus_simome(norm_law(eH), norm_law(eG), p_t, quad_tol);
    bounds.upper_plain = upper.plain;
    bounds.upper_ccdf = upper.ccdf;
    bounds.upper = upper.min_upper();
  } else {
    throw config_error(
        "config: bounds upper variant needs finite supports or scalar-input ensembles");
  }

  OutputTarget out(cfg.out_path);
  CsvWriter csv(*out.stream);
  const std::uint64_t hash = provenance_hash(cfg);
  csv.provenance(hash, cfg.seed);
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  const std::string hash_s(hex);
  csv.header({"quantity", "value", "stderr_or_tolerance", "parameters_hash"});
  csv.row({std::string("cs_minus"), bounds.lower, bounds.lower_stderr, hash_s});
  if (simome_lower)
    csv.row({std::string("cs_minus_best_power"), simome_lower->best_power, 0.0, hash_s});
  if (bounds.upper_plain)
    csv.row({std::string("cs_plus_plain"), *bounds.upper_plain, quad_tol, hash_s});
  if (bounds.upper_ccdf)
    csv.row({std::string("cs_plus_ccdf"), *bounds.upper_ccdf, quad_tol, hash_s});
  csv.row({std::string("cs_plus"), bounds.upper, quad_tol, hash_s});

  if (bounds.lower - 3.0 * bounds.lower_stderr > bounds.upper + 1e-9)
    throw assertion_failure("bounds: lower bound exceeds upper bound beyond noise");
  return 0;
}

int run_ordering(const ExperimentConfig& cfg) {
  const auto& eH = require_main(cfg);
  const auto& eG = require_eve(cfg);
  if (!cfg.ordering_kind) throw config_error("config: ordering needs an ordering_kind field");
  const OrderingVerdict verdict = check_ordering(eH, eG, parse_ordering_kind(*cfg.ordering_kind));

  OutputTarget out(cfg.out_path);
  CsvWriter csv(*out.stream);
  csv.provenance(provenance_hash(cfg), cfg.seed);
  csv.header({"kind", "holds", "witness"});
  csv.row({std::string(ordering_kind_name(verdict.kind)),
           std::string(ordering_holds_name(verdict.holds)), verdict.witness});
  return 0;
}

int run_bpsk_curve(const ExperimentConfig& cfg) {
  OutputTarget out(cfg.out_path);
  CsvWriter csv(*out.stream);
  csv.provenance(provenance_hash(cfg), cfg.seed);
  csv.header({"gamma", "i_bpsk", "mmse"});
  for (int i = 0; i <= 200; ++i) {
    const double gamma = 0.1 * i;
    csv.row({gamma, i_bpsk(gamma), bpsk_mmse(gamma)});
  }
  return 0;
}

int run_fig_sop(const ExperimentConfig& cfg) {
  OutputTarget out(cfg.out_path);
  CsvWriter csv(*out.stream);
  csv.provenance(provenance_hash(cfg), cfg.seed);
  csv.header({"sigma2", "r", "sop_closed", "sop_mc", "mc_stderr"});
  for (const double sigma2 : {0.25, 1.0, 4.0}) {
    SimomeRayleighScenario scenario;
    scenario.h_norm = 5.0;
    scenario.n_e = 2;
    scenario.sigma2 = sigma2;
    scenario.p_t = 3.0;
    const ChannelEnsemble eH = scenario.main_ensemble();
    const ChannelEnsemble eG = scenario.eve_ensemble();
    const InputDistribution input = GaussianNonPrecoded{ComplexMatrix::diagonal({scenario.p_t})};
    for (int i = 0; i <= 160; ++i) {
      const double r = 0.05 * i;
      const double closed = sop_closed_form(scenario, r);
      const MetricEstimate mc = sop_mc(eH, eG, input, r, cfg.samples, cfg.seed);
      csv.row({sigma2, r, closed, mc.value, mc.stderr_});
    }
  }
  return 0;
}

int run_fig_esr(const ExperimentConfig& cfg) {
  // Two-mass eavesdropper: SNR g0 with probability 1/2, erased otherwise;
  // main channel a constant SNR h0 = 3. Exact evaluation, no sampling.
  const double h0 = 3.0;
  OutputTarget out(cfg.out_path);
  CsvWriter csv(*out.stream);
  csv.provenance(provenance_hash(cfg), cfg.seed);
  csv.comment("h0=" + format_sig(h0));
  csv.comment("gaussian_boundary_low=" +
              format_sig((1.0 + h0) * (1.0 + h0) / std::sqrt(2.0) - 1.0));
  csv.comment("gaussian_boundary_high=" + format_sig((1.0 + h0) * (1.0 + h0) - 1.0));
  csv.header({"g0", "esr_gaussian", "esr_bpsk"});
  for (int i = 0; i <= 80; ++i) {
    const double g0 = 0.25 * i;
    const double esr_gaussian =
        scalar_mutual_information(ScalarInputKind::gaussian, 1.0, h0) -
        0.5 * scalar_mutual_information(ScalarInputKind::gaussian, 1.0, g0);
    const double esr_bpsk = i_bpsk(h0) - 0.5 * i_bpsk(g0);
    csv.row({g0, esr_gaussian, esr_bpsk});
  }
  return 0;
}

int run_counterexample(const ExperimentConfig& cfg) {
  const double p_t = cfg.power_budget ? *cfg.power_budget : 3.0;
  const double r = cfg.r > 0.0 ? cfg.r : 0.5;
  const CounterexampleReport report = counterexample_report(p_t, 101, r);

  OutputTarget out(cfg.out_path);
  CsvWriter csv(*out.stream);
  const std::uint64_t hash = provenance_hash(cfg);
  csv.provenance(hash, cfg.seed);
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  const std::string hash_s(hex);
  csv.header({"quantity", "value", "stderr_or_tolerance", "parameters_hash"});
  csv.row({std::string("max_gaussian_esr"), report.max_gaussian_esr, 0.0, hash_s});
  csv.row({std::string("max_beta0_esr"), report.max_beta0_esr, 0.0, hash_s});
  csv.row({std::string("max_min_rate"), report.max_min_rate, 0.0, hash_s});
  csv.row({std::string("an_rate"), report.an_rate, 0.0, hash_s});
  csv.row({std::string("an_sop"), report.an_sop, 0.0, hash_s});
  csv.row({std::string("all_pass"), report.all_pass() ? 1.0 : 0.0, 0.0, hash_s});

  if (!report.all_pass()) {
    std::ostringstream msg;
    msg << "counterexample: assertions failed (max_gaussian_esr=" << report.max_gaussian_esr
        << ", max_beta0_esr=" << report.max_beta0_esr << ", max_min_rate=" << report.max_min_rate
        << ", an_rate=" << report.an_rate << ", an_sop=" << report.an_sop << ")";
    throw assertion_failure(msg.str());
  }
  return 0;
}

int run_isotropic_check(const ExperimentConfig& cfg) {
  RayleighPairScenario scenario;  // degraded 2x2 cascade defaults
  scenario.p_t = cfg.power_budget ? *cfg.power_budget : 2.0;
  scenario.sop_r = cfg.r > 0.0 ? cfg.r : 0.5;
  const IsotropicReport report =
      verify_isotropic_optimality(scenario, 8, cfg.samples, cfg.seed);

  OutputTarget out(cfg.out_path);
  CsvWriter csv(*out.stream);
  csv.provenance(provenance_hash(cfg), cfg.seed);
  csv.header({"label", "diag", "esr", "esr_stderr", "sop", "sop_stderr"});
  auto emit = [&](const std::string& label, const CovarianceTrial& trial) {
    std::string diag;
    for (double d : trial.diag) {
      if (!diag.empty()) diag += ";";
      diag += format_sig(d);
    }
    csv.row({label, diag, trial.esr.value, trial.esr.stderr_,
             trial.sop ? trial.sop->value : 0.0, trial.sop ? trial.sop->stderr_ : 0.0});
  };
  emit("isotropic", report.isotropic);
  for (std::size_t i = 0; i < report.competitors.size(); ++i)
    emit("perturbation_" + std::to_string(i), report.competitors[i]);

  if (!report.esr_not_beaten || !report.sop_not_beaten)
    throw assertion_failure("isotropic-check: a perturbed covariance beat the isotropic one");
  return 0;
}

int dispatch(const CliOptions& cli) {
  const ExperimentConfig cfg = load_config(cli);
  if (cli.command == "sop") return run_metric(cfg, MetricKind::SOP);
  if (cli.command == "esr") return run_metric(cfg, MetricKind::ESR);
  if (cli.command == "epsr") return run_metric(cfg, MetricKind::EPSR);
  if (cli.command == "bounds") return run_bounds(cfg);
  if (cli.command == "ordering") return run_ordering(cfg);
  if (cli.command == "bpsk-curve") return run_bpsk_curve(cfg);
  if (cli.command == "fig-sop") return run_fig_sop(cfg);
  if (cli.command == "fig-esr") return run_fig_esr(cfg);
  if (cli.command == "counterexample") return run_counterexample(cfg);
  if (cli.command == "isotropic-check") return run_isotropic_check(cfg);
  throw config_error("unknown command '" + cli.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wiretap-channel secrecy metrics: estimation, bounds, figure drivers"};
  app.require_subcommand(1);

  CliOptions cli;
  for (const char* name : {"sop", "esr", "epsr", "bounds", "ordering", "bpsk-curve", "fig-sop",
                           "fig-esr", "counterexample", "isotropic-check"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", cli.config_path, "scenario description file (JSON)");
    sub->add_option("--seed", cli.seed, "RNG seed override");
    sub->add_option("--samples", cli.samples, "Monte Carlo sample count override");
    sub->add_option("--out", cli.out_path, "output CSV path (default: stdout)");
    sub->add_option("--r", cli.r, "target secrecy rate in bits");
    sub->callback([&cli, name] { cli.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(cli);
  } catch (const secrecy::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const secrecy::not_implemented_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const secrecy::assertion_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const secrecy::invariant_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const secrecy::numeric_domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
