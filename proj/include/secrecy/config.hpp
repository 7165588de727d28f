#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "secrecy/analysis.hpp"
#include "secrecy/channels.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/inputs.hpp"

namespace secrecy {

/// Parsed experiment description. Scalar fields may be overridden by CLI
/// flags after parsing.
struct ExperimentConfig {
  std::string command;
  std::optional<ChannelEnsemble> main;
  std::optional<ChannelEnsemble> eve;
  std::optional<InputDistribution> input;
  std::optional<double> power_budget;
  std::vector<ComplexMatrix> mask_grid;  // extra C_S^- candidates
  std::optional<std::string> ordering_kind;
  double r = 0.0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string raw_text;  // exact file bytes, hashed into every CSV header
};

namespace cfg {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw config_error("config: " + path + ": " + what);
}

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path + "." + key, "missing field");
  return j.at(key);
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline ComplexMatrix matrix(const json& j, const std::string& path) {
  const auto rows = static_cast<std::size_t>(number(require(j, "rows", path), path + ".rows"));
  const auto cols = static_cast<std::size_t>(number(require(j, "cols", path), path + ".cols"));
  const json& entries = require(j, "entries", path);
  if (!entries.is_array() || entries.size() != rows * cols)
    fail(path + ".entries", "expected " + std::to_string(rows * cols) + " [re, im] pairs");
  ComplexMatrix m(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    const std::string epath = path + ".entries[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2) fail(epath, "expected [re, im]");
    m(k / cols, k % cols) = cplx{number(e[0], epath), number(e[1], epath)};
  }
  return m;
}

inline RayleighIID rayleigh(const json& j, const std::string& path) {
  RayleighIID r;
  r.out_dim = static_cast<std::size_t>(number(require(j, "out_dim", path), path + ".out_dim"));
  r.in_dim = static_cast<std::size_t>(number(require(j, "in_dim", path), path + ".in_dim"));
  r.sigma2 = number(require(j, "sigma2", path), path + ".sigma2");
  return r;
}

inline ChannelEnsemble ensemble(const json& j, const std::string& path) {
  const json& v = require(j, "variant", path);
  if (!v.is_string()) fail(path + ".variant", "expected a string");
  const std::string variant = v.get<std::string>();
  if (variant == "deterministic")
    return ChannelEnsemble(Deterministic{matrix(require(j, "matrix", path), path + ".matrix")});
  if (variant == "finite_support") {
    const json& pts = require(j, "points", path);
    const json& wts = require(j, "weights", path);
    if (!pts.is_array() || !wts.is_array() || pts.size() != wts.size())
      fail(path, "points and weights must be arrays of equal length");
    FiniteSupport f;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      f.points.push_back(matrix(pts[i], path + ".points[" + std::to_string(i) + "]"));
      f.weights.push_back(number(wts[i], path + ".weights[" + std::to_string(i) + "]"));
    }
    return ChannelEnsemble(std::move(f));
  }
  if (variant == "rayleigh_iid") return ChannelEnsemble(rayleigh(j, path));
  if (variant == "degraded_cascade") {
    DegradedCascade c;
    c.base = std::make_shared<ChannelEnsemble>(ensemble(require(j, "base", path), path + ".base"));
    c.tail = rayleigh(require(j, "tail", path), path + ".tail");
    return ChannelEnsemble(std::move(c));
  }
  if (variant == "simome") {
    SimomeScenario s;
    s.h_norm = number(require(j, "h_norm", path), path + ".h_norm");
    s.eve = rayleigh(require(j, "eve", path), path + ".eve");
    return ChannelEnsemble(std::move(s));
  }
  fail(path + ".variant", "unknown ensemble variant '" + variant + "'");
}

inline InputDistribution input(const json& j, const std::string& path) {
  const json& k = require(j, "kind", path);
  if (!k.is_string()) fail(path + ".kind", "expected a string");
  const std::string kind = k.get<std::string>();
  if (kind == "gaussian")
    return GaussianNonPrecoded{matrix(require(j, "covariance", path), path + ".covariance")};
  if (kind == "bpsk") return BpskScalar{number(require(j, "power", path), path + ".power")};
  if (kind == "gaussian_masked")
    return GaussianWithMask{matrix(require(j, "k_info", path), path + ".k_info"),
                            matrix(require(j, "k_mask", path), path + ".k_mask")};
  fail(path + ".kind", "unknown input kind '" + kind + "'");
}

}  // namespace cfg

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string("config: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) cfg::fail("$", "top level must be an object");

  ExperimentConfig c;
  c.raw_text = text;
  if (j.contains("command")) {
    if (!j["command"].is_string()) cfg::fail("command", "expected a string");
    c.command = j["command"].get<std::string>();
  }
  if (j.contains("main")) c.main = cfg::ensemble(j["main"], "main");
  if (j.contains("eve")) c.eve = cfg::ensemble(j["eve"], "eve");
  if (j.contains("input")) c.input = cfg::input(j["input"], "input");
  if (j.contains("power_budget"))
    c.power_budget = cfg::number(j["power_budget"], "power_budget");
  if (j.contains("mask_grid")) {
    const auto& grid = j["mask_grid"];
    if (!grid.is_array()) cfg::fail("mask_grid", "expected an array of matrices");
    for (std::size_t i = 0; i < grid.size(); ++i)
      c.mask_grid.push_back(cfg::matrix(grid[i], "mask_grid[" + std::to_string(i) + "]"));
  }
  if (j.contains("ordering_kind")) {
    if (!j["ordering_kind"].is_string()) cfg::fail("ordering_kind", "expected a string");
    c.ordering_kind = j["ordering_kind"].get<std::string>();
  }
  if (j.contains("r")) c.r = cfg::number(j["r"], "r");
  if (j.contains("samples"))
    c.samples = static_cast<std::uint64_t>(cfg::number(j["samples"], "samples"));
  if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(cfg::number(j["seed"], "seed"));
  if (j.contains("out")) {
    if (!j["out"].is_string()) cfg::fail("out", "expected a string");
    c.out_path = j["out"].get<std::string>();
  }
  return c;
}

inline OrderingKind parse_ordering_kind(const std::string& name) {
  if (name == "degraded") return OrderingKind::degraded;
  if (name == "uniformly-less-noisy") return OrderingKind::uniformly_less_noisy;
  if (name == "ccdf-dominance") return OrderingKind::ccdf_dominance;
  throw config_error("config: ordering_kind: unknown kind '" + name + "'");
}

}  // namespace secrecy
