#include "svgp/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "svgp/errors.hpp"
#include "svgp/theory.hpp"

namespace svgp {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& section,
                    const std::set<std::string>& allowed) {
  if (!j.is_object())
    throw ConfigError(section + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      throw ConfigError(section + ": unknown key \"" + item.key() + "\"");
  }
}

double get_number(const json& j, const std::string& section, const std::string& key,
                  double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw ConfigError(section + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

long get_integer(const json& j, const std::string& section, const std::string& key,
                 long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer())
    throw ConfigError(section + "." + key + ": expected an integer");
  return j.at(key).get<long>();
}

std::string get_string(const json& j, const std::string& section,
                       const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string())
    throw ConfigError(section + "." + key + ": expected a string");
  return j.at(key).get<std::string>();
}

SpectrumConfig parse_spectrum(const json& j) {
  reject_unknown(j, "spectrum", {"kind", "alpha", "tau", "d", "scale"});
  SpectrumConfig out;
  out.kind = get_string(j, "spectrum", "kind", out.kind);
  if (out.kind != "polynomial" && out.kind != "exponential" &&
      out.kind != "exponential_rescaled")
    throw ConfigError("spectrum.kind: unknown kind \"" + out.kind + "\"");
  out.alpha = get_number(j, "spectrum", "alpha", out.alpha);
  if (j.contains("tau")) {
    if (j.at("tau").is_string()) {
      if (j.at("tau").get<std::string>() != "auto")
        throw ConfigError("spectrum.tau: expected a number or \"auto\"");
      out.tau_auto = true;
    } else if (j.at("tau").is_number()) {
      out.tau = j.at("tau").get<double>();
    } else {
      throw ConfigError("spectrum.tau: expected a number or \"auto\"");
    }
  }
  out.d = static_cast<int>(get_integer(j, "spectrum", "d", out.d));
  out.scale = get_number(j, "spectrum", "scale", out.scale);
  return out;
}

TruthConfig parse_truth(const json& j) {
  reject_unknown(j, "truth", {"kind", "beta", "p", "q", "j_max"});
  TruthConfig out;
  out.kind = get_string(j, "truth", "kind", out.kind);
  if (out.kind != "sparse_thirds" && out.kind != "heavy_tail" &&
      out.kind != "smooth_power" && out.kind != "zero")
    throw ConfigError("truth.kind: unknown kind \"" + out.kind + "\"");
  out.beta = get_number(j, "truth", "beta", out.beta);
  out.p = get_number(j, "truth", "p", out.p);
  out.q = get_number(j, "truth", "q", out.q);
  out.j_max = get_integer(j, "truth", "j_max", out.j_max);
  return out;
}

MRule parse_m_rule(const json& j) {
  reject_unknown(j, "m_rule", {"kind", "value", "exponent"});
  MRule out;
  out.kind = get_string(j, "m_rule", "kind", out.kind);
  if (out.kind != "fixed" && out.kind != "power" && out.kind != "effective_dim")
    throw ConfigError("m_rule.kind: unknown kind \"" + out.kind +
                      "\" (expected fixed | power | effective_dim)");
  out.value = get_integer(j, "m_rule", "value", out.value);
  out.exponent = get_number(j, "m_rule", "exponent", out.exponent);
  if (out.kind == "fixed" && out.value < 1)
    throw ConfigError("m_rule.value: fixed rule needs value >= 1");
  if (out.kind == "power" && (!(out.exponent > 0.0) || !(out.exponent <= 1.0)))
    throw ConfigError("m_rule.exponent: must be in (0, 1]");
  return out;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  reject_unknown(j, "config",
                 {"name", "spectrum", "truth", "sigma", "strategies", "n_grid",
                  "m_rule", "gamma", "blowup", "replicates", "base_seed",
                  "mc_samples", "quad_points", "radius_tail_terms", "truncation",
                  "grid_points", "figure_m", "threads"});
  ExperimentConfig out;
  out.name = get_string(j, "config", "name", out.name);
  if (j.contains("spectrum")) out.spectrum = parse_spectrum(j.at("spectrum"));
  if (j.contains("truth")) out.truth = parse_truth(j.at("truth"));
  out.sigma = get_number(j, "config", "sigma", out.sigma);
  if (!(out.sigma > 0.0)) throw ConfigError("sigma: must be > 0");
  if (j.contains("strategies")) {
    if (!j.at("strategies").is_array())
      throw ConfigError("strategies: expected an array of strings");
    out.strategies.clear();
    for (const auto& s : j.at("strategies")) {
      if (!s.is_string()) throw ConfigError("strategies: expected strings");
      out.strategies.push_back(inducing_kind_from_string(s.get<std::string>()));
    }
    if (out.strategies.empty()) throw ConfigError("strategies: must not be empty");
  }
  if (j.contains("n_grid")) {
    if (!j.at("n_grid").is_array()) throw ConfigError("n_grid: expected an array");
    out.n_grid.clear();
    for (const auto& v : j.at("n_grid")) {
      if (!v.is_number_integer()) throw ConfigError("n_grid: expected integers");
      const long n = v.get<long>();
      if (n < 1) throw ConfigError("n_grid: entries must be >= 1");
      out.n_grid.push_back(n);
    }
    if (out.n_grid.empty()) throw ConfigError("n_grid: must not be empty");
  }
  if (j.contains("m_rule")) out.m_rule = parse_m_rule(j.at("m_rule"));
  out.gamma = get_number(j, "config", "gamma", out.gamma);
  if (!(out.gamma > 0.0) || !(out.gamma < 1.0))
    throw ConfigError("gamma: must be in (0, 1)");
  out.blowup = get_number(j, "config", "blowup", out.blowup);
  if (!(out.blowup > 0.0)) throw ConfigError("blowup: must be > 0");
  out.replicates = get_integer(j, "config", "replicates", out.replicates);
  if (out.replicates < 1) throw ConfigError("replicates: must be >= 1");
  if (j.contains("base_seed")) {
    if (!j.at("base_seed").is_number_integer())
      throw ConfigError("base_seed: expected an integer");
    out.base_seed = j.at("base_seed").get<std::uint64_t>();
  }
  out.mc_samples = get_integer(j, "config", "mc_samples", out.mc_samples);
  out.quad_points = get_integer(j, "config", "quad_points", out.quad_points);
  if (out.quad_points < 1) throw ConfigError("quad_points: must be >= 1");
  out.radius_tail_terms =
      get_integer(j, "config", "radius_tail_terms", out.radius_tail_terms);
  if (out.radius_tail_terms < 0) throw ConfigError("radius_tail_terms: must be >= 0");
  if (j.contains("truncation")) {
    reject_unknown(j.at("truncation"), "truncation", {"tail_tol", "max_terms"});
    out.truncation.tail_tol =
        get_number(j.at("truncation"), "truncation", "tail_tol", out.truncation.tail_tol);
    out.truncation.max_terms =
        get_integer(j.at("truncation"), "truncation", "max_terms", out.truncation.max_terms);
  }
  out.grid_points = get_integer(j, "config", "grid_points", out.grid_points);
  if (out.grid_points < 2) throw ConfigError("grid_points: must be >= 2");
  if (j.contains("figure_m")) {
    if (!j.at("figure_m").is_array()) throw ConfigError("figure_m: expected an array");
    out.figure_m.clear();
    for (const auto& v : j.at("figure_m")) {
      if (!v.is_number_integer()) throw ConfigError("figure_m: expected integers");
      out.figure_m.push_back(v.get<long>());
    }
    if (out.figure_m.empty()) throw ConfigError("figure_m: must not be empty");
  }
  out.threads = static_cast<int>(get_integer(j, "config", "threads", out.threads));
  if (out.threads < 0) throw ConfigError("threads: must be >= 0");
  return out;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not readable: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return config_from_json(j);
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  json spectrum{{"kind", c.spectrum.kind}, {"alpha", c.spectrum.alpha},
                {"d", c.spectrum.d},       {"scale", c.spectrum.scale}};
  if (c.spectrum.tau_auto)
    spectrum["tau"] = "auto";
  else
    spectrum["tau"] = c.spectrum.tau;
  json truth{{"kind", c.truth.kind},
             {"beta", c.truth.beta},
             {"p", c.truth.p},
             {"q", c.truth.q},
             {"j_max", c.truth.j_max}};
  json strategies = json::array();
  for (InducingKind kind : c.strategies) strategies.push_back(to_string(kind));
  return json{{"name", c.name},
              {"spectrum", spectrum},
              {"truth", truth},
              {"sigma", c.sigma},
              {"strategies", strategies},
              {"n_grid", c.n_grid},
              {"m_rule",
               {{"kind", c.m_rule.kind},
                {"value", c.m_rule.value},
                {"exponent", c.m_rule.exponent}}},
              {"gamma", c.gamma},
              {"blowup", c.blowup},
              {"replicates", c.replicates},
              {"base_seed", c.base_seed},
              {"mc_samples", c.mc_samples},
              {"quad_points", c.quad_points},
              {"radius_tail_terms", c.radius_tail_terms},
              {"truncation",
               {{"tail_tol", c.truncation.tail_tol},
                {"max_terms", c.truncation.max_terms}}},
              {"grid_points", c.grid_points},
              {"figure_m", c.figure_m},
              {"threads", c.threads}};
}

Spectrum make_spectrum(const ExperimentConfig& config, long n) {
  const SpectrumConfig& s = config.spectrum;
  if (s.kind == "polynomial") return Spectrum::polynomial(s.alpha, s.d, s.scale);
  const double tau = s.tau_auto ? rescaling_tau(n, s.alpha, s.d) : s.tau;
  if (s.kind == "exponential") return Spectrum::exponential(tau, s.d, s.scale);
  return Spectrum::exponential_rescaled(tau, s.scale);
}

TrueFunction make_truth(const ExperimentConfig& config) {
  const TruthConfig& t = config.truth;
  if (t.kind == "zero") return TrueFunction::zero();
  if (t.kind == "sparse_thirds") return TrueFunction::sparse_thirds(t.beta, t.j_max);
  if (t.kind == "heavy_tail") {
    if (config.m_rule.kind != "power")
      throw ConfigError(
          "truth.kind heavy_tail: requires m_rule.kind \"power\" (the admissible "
          "band for p depends on the exponent r)");
    return TrueFunction::heavy_tail(t.p, config.m_rule.exponent, t.beta,
                                    config.spectrum.d, t.j_max);
  }
  // smooth_power: band check needs the prior smoothness
  if (config.spectrum.kind != "polynomial")
    throw ConfigError("truth.kind smooth_power: requires a polynomial spectrum "
                      "(band check uses spectrum.alpha)");
  return TrueFunction::smooth_power(t.q, config.spectrum.alpha, t.beta,
                                    config.spectrum.d, t.j_max);
}

long resolve_m(const ExperimentConfig& config, const Spectrum& spectrum, long n) {
  const MRule& rule = config.m_rule;
  long m = 0;
  if (rule.kind == "fixed") {
    m = rule.value;
  } else if (rule.kind == "power") {
    m = static_cast<long>(
        std::ceil(std::pow(static_cast<double>(n), rule.exponent) - 1e-9));
  } else {
    m = effective_dim(spectrum, n);
  }
  if (m < 1) throw ConfigError("m_rule: resolved m = " + std::to_string(m) +
                               " at n = " + std::to_string(n) + "; need m >= 1");
  return m;
}

}  // namespace svgp
