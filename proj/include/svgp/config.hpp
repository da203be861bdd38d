#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "svgp/inducing.hpp"
#include "svgp/kernel.hpp"
#include "svgp/spectrum.hpp"
#include "svgp/truth.hpp"

namespace svgp {

struct SpectrumConfig {
  std::string kind = "polynomial";  // polynomial | exponential | exponential_rescaled
  double alpha = 0.5;
  double tau = 1.0;
  bool tau_auto = false;  // tau = rescaling_tau(n, alpha, d), resolved per n
  int d = 1;
  double scale = 1.0;
};

struct TruthConfig {
  std::string kind = "sparse_thirds";  // sparse_thirds | heavy_tail | smooth_power | zero
  double beta = 0.5;
  double p = 0.0;
  double q = 0.0;
  long j_max = 10000;
};

struct MRule {
  std::string kind = "power";  // fixed | power | effective_dim
  long value = 0;              // fixed
  double exponent = 0.5;       // power: m = ceil(n^exponent - 1e-9)
};

struct ExperimentConfig {
  std::string name = "run";
  SpectrumConfig spectrum;
  TruthConfig truth;
  double sigma = 0.1;
  std::vector<InducingKind> strategies = {InducingKind::kPopulationSpectral};
  std::vector<long> n_grid = {500};
  MRule m_rule;
  double gamma = 0.05;
  double blowup = 2.0;
  long replicates = 200;
  std::uint64_t base_seed = 20260815;
  long mc_samples = 100000;
  long quad_points = 4096;
  long radius_tail_terms = 512;
  Truncation truncation;
  long grid_points = 512;
  std::vector<long> figure_m = {30, 60};
  int threads = 0;  // 0 = hardware concurrency
};

// Strict parsing: unknown keys anywhere raise ConfigError naming the key;
// values are range-checked on materialization.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

// Full echo with every default materialized (reproducible from the sidecar).
nlohmann::json config_to_json(const ExperimentConfig& config);

Spectrum make_spectrum(const ExperimentConfig& config, long n);
TrueFunction make_truth(const ExperimentConfig& config);
long resolve_m(const ExperimentConfig& config, const Spectrum& spectrum, long n);

}  // namespace svgp
