#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "svgp/config.hpp"

namespace svgp {

struct ResultRow {
  long n = 0;
  long m = 0;
  std::string strategy;
  long replicate = 0;  // -1 marks a per-cell summary row
  std::uint64_t seed = 0;
  double mse = 0.0;
  double rho = 0.0;
  double covered_m1 = 0.0;
  double covered_blowup = 0.0;
  double spread = 0.0;
  double B_n = 0.0;
  double W_n = 0.0;
  double V_n = 0.0;
  double R_n = 0.0;
  double elbo = 0.0;
  double wall_ms = 0.0;
  std::string error;  // non-empty: replicate failed, metrics are NaN
};

struct CellSummary {
  long n = 0;
  long m = 0;
  std::string strategy;
  double coverage_m1 = 0.0;
  double coverage_blowup = 0.0;
  double mean_mse = 0.0;
  double mean_rho = 0.0;
  double mean_spread = 0.0;
  double mean_elbo = 0.0;
  long failures = 0;
};

struct SlopeFit {
  std::string strategy;
  double slope = 0.0;             // least squares of log(mean mse) on log n
  double predicted_mse_exponent = 0.0;  // 2 x norm-rate exponent
};

struct FigureBand {
  std::string strategy;  // "exact" for the reference posterior
  long m = 0;            // 0 for exact
  Eigen::VectorXd x, mean, sd, lower, upper;
};

struct RunOutput {
  std::vector<ResultRow> rows;
  std::vector<CellSummary> cells;
  std::vector<SlopeFit> slopes;    // contraction runs
  std::vector<FigureBand> bands;   // figure runs
  Eigen::VectorXd truth_values;    // figure runs: f0 on the grid
  std::vector<std::filesystem::path> files;
};

// Each runner writes a metadata sidecar ({name}_meta.json) before any result
// file, then the CSVs listed in RunOutput::files, and finally refreshes the
// sidecar with the collected error list. Reruns with an identical config are
// byte-identical except the wall_time_ms column.
// Single fit on the first (n, strategy) of the config: writes the predictive
// curve CSV and records elbo/spread scalars in the sidecar under "fit".
RunOutput run_fit(const ExperimentConfig& config,
                  const std::filesystem::path& out_dir);
RunOutput run_coverage(const ExperimentConfig& config,
                       const std::filesystem::path& out_dir);
RunOutput run_contraction(const ExperimentConfig& config,
                          const std::filesystem::path& out_dir);
RunOutput run_figures(const ExperimentConfig& config,
                      const std::filesystem::path& out_dir);
RunOutput run_theory_table(const ExperimentConfig& config,
                           const std::filesystem::path& out_dir);

// Built-in study configurations (mirrored by the JSON files under configs/).
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace svgp
