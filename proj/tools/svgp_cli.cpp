#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svgp/basis.hpp"
#include "svgp/config.hpp"
#include "svgp/credible.hpp"
#include "svgp/dataset.hpp"
#include "svgp/errors.hpp"
#include "svgp/experiments.hpp"
#include "svgp/krr.hpp"
#include "svgp/posterior.hpp"
#include "svgp/rng.hpp"
#include "svgp/version.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  long n = 0;
  long m = 0;
  long replicates = 0;
  std::uint64_t seed = 0;
  std::string strategy;
  int threads = 0;
  CLI::Option* n_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* replicates_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "JSON config file (see configs/)");
  sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  o.n_opt = sub->add_option("--n", o.n, "override: run a single sample size n");
  o.m_opt = sub->add_option("--m", o.m, "override: fixed number of inducing variables");
  o.seed_opt = sub->add_option("--seed", o.seed, "override: base seed");
  o.replicates_opt =
      sub->add_option("--replicates", o.replicates, "override: replicate count");
  sub->add_option("--strategy", o.strategy,
                  "override: single strategy (population_spectral | sample_spectral "
                  "| equidistant | mdpp)");
  o.threads_opt =
      sub->add_option("--threads", o.threads, "worker threads (0 = machine parallelism)");
}

svgp::ExperimentConfig build_config(const CommonOpts& o) {
  svgp::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = svgp::load_config_file(o.config_path);
  if (o.n_opt && o.n_opt->count() > 0) cfg.n_grid = {o.n};
  if (o.m_opt && o.m_opt->count() > 0) {
    cfg.m_rule.kind = "fixed";
    cfg.m_rule.value = o.m;
  }
  if (o.seed_opt && o.seed_opt->count() > 0) cfg.base_seed = o.seed;
  if (o.replicates_opt && o.replicates_opt->count() > 0)
    cfg.replicates = o.replicates;
  if (!o.strategy.empty())
    cfg.strategies = {svgp::inducing_kind_from_string(o.strategy)};
  if (o.threads_opt && o.threads_opt->count() > 0) cfg.threads = o.threads;
  return cfg;
}

void print_outputs(const svgp::RunOutput& out) {
  for (const auto& f : out.files) std::cout << "wrote " << f.string() << "\n";
}

int run_verify_krr(const svgp::ExperimentConfig& cfg, long n, long m) {
  const svgp::TrueFunction truth = svgp::make_truth(cfg);
  const svgp::Spectrum spectrum = svgp::make_spectrum(cfg, n);
  const svgp::SpectralKernel kernel(spectrum, cfg.truncation);
  const svgp::Dataset data = svgp::sample_dataset(truth, n, cfg.sigma, cfg.base_seed);
  constexpr double kTol = 1e-8;
  double worst = 0.0;
  for (svgp::InducingKind kind :
       {svgp::InducingKind::kPopulationSpectral, svgp::InducingKind::kSampleSpectral,
        svgp::InducingKind::kEquidistantPoints, svgp::InducingKind::kMdpp}) {
    svgp::InducingBlocks blocks = svgp::make_blocks(kernel, data, kind, m, cfg.base_seed);
    const auto post = svgp::VariationalPosterior::fit(kernel, data, std::move(blocks));
    const double res =
        svgp::stationarity_residual(data, post.blocks(), post.weights());
    std::printf("%-20s stationarity_residual = %.3e\n", svgp::to_string(kind), res);
    worst = std::max(worst, res);
  }
  const bool ok = worst < kTol;
  std::printf("max residual %.3e %s tolerance %.0e -> %s\n", worst, ok ? "<" : ">=",
              kTol, ok ? "PASS" : "FAIL");
  if (!ok)
    throw svgp::NumericError(
        "verify-krr: the fitted mean is not a ridge-objective stationary point "
        "within 1e-8");
  return 0;
}

int run_verify_posterior(const svgp::ExperimentConfig& cfg, long n, long m) {
  const svgp::TrueFunction truth = svgp::make_truth(cfg);
  const svgp::Spectrum spectrum = svgp::make_spectrum(cfg, n);
  const svgp::SpectralKernel kernel(spectrum, cfg.truncation);
  const svgp::Dataset data = svgp::sample_dataset(truth, n, cfg.sigma, cfg.base_seed);
  svgp::InducingBlocks blocks =
      svgp::population_spectral_blocks(kernel, data, m);
  const auto post = svgp::VariationalPosterior::fit(kernel, data, std::move(blocks));
  const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(
      cfg.grid_points, svgp::basis::kDomainLo, svgp::basis::kDomainHi);
  const Eigen::VectorXd mean_g = post.mean(grid);
  const Eigen::VectorXd mean_s = post.spectral_mean(grid);
  const Eigen::VectorXd var_g = post.variance(grid);
  const Eigen::VectorXd var_s = post.spectral_variance(grid);
  double worst_mean = 0.0, worst_var = 0.0;
  for (long i = 0; i < grid.size(); ++i) {
    worst_mean = std::max(worst_mean, std::abs(mean_g[i] - mean_s[i]) /
                                          (1.0 + std::abs(mean_s[i])));
    worst_var = std::max(worst_var,
                         std::abs(var_g[i] - var_s[i]) / (1.0 + std::abs(var_s[i])));
  }
  constexpr double kTol = 1e-8;
  std::printf("max spectral-vs-general mean discrepancy     = %.3e\n", worst_mean);
  std::printf("max spectral-vs-general variance discrepancy = %.3e\n", worst_var);
  const bool ok = worst_mean < kTol && worst_var < kTol;
  std::printf("tolerance %.0e -> %s\n", kTol, ok ? "PASS" : "FAIL");
  if (!ok)
    throw svgp::NumericError(
        "verify-posterior: spectral and general posterior formulas disagree "
        "beyond 1e-8");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svgp: sparse variational Gaussian-process regression toolkit"};
  app.set_version_flag("--version", std::string("svgp ") + svgp::kVersion + " (" +
                                        svgp::git_revision() + ")");
  app.require_subcommand(1);

  CLI::App* fit = app.add_subcommand(
      "fit", "fit one model and write its predictive curve CSV");
  CLI::App* figures = app.add_subcommand(
      "figures", "exact + variational predictive bands on a grid");
  CLI::App* coverage = app.add_subcommand(
      "coverage", "replicated credible-ball coverage study");
  CLI::App* contraction = app.add_subcommand(
      "contraction", "replicated mse-vs-n study with log-log slopes");
  CLI::App* theory = app.add_subcommand(
      "theory-terms", "closed-form rate-term table over the n-grid");
  CLI::App* vkrr = app.add_subcommand(
      "verify-krr",
      "check the fitted mean solves the ridge problem (exit 2 on failure)");
  CLI::App* vpost = app.add_subcommand(
      "verify-posterior",
      "cross-check spectral vs general posterior formulas (exit 2 on failure)");
  const std::vector<CLI::App*> subs = {fit,    figures, coverage, contraction,
                                       theory, vkrr,    vpost};
  std::vector<CommonOpts> sub_opts(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) add_common(subs[i], sub_opts[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  CommonOpts o;
  for (size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) o = sub_opts[i];

  try {
    const svgp::ExperimentConfig cfg = build_config(o);
    if (fit->parsed()) {
      print_outputs(svgp::run_fit(cfg, o.out_dir));
    } else if (figures->parsed()) {
      print_outputs(svgp::run_figures(cfg, o.out_dir));
    } else if (coverage->parsed()) {
      print_outputs(svgp::run_coverage(cfg, o.out_dir));
    } else if (contraction->parsed()) {
      print_outputs(svgp::run_contraction(cfg, o.out_dir));
    } else if (theory->parsed()) {
      const svgp::RunOutput out = svgp::run_theory_table(cfg, o.out_dir);
      print_outputs(out);
      std::ifstream in(out.files.back());
      std::cout << in.rdbuf();
    } else if (vkrr->parsed()) {
      const long n = (o.n_opt && o.n_opt->count() > 0) ? o.n : 200;
      const long m = (o.m_opt && o.m_opt->count() > 0) ? o.m : 20;
      return run_verify_krr(cfg, n, m);
    } else if (vpost->parsed()) {
      const long n = (o.n_opt && o.n_opt->count() > 0) ? o.n : 200;
      const long m = (o.m_opt && o.m_opt->count() > 0) ? o.m : 20;
      return run_verify_posterior(cfg, n, m);
    }
  } catch (const svgp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const svgp::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
