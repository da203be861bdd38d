#include "svgp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "svgp/basis.hpp"
#include "svgp/credible.hpp"
#include "svgp/dataset.hpp"
#include "svgp/errors.hpp"
#include "svgp/posterior.hpp"
#include "svgp/rng.hpp"
#include "svgp/theory.hpp"
#include "svgp/version.hpp"

namespace svgp {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

constexpr const char* kResultHeader =
    "n,m,strategy,replicate,seed,mse,rho,covered_m1,covered_blowup,spread,"
    "B_n,W_n,V_n,R_n,elbo,wall_time_ms,error";

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_ms(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

std::string row_csv(const ResultRow& r) {
  std::string s;
  s += std::to_string(r.n);
  s += ',';
  s += std::to_string(r.m);
  s += ',';
  s += r.strategy;
  s += ',';
  s += std::to_string(r.replicate);
  s += ',';
  s += std::to_string(r.seed);
  s += ',';
  s += fmt(r.mse);
  s += ',';
  s += fmt(r.rho);
  s += ',';
  s += fmt(r.covered_m1);
  s += ',';
  s += fmt(r.covered_blowup);
  s += ',';
  s += fmt(r.spread);
  s += ',';
  s += fmt(r.B_n);
  s += ',';
  s += fmt(r.W_n);
  s += ',';
  s += fmt(r.V_n);
  s += ',';
  s += fmt(r.R_n);
  s += ',';
  s += fmt(r.elbo);
  s += ',';
  s += fmt_ms(r.wall_ms);
  s += ',';
  s += csv_field(r.error);
  s += '\n';
  return s;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("cannot write output file: " + path.string());
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void run_tasks(long total, int threads, const std::function<void(long)>& task) {
  threads = resolve_threads(threads);
  if (threads <= 1 || total <= 1) {
    for (long i = 0; i < total; ++i) task(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  const long workers = std::min<long>(threads, total);
  pool.reserve(static_cast<size_t>(workers));
  for (long t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const long i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= total) return;
        task(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

struct Cell {
  long n = 0;
  long m = 0;
  InducingKind kind = InducingKind::kPopulationSpectral;
  size_t n_index = 0;  // into the per-n spectrum/kernel arrays
  RateTerms theory;
};

struct Prepared {
  TrueFunction truth = TrueFunction::zero();
  std::vector<Spectrum> spectra;                         // one per n-grid entry
  std::vector<std::unique_ptr<SpectralKernel>> kernels;  // one per n-grid entry
  std::vector<Cell> cells;                               // n-major, then strategy
  std::vector<std::string> warnings;
};

Prepared prepare_cells(const ExperimentConfig& cfg) {
  if (cfg.n_grid.empty()) throw ConfigError("n_grid must be non-empty");
  if (cfg.strategies.empty()) throw ConfigError("strategies must be non-empty");
  Prepared prep;
  prep.truth = make_truth(cfg);
  const double sigma2 = cfg.sigma * cfg.sigma;
  for (size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const long n = cfg.n_grid[i];
    prep.spectra.push_back(make_spectrum(cfg, n));
    prep.kernels.push_back(
        std::make_unique<SpectralKernel>(prep.spectra.back(), cfg.truncation));
    const long m = resolve_m(cfg, prep.spectra.back(), n);
    const double growth =
        static_cast<double>(m) * static_cast<double>(m) * std::log(double(n)) / double(n);
    if (growth >= 1.0) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "m^2 log(n)/n = %.3f >= 1 at n=%ld, m=%ld; the m-growth "
                    "condition behind the rate guarantees is violated",
                    growth, n, m);
      prep.warnings.emplace_back(buf);
    }
    for (InducingKind kind : cfg.strategies) {
      Cell cell;
      cell.n = n;
      cell.m = m;
      cell.kind = kind;
      cell.n_index = i;
      cell.theory = rate_terms(prep.spectra.back(), prep.truth, n, m, sigma2);
      prep.cells.push_back(std::move(cell));
    }
  }
  return prep;
}

ResultRow simulate_replicate(const SpectralKernel& kernel, const TrueFunction& truth,
                             const Cell& cell, const ExperimentConfig& cfg, long rep,
                             bool with_radius) {
  ResultRow row;
  row.n = cell.n;
  row.m = cell.m;
  row.strategy = to_string(cell.kind);
  row.replicate = rep;
  row.seed = cfg.base_seed + static_cast<std::uint64_t>(rep);
  row.B_n = cell.theory.B_n;
  row.W_n = cell.theory.W_n;
  row.V_n = cell.theory.V_n;
  row.R_n = cell.theory.R_n;
  row.mse = row.rho = row.covered_m1 = row.covered_blowup = kNan;
  row.spread = row.elbo = kNan;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Dataset data = sample_dataset(truth, cell.n, cfg.sigma, row.seed);
    InducingBlocks blocks = make_blocks(kernel, data, cell.kind, cell.m, row.seed);
    const auto post = VariationalPosterior::fit(kernel, data, std::move(blocks));
    const double dist = l2_distance_to_truth(post, truth, cfg.quad_points, row.seed);
    row.mse = dist * dist;
    if (with_radius) {
      RadiusOptions opts;
      opts.mc_samples = cfg.mc_samples;
      opts.quad_points = cfg.quad_points;
      opts.tail_terms = cfg.radius_tail_terms;
      row.rho = credible_radius(post, cfg.gamma, opts, row.seed);
      row.covered_m1 = dist <= row.rho ? 1.0 : 0.0;
      row.covered_blowup = dist <= cfg.blowup * row.rho ? 1.0 : 0.0;
    }
    row.spread = post.has_spectral_path()
                     ? post.l2_spread()
                     : post.l2_spread_quadrature(cfg.quad_points,
                                                 derive_stream(row.seed, 8));
    row.elbo = elbo(kernel, data, post.blocks());
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

json prng_block(const ExperimentConfig& cfg) {
  json j;
  j["engine"] = "mt19937_64";
  j["normal_inverse_cdf"] = "PPND16 rational approximation, |error| < 1e-8";
  j["substream_derivation"] = "splitmix64 mix of (seed, stream tag)";
  j["per_replicate_seed"] = "base_seed + replicate_index";
  j["base_seed"] = cfg.base_seed;
  return j;
}

json sidecar_skeleton(const ExperimentConfig& cfg, const char* command,
                      const std::vector<std::string>& outputs,
                      const std::vector<std::string>& warnings) {
  json j;
  j["command"] = command;
  j["name"] = cfg.name;
  j["config"] = config_to_json(cfg);
  j["prng"] = prng_block(cfg);
  j["library_version"] = kVersion;
  j["git_revision"] = git_revision();
  j["outputs"] = outputs;
  j["warnings"] = warnings;
  j["errors"] = json::array();
  return j;
}

void write_sidecar(const fs::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

json error_entries(const std::vector<ResultRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    if (r.error.empty()) continue;
    json e;
    e["n"] = r.n;
    e["m"] = r.m;
    e["strategy"] = r.strategy;
    e["replicate"] = r.replicate;
    e["seed"] = r.seed;
    e["message"] = r.error;
    arr.push_back(std::move(e));
  }
  return arr;
}

// Shared coverage/contraction core: replicated cells, deterministic merge,
// summary rows, sidecar before and after.
RunOutput run_replicated(const ExperimentConfig& cfg, const fs::path& out_dir,
                         bool with_radius, bool with_slopes, const char* command) {
  if (cfg.replicates < 1) throw ConfigError("replicates must be >= 1");
  Prepared prep = prepare_cells(cfg);
  for (const auto& w : prep.warnings) std::cerr << "warning: " << w << "\n";

  fs::create_directories(out_dir);
  const fs::path meta_path = out_dir / (cfg.name + "_meta.json");
  const fs::path results_path = out_dir / (cfg.name + "_results.csv");
  const fs::path slopes_path = out_dir / (cfg.name + "_slopes.csv");
  std::vector<std::string> outputs = {results_path.filename().string()};
  if (with_slopes) outputs.push_back(slopes_path.filename().string());
  json meta = sidecar_skeleton(cfg, command, outputs, prep.warnings);
  write_sidecar(meta_path, meta);  // sidecar exists before any result file

  const long cells = static_cast<long>(prep.cells.size());
  const long reps = cfg.replicates;
  RunOutput out;
  out.rows.resize(static_cast<size_t>(cells * reps));
  run_tasks(cells * reps, cfg.threads, [&](long t) {
    const long c = t / reps;
    const long rep = t % reps;
    const Cell& cell = prep.cells[static_cast<size_t>(c)];
    out.rows[static_cast<size_t>(t)] = simulate_replicate(
        *prep.kernels[cell.n_index], prep.truth, cell, cfg, rep, with_radius);
  });

  std::string csv = kResultHeader;
  csv += '\n';
  for (const auto& r : out.rows) csv += row_csv(r);

  for (long c = 0; c < cells; ++c) {
    const Cell& cell = prep.cells[static_cast<size_t>(c)];
    std::vector<double> mse, rho, cov1, covm, spread, elbo_v, wall;
    long failures = 0;
    for (long rep = 0; rep < reps; ++rep) {
      const ResultRow& r = out.rows[static_cast<size_t>(c * reps + rep)];
      wall.push_back(r.wall_ms);
      if (!r.error.empty()) {
        ++failures;
        continue;
      }
      mse.push_back(r.mse);
      spread.push_back(r.spread);
      elbo_v.push_back(r.elbo);
      if (with_radius) {
        rho.push_back(r.rho);
        cov1.push_back(r.covered_m1);
        covm.push_back(r.covered_blowup);
      }
    }
    CellSummary cs;
    cs.n = cell.n;
    cs.m = cell.m;
    cs.strategy = to_string(cell.kind);
    cs.mean_mse = mean_of(mse);
    cs.mean_rho = mean_of(rho);
    cs.coverage_m1 = mean_of(cov1);
    cs.coverage_blowup = mean_of(covm);
    cs.mean_spread = mean_of(spread);
    cs.mean_elbo = mean_of(elbo_v);
    cs.failures = failures;
    out.cells.push_back(cs);

    ResultRow summary;
    summary.n = cell.n;
    summary.m = cell.m;
    summary.strategy = cs.strategy;
    summary.replicate = -1;
    summary.seed = cfg.base_seed;
    summary.mse = cs.mean_mse;
    summary.rho = cs.mean_rho;
    summary.covered_m1 = cs.coverage_m1;
    summary.covered_blowup = cs.coverage_blowup;
    summary.spread = cs.mean_spread;
    summary.B_n = cell.theory.B_n;
    summary.W_n = cell.theory.W_n;
    summary.V_n = cell.theory.V_n;
    summary.R_n = cell.theory.R_n;
    summary.elbo = cs.mean_elbo;
    summary.wall_ms = mean_of(wall);
    csv += row_csv(summary);
  }
  write_text(results_path, csv);
  out.files.push_back(results_path);

  if (with_slopes) {
    std::string slopes_csv = "strategy,slope,predicted_mse_exponent\n";
    for (InducingKind kind : cfg.strategies) {
      std::vector<double> lx, ly;
      double predicted = kNan;
      for (long c = 0; c < cells; ++c) {
        if (prep.cells[static_cast<size_t>(c)].kind != kind) continue;
        predicted = 2.0 * prep.cells[static_cast<size_t>(c)].theory.predicted_exponent;
        const CellSummary& cs = out.cells[static_cast<size_t>(c)];
        if (std::isnan(cs.mean_mse) || cs.mean_mse <= 0.0) continue;
        lx.push_back(std::log(static_cast<double>(cs.n)));
        ly.push_back(std::log(cs.mean_mse));
      }
      SlopeFit fit;
      fit.strategy = to_string(kind);
      fit.predicted_mse_exponent = predicted;
      fit.slope = kNan;
      if (lx.size() >= 2) {
        const double mx = mean_of(lx), my = mean_of(ly);
        double sxy = 0.0, sxx = 0.0;
        for (size_t i = 0; i < lx.size(); ++i) {
          sxy += (lx[i] - mx) * (ly[i] - my);
          sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        if (sxx > 0.0) fit.slope = sxy / sxx;
      }
      out.slopes.push_back(fit);
      slopes_csv += fit.strategy;
      slopes_csv += ',';
      slopes_csv += fmt(fit.slope);
      slopes_csv += ',';
      slopes_csv += fmt(fit.predicted_mse_exponent);
      slopes_csv += '\n';
    }
    write_text(slopes_path, slopes_csv);
    out.files.push_back(slopes_path);
  }

  meta["errors"] = error_entries(out.rows);
  write_sidecar(meta_path, meta);
  out.files.insert(out.files.begin(), meta_path);
  return out;
}

std::string band_csv(const FigureBand& band) {
  std::string csv = "x,mean,sd,lower,upper\n";
  for (long i = 0; i < band.x.size(); ++i) {
    csv += fmt(band.x[i]);
    csv += ',';
    csv += fmt(band.mean[i]);
    csv += ',';
    csv += fmt(band.sd[i]);
    csv += ',';
    csv += fmt(band.lower[i]);
    csv += ',';
    csv += fmt(band.upper[i]);
    csv += '\n';
  }
  return csv;
}

}  // namespace

RunOutput run_fit(const ExperimentConfig& cfg, const fs::path& out_dir) {
  if (cfg.n_grid.empty()) throw ConfigError("n_grid must be non-empty");
  if (cfg.strategies.empty()) throw ConfigError("strategies must be non-empty");
  const long n = cfg.n_grid[0];
  const InducingKind kind = cfg.strategies[0];
  const TrueFunction truth = make_truth(cfg);
  const Spectrum spectrum = make_spectrum(cfg, n);
  const SpectralKernel kernel(spectrum, cfg.truncation);
  const long m = resolve_m(cfg, spectrum, n);

  fs::create_directories(out_dir);
  const fs::path meta_path = out_dir / (cfg.name + "_meta.json");
  const fs::path curve_path = out_dir / (cfg.name + "_fit.csv");
  json meta = sidecar_skeleton(cfg, "fit", {curve_path.filename().string()}, {});
  write_sidecar(meta_path, meta);

  const Dataset data = sample_dataset(truth, n, cfg.sigma, cfg.base_seed);
  InducingBlocks blocks =
      make_blocks(kernel, data, kind, m, derive_stream(cfg.base_seed, 100 + m));
  const auto post = VariationalPosterior::fit(kernel, data, std::move(blocks));
  const Eigen::VectorXd grid =
      Eigen::VectorXd::LinSpaced(cfg.grid_points, basis::kDomainLo, basis::kDomainHi);
  const PointwiseBand band = pointwise_band(post, grid, cfg.gamma);

  FigureBand fb;
  fb.strategy = to_string(kind);
  fb.m = m;
  fb.x = grid;
  fb.mean = band.mean;
  fb.sd = band.sd;
  fb.lower = band.lower;
  fb.upper = band.upper;
  write_text(curve_path, band_csv(fb));

  json scalars;
  scalars["n"] = n;
  scalars["m"] = m;
  scalars["strategy"] = to_string(kind);
  scalars["elbo"] = elbo(kernel, data, post.blocks());
  scalars["spread"] = post.has_spectral_path()
                          ? post.l2_spread()
                          : post.l2_spread_quadrature(
                                cfg.quad_points, derive_stream(cfg.base_seed, 8));
  meta["fit"] = scalars;
  write_sidecar(meta_path, meta);

  RunOutput out;
  out.files = {meta_path, curve_path};
  out.bands.push_back(std::move(fb));
  return out;
}

RunOutput run_coverage(const ExperimentConfig& cfg, const fs::path& out_dir) {
  return run_replicated(cfg, out_dir, /*with_radius=*/true, /*with_slopes=*/false,
                        "coverage");
}

RunOutput run_contraction(const ExperimentConfig& cfg, const fs::path& out_dir) {
  if (cfg.n_grid.size() < 4)
    throw ConfigError("contraction runs need an n_grid with >= 4 points");
  for (size_t i = 1; i < cfg.n_grid.size(); ++i)
    if (cfg.n_grid[i] <= cfg.n_grid[i - 1])
      throw ConfigError("contraction n_grid must be strictly increasing");
  return run_replicated(cfg, out_dir, /*with_radius=*/false, /*with_slopes=*/true,
                        "contraction");
}

RunOutput run_figures(const ExperimentConfig& cfg, const fs::path& out_dir) {
  if (cfg.n_grid.size() != 1)
    throw ConfigError("figures runs take a single n_grid entry");
  if (cfg.figure_m.empty()) throw ConfigError("figure_m must be non-empty");
  if (cfg.grid_points < 2) throw ConfigError("grid_points must be >= 2");
  const long n = cfg.n_grid[0];
  const TrueFunction truth = make_truth(cfg);
  const Spectrum spectrum = make_spectrum(cfg, n);
  const SpectralKernel kernel(spectrum, cfg.truncation);
  const Eigen::VectorXd grid =
      Eigen::VectorXd::LinSpaced(cfg.grid_points, basis::kDomainLo, basis::kDomainHi);

  fs::create_directories(out_dir);
  const fs::path meta_path = out_dir / (cfg.name + "_meta.json");
  std::vector<std::string> outputs = {cfg.name + "_truth.csv", cfg.name + "_exact.csv"};
  for (InducingKind kind : cfg.strategies)
    for (long m : cfg.figure_m)
      outputs.push_back(cfg.name + "_" + to_string(kind) + "_m" + std::to_string(m) +
                        ".csv");
  json meta = sidecar_skeleton(cfg, "figures", outputs, {});
  meta["inducing"] = json::object();
  write_sidecar(meta_path, meta);

  RunOutput out;
  out.truth_values = truth.eval(grid);
  std::string truth_csv = "x,f0\n";
  for (long i = 0; i < grid.size(); ++i) {
    truth_csv += fmt(grid[i]);
    truth_csv += ',';
    truth_csv += fmt(out.truth_values[i]);
    truth_csv += '\n';
  }
  const fs::path truth_path = out_dir / (cfg.name + "_truth.csv");
  write_text(truth_path, truth_csv);
  out.files = {meta_path, truth_path};

  const Dataset data = sample_dataset(truth, n, cfg.sigma, cfg.base_seed);
  json errors = json::array();

  {
    const ExactPosterior exact = ExactPosterior::fit(kernel, data);
    const PointwiseBand band = pointwise_band(exact, grid, cfg.gamma);
    FigureBand fb;
    fb.strategy = "exact";
    fb.m = 0;
    fb.x = grid;
    fb.mean = band.mean;
    fb.sd = band.sd;
    fb.lower = band.lower;
    fb.upper = band.upper;
    const fs::path p = out_dir / (cfg.name + "_exact.csv");
    write_text(p, band_csv(fb));
    out.files.push_back(p);
    out.bands.push_back(std::move(fb));
  }

  for (InducingKind kind : cfg.strategies) {
    for (long m : cfg.figure_m) {
      const std::string tag = std::string(to_string(kind)) + "_m" + std::to_string(m);
      try {
        // One inducing-selection stream per m, shared across strategies so the
        // point methods see comparable randomness at matched m.
        InducingBlocks blocks = make_blocks(kernel, data, kind, m,
                                            derive_stream(cfg.base_seed, 100 + m));
        json payload;
        payload["strategy"] = to_string(kind);
        payload["m"] = m;
        if (blocks.z.size() > 0) {
          payload["z"] = std::vector<double>(blocks.z.data(),
                                             blocks.z.data() + blocks.z.size());
        }
        if (!blocks.indices.empty()) payload["design_indices"] = blocks.indices;
        if (kind == InducingKind::kPopulationSpectral)
          payload["description"] = "first m basis-coefficient projections";
        if (kind == InducingKind::kSampleSpectral)
          payload["description"] = "top-m kernel-matrix eigenvector projections";
        meta["inducing"][tag] = std::move(payload);

        const auto post = VariationalPosterior::fit(kernel, data, std::move(blocks));
        const PointwiseBand band = pointwise_band(post, grid, cfg.gamma);
        FigureBand fb;
        fb.strategy = to_string(kind);
        fb.m = m;
        fb.x = grid;
        fb.mean = band.mean;
        fb.sd = band.sd;
        fb.lower = band.lower;
        fb.upper = band.upper;
        const fs::path p = out_dir / (cfg.name + "_" + tag + ".csv");
        write_text(p, band_csv(fb));
        out.files.push_back(p);
        out.bands.push_back(std::move(fb));
      } catch (const std::exception& e) {
        json err;
        err["strategy"] = to_string(kind);
        err["m"] = m;
        err["message"] = e.what();
        errors.push_back(std::move(err));
      }
    }
  }

  meta["errors"] = errors;
  write_sidecar(meta_path, meta);
  return out;
}

RunOutput run_theory_table(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const TrueFunction truth = make_truth(cfg);
  fs::create_directories(out_dir);
  const fs::path meta_path = out_dir / (cfg.name + "_meta.json");
  const fs::path table_path = out_dir / (cfg.name + "_theory.csv");
  json meta =
      sidecar_skeleton(cfg, "theory-terms", {table_path.filename().string()}, {});
  write_sidecar(meta_path, meta);

  std::string csv = "n,m,J_n,B_n,W_n,V_n,R_n,predicted_exponent,regime\n";
  const double sigma2 = cfg.sigma * cfg.sigma;
  for (long n : cfg.n_grid) {
    const Spectrum spectrum = make_spectrum(cfg, n);
    const long m = resolve_m(cfg, spectrum, n);
    const RateTerms terms = rate_terms(spectrum, truth, n, m, sigma2);
    // The regime classification needs the m-rule's growth exponent: a power
    // rule states it; the effective-dimension rule tracks m = J_n, which grows
    // like n^{d/(d+2 alpha)} up to logs; a fixed m does not grow at all.
    std::string regime = "n/a";
    double exponent = terms.predicted_exponent;
    if (truth.kind() != TruthKind::kZero) {
      double r = 0.0;
      if (cfg.m_rule.kind == "power") {
        r = cfg.m_rule.exponent;
      } else if (cfg.m_rule.kind == "effective_dim") {
        r = static_cast<double>(cfg.spectrum.d) /
            (cfg.spectrum.d + 2.0 * cfg.spectrum.alpha);
      }
      const PredictedRate pr = predicted_rate(cfg.spectrum.alpha, truth.declared_beta(),
                                              cfg.spectrum.d, r);
      regime = to_string(pr.regime);
      exponent = pr.exponent;
    }
    csv += std::to_string(n);
    csv += ',';
    csv += std::to_string(m);
    csv += ',';
    csv += std::to_string(terms.J_n);
    csv += ',';
    csv += fmt(terms.B_n);
    csv += ',';
    csv += fmt(terms.W_n);
    csv += ',';
    csv += fmt(terms.V_n);
    csv += ',';
    csv += fmt(terms.R_n);
    csv += ',';
    csv += fmt(exponent);
    csv += ',';
    csv += regime;
    csv += '\n';
  }
  write_text(table_path, csv);

  RunOutput out;
  out.files = {meta_path, table_path};
  write_sidecar(meta_path, meta);
  return out;
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  if (name == "matched") {
    // Calibrated pair: polynomial prior alpha = 0.5 against the sparse-thirds
    // truth at beta = 0.5, m = ceil(sqrt n).
    c.spectrum.kind = "polynomial";
    c.spectrum.alpha = 0.5;
    c.truth.kind = "sparse_thirds";
    c.truth.beta = 0.5;
    c.sigma = 0.1;
    c.m_rule.kind = "power";
    c.m_rule.exponent = 0.5;
    c.n_grid = {500, 2500};
    c.replicates = 200;
    c.mc_samples = 20000;
  } else if (name == "small_m") {
    // m grows too slowly for the prior's own rate; the ball still covers.
    c.spectrum.kind = "polynomial";
    c.spectrum.alpha = 1.0;
    c.truth.kind = "sparse_thirds";
    c.truth.beta = 1.5;
    c.sigma = 0.1;
    c.m_rule.kind = "power";
    c.m_rule.exponent = 0.3;
    c.n_grid = {3200};
    c.replicates = 200;
    c.mc_samples = 20000;
  } else if (name == "oversmoothed") {
    // Prior smoother than the truth: credible balls shrink too fast and miss.
    c.spectrum.kind = "polynomial";
    c.spectrum.alpha = 1.5;
    c.truth.kind = "smooth_power";
    c.truth.q = 1.0;
    c.truth.beta = 0.5;
    c.sigma = 0.1;
    c.m_rule.kind = "effective_dim";
    c.n_grid = {3200};
    c.replicates = 200;
    c.mc_samples = 20000;
  } else if (name == "contraction_matched") {
    c.spectrum.kind = "polynomial";
    c.spectrum.alpha = 0.5;
    c.truth.kind = "sparse_thirds";
    c.truth.beta = 0.5;
    c.sigma = 1.0;
    c.m_rule.kind = "effective_dim";
    c.n_grid = {200, 400, 800, 1600, 3200};
    c.replicates = 50;
  } else if (name == "contraction_exponential") {
    c.spectrum.kind = "exponential_rescaled";
    c.spectrum.alpha = 0.5;
    c.spectrum.tau_auto = true;
    c.truth.kind = "sparse_thirds";
    c.truth.beta = 0.5;
    c.sigma = 1.0;
    c.m_rule.kind = "power";
    c.m_rule.exponent = 0.5;
    c.n_grid = {200, 400, 800, 1600, 3200};
    c.replicates = 50;
  } else if (name == "contraction_insufficient") {
    // m ~ n^{1/4} is below the rate threshold; the heavy-tail truth pins the
    // MSE to a strictly shallower decay.
    c.spectrum.kind = "polynomial";
    c.spectrum.alpha = 0.5;
    c.truth.kind = "heavy_tail";
    c.truth.p = 0.3;
    c.truth.beta = 0.5;
    c.sigma = 1.0;
    c.m_rule.kind = "power";
    c.m_rule.exponent = 0.25;
    c.n_grid = {200, 400, 800, 1600, 3200};
    c.replicates = 50;
  } else if (name == "figures") {
    c.spectrum.kind = "exponential_rescaled";
    c.spectrum.alpha = 0.5;
    c.spectrum.tau = 1.0;
    c.truth.kind = "sparse_thirds";
    c.truth.beta = 1.0;
    c.sigma = 0.1;
    c.strategies = {InducingKind::kPopulationSpectral, InducingKind::kSampleSpectral,
                    InducingKind::kEquidistantPoints, InducingKind::kMdpp};
    c.m_rule.kind = "fixed";
    c.m_rule.value = 60;
    c.n_grid = {2500};
    c.figure_m = {30, 60};
    c.grid_points = 512;
    c.replicates = 1;
  } else {
    std::string names;
    for (const auto& p : preset_names()) {
      if (!names.empty()) names += ", ";
      names += p;
    }
    throw ConfigError("unknown preset '" + name + "' (available: " + names + ")");
  }
  return c;
}

std::vector<std::string> preset_names() {
  return {"matched",
          "small_m",
          "oversmoothed",
          "contraction_matched",
          "contraction_exponential",
          "contraction_insufficient",
          "figures"};
}

}  // namespace svgp
