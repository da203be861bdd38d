// Python bindings for the core fitting, credible-set, and theory routines.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "svgp/config.hpp"
#include "svgp/credible.hpp"
#include "svgp/dataset.hpp"
#include "svgp/errors.hpp"
#include "svgp/experiments.hpp"
#include "svgp/inducing.hpp"
#include "svgp/kernel.hpp"
#include "svgp/krr.hpp"
#include "svgp/posterior.hpp"
#include "svgp/theory.hpp"
#include "svgp/truth.hpp"
#include "svgp/version.hpp"

namespace py = pybind11;
using namespace svgp;

namespace {

Spectrum spectrum_from_args(const std::string& kind, double alpha, double tau, int d,
                            double scale) {
  if (kind == "polynomial") return Spectrum::polynomial(alpha, d, scale);
  if (kind == "exponential") return Spectrum::exponential(tau, d, scale);
  if (kind == "exponential_rescaled") return Spectrum::exponential_rescaled(tau, scale);
  throw ConfigError("spectrum kind must be polynomial, exponential, or "
                    "exponential_rescaled, got '" +
                    kind + "'");
}

ExperimentConfig config_from_python(const std::string& json_text) {
  return config_from_json(nlohmann::json::parse(json_text));
}

py::dict run_output_to_dict(const RunOutput& out) {
  py::list rows;
  for (const ResultRow& r : out.rows) {
    py::dict d;
    d["n"] = r.n;
    d["m"] = r.m;
    d["strategy"] = r.strategy;
    d["replicate"] = r.replicate;
    d["seed"] = r.seed;
    d["mse"] = r.mse;
    d["rho"] = r.rho;
    d["covered_m1"] = r.covered_m1;
    d["covered_blowup"] = r.covered_blowup;
    d["spread"] = r.spread;
    d["B_n"] = r.B_n;
    d["W_n"] = r.W_n;
    d["V_n"] = r.V_n;
    d["R_n"] = r.R_n;
    d["elbo"] = r.elbo;
    d["wall_time_ms"] = r.wall_ms;
    d["error"] = r.error;
    rows.append(d);
  }
  py::list cells;
  for (const CellSummary& s : out.cells) {
    py::dict d;
    d["n"] = s.n;
    d["m"] = s.m;
    d["strategy"] = s.strategy;
    d["coverage_m1"] = s.coverage_m1;
    d["coverage_blowup"] = s.coverage_blowup;
    d["mean_mse"] = s.mean_mse;
    d["mean_rho"] = s.mean_rho;
    d["mean_spread"] = s.mean_spread;
    d["mean_elbo"] = s.mean_elbo;
    d["failures"] = s.failures;
    cells.append(d);
  }
  py::list slopes;
  for (const SlopeFit& s : out.slopes) {
    py::dict d;
    d["strategy"] = s.strategy;
    d["slope"] = s.slope;
    d["predicted_mse_exponent"] = s.predicted_mse_exponent;
    slopes.append(d);
  }
  py::list files;
  for (const auto& f : out.files) files.append(f.string());
  py::dict result;
  result["rows"] = rows;
  result["cells"] = cells;
  result["slopes"] = slopes;
  result["files"] = files;
  return result;
}

}  // namespace

PYBIND11_MODULE(_core, module) {
  module.doc() = "Sparse variational Gaussian-process regression with spectral, "
                 "point, and determinantal inducing variables, plus the "
                 "frequentist-validation toolkit.";

  py::register_exception<ConfigError>(module, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericError>(module, "NumericError", PyExc_RuntimeError);

  module.attr("__version__") = kVersion;
  module.def("git_revision", &git_revision, "Short git revision the library was built at.");

  py::class_<Spectrum>(module, "Spectrum")
      .def_static("polynomial", &Spectrum::polynomial, py::arg("alpha"),
                  py::arg("d") = 1, py::arg("scale") = 1.0)
      .def_static("exponential", &Spectrum::exponential, py::arg("tau"),
                  py::arg("d") = 1, py::arg("scale") = 1.0)
      .def_static("exponential_rescaled", &Spectrum::exponential_rescaled,
                  py::arg("tau"), py::arg("scale") = 1.0)
      .def("eigenvalue", &Spectrum::eigenvalue, py::arg("j"))
      .def("trace", &Spectrum::trace)
      .def("tail", &Spectrum::tail, py::arg("j0"))
      .def("tail_squared", &Spectrum::tail_squared, py::arg("j0"))
      .def_readonly("alpha", &Spectrum::alpha)
      .def_readonly("tau", &Spectrum::tau)
      .def_readonly("d", &Spectrum::d)
      .def_readonly("scale", &Spectrum::scale);

  module.def("make_spectrum", &spectrum_from_args, py::arg("kind"),
             py::arg("alpha") = 0.5, py::arg("tau") = 1.0, py::arg("d") = 1,
             py::arg("scale") = 1.0);
  module.def("rescaling_tau", &rescaling_tau, py::arg("n"), py::arg("alpha"),
             py::arg("d") = 1,
             "Sample-size-dependent decay parameter for rescaled exponential "
             "spectra.");

  py::class_<Truncation>(module, "Truncation")
      .def(py::init<>())
      .def_readwrite("max_terms", &Truncation::max_terms)
      .def_readwrite("tail_tol", &Truncation::tail_tol);

  py::class_<SpectralKernel>(module, "SpectralKernel")
      .def(py::init<const Spectrum&, const Truncation&>(), py::arg("spectrum"),
           py::arg("truncation") = Truncation{})
      .def("eval", &SpectralKernel::eval, py::arg("x"), py::arg("y"))
      .def("gram", &SpectralKernel::gram, py::arg("pts"))
      .def("terms", &SpectralKernel::terms)
      .def("eigenvalues", &SpectralKernel::eigenvalues,
           py::return_value_policy::copy)
      .def_property_readonly("spectrum", &SpectralKernel::spectrum,
                             py::return_value_policy::copy);

  py::class_<TrueFunction>(module, "TrueFunction")
      .def_static("sparse_thirds", &TrueFunction::sparse_thirds, py::arg("beta"),
                  py::arg("j_max") = 10000)
      .def_static("heavy_tail", &TrueFunction::heavy_tail, py::arg("p"), py::arg("r"),
                  py::arg("beta"), py::arg("d") = 1, py::arg("j_max") = 10000)
      .def_static("smooth_power", &TrueFunction::smooth_power, py::arg("q"),
                  py::arg("alpha"), py::arg("beta"), py::arg("d") = 1,
                  py::arg("j_max") = 10000)
      .def_static("zero", &TrueFunction::zero)
      .def("coefficient", &TrueFunction::coefficient, py::arg("j"))
      .def("eval",
           static_cast<Eigen::VectorXd (TrueFunction::*)(const Eigen::VectorXd&) const>(
               &TrueFunction::eval),
           py::arg("pts"))
      .def("l2_norm_squared", &TrueFunction::l2_norm_squared)
      .def("l2_norm", &TrueFunction::l2_norm)
      .def("tail_squared_beyond", &TrueFunction::tail_squared_beyond, py::arg("m"))
      .def("sobolev_norm", &TrueFunction::sobolev_norm, py::arg("beta_q"),
           py::arg("d") = 1)
      .def("declared_beta", &TrueFunction::declared_beta)
      .def("truncation", &TrueFunction::truncation);

  py::class_<SobolevNorm>(module, "SobolevNorm")
      .def_readonly("value", &SobolevNorm::value)
      .def_readonly("divergent", &SobolevNorm::divergent);

  py::class_<Dataset>(module, "Dataset")
      .def(py::init<>())
      .def_readwrite("x", &Dataset::x)
      .def_readwrite("y", &Dataset::y)
      .def_readwrite("sigma", &Dataset::sigma)
      .def_readwrite("seed", &Dataset::seed)
      .def("n", &Dataset::n);

  module.def("sample_dataset", &sample_dataset, py::arg("truth"), py::arg("n"),
             py::arg("sigma"), py::arg("seed"),
             "Fixed uniform design on [-pi, pi] with Gaussian noise; "
             "deterministic given seed.");

  py::class_<InducingBlocks>(module, "InducingBlocks")
      .def_property_readonly("kind",
                             [](const InducingBlocks& b) { return to_string(b.kind); })
      .def_readonly("m", &InducingBlocks::m)
      .def_readonly("K_uu", &InducingBlocks::K_uu)
      .def_readonly("K_fu", &InducingBlocks::K_fu)
      .def_readonly("z", &InducingBlocks::z)
      .def_readonly("design", &InducingBlocks::design)
      .def_readonly("indices", &InducingBlocks::indices);

  module.def(
      "make_blocks",
      [](const SpectralKernel& kernel, const Dataset& data, const std::string& kind,
         long m, std::uint64_t seed) {
        return make_blocks(kernel, data, inducing_kind_from_string(kind), m, seed);
      },
      py::arg("kernel"), py::arg("data"), py::arg("kind"), py::arg("m"),
      py::arg("seed") = 0,
      "kind: population_spectral | sample_spectral | equidistant | mdpp");
  module.def("equidistant_points", &equidistant_points, py::arg("m"));
  module.def("mdpp_sample", &mdpp_sample, py::arg("L"), py::arg("m"), py::arg("seed"),
             "Exact cardinality-m determinantal sample from a PSD matrix.");

  py::class_<VariationalPosterior>(module, "VariationalPosterior")
      .def_static("fit", &VariationalPosterior::fit, py::arg("kernel"), py::arg("data"),
                  py::arg("blocks"))
      .def("mean", &VariationalPosterior::mean, py::arg("pts"))
      .def("variance", &VariationalPosterior::variance, py::arg("pts"))
      .def("covariance", &VariationalPosterior::covariance, py::arg("pts"))
      .def("sample_on_grid", &VariationalPosterior::sample_on_grid, py::arg("grid"),
           py::arg("count"), py::arg("seed"))
      .def("has_spectral_path", &VariationalPosterior::has_spectral_path)
      .def("head_mean", &VariationalPosterior::head_mean,
           py::return_value_policy::copy)
      .def("head_covariance", &VariationalPosterior::head_covariance,
           py::return_value_policy::copy)
      .def("spectral_mean", &VariationalPosterior::spectral_mean, py::arg("pts"))
      .def("spectral_variance", &VariationalPosterior::spectral_variance,
           py::arg("pts"))
      .def("l2_spread", &VariationalPosterior::l2_spread)
      .def("l2_spread_quadrature", &VariationalPosterior::l2_spread_quadrature,
           py::arg("quad_points"), py::arg("seed"))
      .def("weights", &VariationalPosterior::weights, py::return_value_policy::copy)
      .def("m", &VariationalPosterior::m)
      .def("n", &VariationalPosterior::n);

  py::class_<ExactPosterior>(module, "ExactPosterior")
      .def_static("fit", &ExactPosterior::fit, py::arg("kernel"), py::arg("data"))
      .def("mean", &ExactPosterior::mean, py::arg("pts"))
      .def("variance", &ExactPosterior::variance, py::arg("pts"))
      .def("covariance", &ExactPosterior::covariance, py::arg("pts"))
      .def("log_marginal", &ExactPosterior::log_marginal);

  module.def("elbo", &elbo, py::arg("kernel"), py::arg("data"), py::arg("blocks"),
             "Collapsed evidence lower bound for the given inducing blocks.");
  module.def("krr_objective", &krr_objective, py::arg("data"), py::arg("blocks"),
             py::arg("a"));
  module.def("stationarity_residual", &stationarity_residual, py::arg("data"),
             py::arg("blocks"), py::arg("a"));

  py::class_<RadiusOptions>(module, "RadiusOptions")
      .def(py::init<>())
      .def_readwrite("mc_samples", &RadiusOptions::mc_samples)
      .def_readwrite("quad_points", &RadiusOptions::quad_points)
      .def_readwrite("tail_terms", &RadiusOptions::tail_terms);

  module.def("credible_radius", &credible_radius, py::arg("posterior"),
             py::arg("gamma"), py::arg("options") = RadiusOptions{},
             py::arg("seed") = 0);
  module.def("l2_distance_to_truth", &l2_distance_to_truth, py::arg("posterior"),
             py::arg("truth"), py::arg("quad_points") = 4096, py::arg("seed") = 0);
  module.def("coverage_indicator", &coverage_indicator, py::arg("posterior"),
             py::arg("truth"), py::arg("gamma"), py::arg("blowup"),
             py::arg("options") = RadiusOptions{}, py::arg("seed") = 0);

  py::class_<PointwiseBand>(module, "PointwiseBand")
      .def_readonly("mean", &PointwiseBand::mean)
      .def_readonly("sd", &PointwiseBand::sd)
      .def_readonly("lower", &PointwiseBand::lower)
      .def_readonly("upper", &PointwiseBand::upper);

  module.def("pointwise_band",
             static_cast<PointwiseBand (*)(const VariationalPosterior&,
                                           const Eigen::VectorXd&, double)>(
                 &pointwise_band),
             py::arg("posterior"), py::arg("grid"), py::arg("gamma"));
  module.def("pointwise_band",
             static_cast<PointwiseBand (*)(const ExactPosterior&,
                                           const Eigen::VectorXd&, double)>(
                 &pointwise_band),
             py::arg("posterior"), py::arg("grid"), py::arg("gamma"));

  py::class_<RateTerms>(module, "RateTerms")
      .def_readonly("nu", &RateTerms::nu)
      .def_readonly("B_n", &RateTerms::B_n)
      .def_readonly("W_n", &RateTerms::W_n)
      .def_readonly("V_n", &RateTerms::V_n)
      .def_readonly("R_n", &RateTerms::R_n)
      .def_readonly("J_n", &RateTerms::J_n)
      .def_readonly("predicted_exponent", &RateTerms::predicted_exponent);

  module.def("rate_terms", &rate_terms, py::arg("spectrum"), py::arg("truth"),
             py::arg("n"), py::arg("m"), py::arg("sigma2"));
  module.def("nu_factor", &nu_factor, py::arg("n"), py::arg("lambda_j"),
             py::arg("sigma2"), "Shrinkage factor n*lambda/(sigma^2 + n*lambda).");
  module.def("effective_dim", &effective_dim, py::arg("spectrum"), py::arg("n"));
  module.def(
      "predicted_rate",
      [](double alpha, double beta, int d, double r) {
        const PredictedRate pr = predicted_rate(alpha, beta, d, r);
        py::dict out;
        out["exponent"] = pr.exponent;
        out["regime"] = to_string(pr.regime);
        return out;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("d"), py::arg("r"));

  module.def("preset_names", &preset_names);
  module.def(
      "preset_json",
      [](const std::string& name) { return config_to_json(preset(name)).dump(2); },
      py::arg("name"), "Built-in study configuration as a JSON string.");

  const auto bind_runner = [&module](const char* name, RunOutput (*fn)(
                                                           const ExperimentConfig&,
                                                           const std::filesystem::path&),
                                     const char* doc) {
    module.def(
        name,
        [fn](const std::string& config_json, const std::filesystem::path& out_dir) {
          return run_output_to_dict(fn(config_from_python(config_json), out_dir));
        },
        py::arg("config_json"), py::arg("out_dir"), doc);
  };
  bind_runner("run_fit", &run_fit, "Single fit; writes the predictive curve CSV.");
  bind_runner("run_coverage", &run_coverage,
              "Replicated coverage experiment; writes results CSV + sidecar.");
  bind_runner("run_contraction", &run_contraction,
              "Replicated contraction experiment; writes results + slope CSVs.");
  bind_runner("run_figures", &run_figures,
              "Band figures; writes one CSV per posterior plus the truth.");
  bind_runner("run_theory_table", &run_theory_table,
              "Closed-form rate terms per n; writes the theory CSV.");
}
