"""Sparse variational Gaussian-process regression with frequentist validation.

Thin re-export of the compiled extension; see the C++ headers for the
authoritative documentation of each routine.
"""

from svgp._core import (
    ConfigError,
    Dataset,
    ExactPosterior,
    InducingBlocks,
    NumericError,
    PointwiseBand,
    RadiusOptions,
    RateTerms,
    SobolevNorm,
    SpectralKernel,
    Spectrum,
    TrueFunction,
    Truncation,
    VariationalPosterior,
    __version__,
    coverage_indicator,
    credible_radius,
    effective_dim,
    elbo,
    equidistant_points,
    git_revision,
    krr_objective,
    l2_distance_to_truth,
    make_blocks,
    make_spectrum,
    mdpp_sample,
    nu_factor,
    pointwise_band,
    predicted_rate,
    preset_json,
    preset_names,
    rate_terms,
    rescaling_tau,
    run_contraction,
    run_coverage,
    run_figures,
    run_fit,
    run_theory_table,
    sample_dataset,
    stationarity_residual,
)

__all__ = [
    "ConfigError",
    "Dataset",
    "ExactPosterior",
    "InducingBlocks",
    "NumericError",
    "PointwiseBand",
    "RadiusOptions",
    "RateTerms",
    "SobolevNorm",
    "SpectralKernel",
    "Spectrum",
    "TrueFunction",
    "Truncation",
    "VariationalPosterior",
    "__version__",
    "coverage_indicator",
    "credible_radius",
    "effective_dim",
    "elbo",
    "equidistant_points",
    "git_revision",
    "krr_objective",
    "l2_distance_to_truth",
    "make_blocks",
    "make_spectrum",
    "mdpp_sample",
    "nu_factor",
    "pointwise_band",
    "predicted_rate",
    "preset_json",
    "preset_names",
    "rate_terms",
    "rescaling_tau",
    "run_contraction",
    "run_coverage",
    "run_figures",
    "run_fit",
    "run_theory_table",
    "sample_dataset",
    "stationarity_residual",
]
