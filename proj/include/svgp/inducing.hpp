#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "svgp/dataset.hpp"
#include "svgp/kernel.hpp"

namespace svgp {

enum class InducingKind {
  kPopulationSpectral,  // u_j = <f, phi_j>, j <= m
  kSampleSpectral,      // u_j = v_j' f, top-m eigenvectors of K_ff
  kEquidistantPoints,   // u_j = f(z_j), z on the midpoint grid
  kMdpp,                // u_j = f(x_i), i a k-DPP draw from the design
};

const char* to_string(InducingKind kind);
InducingKind inducing_kind_from_string(const std::string& name);

// Covariance blocks tying the latent field to the inducing variables, plus
// enough strategy payload to extend them to arbitrary prediction points.
struct InducingBlocks {
  InducingKind kind = InducingKind::kPopulationSpectral;
  long m = 0;
  Eigen::MatrixXd K_uu;  // m x m symmetric PSD
  Eigen::MatrixXd K_fu;  // n x m

  Eigen::VectorXd z;           // point strategies: inducing inputs
  Eigen::MatrixXd V;           // sample spectral: n x m orthonormal eigenvectors
  Eigen::VectorXd design;      // sample spectral: design points backing V
  std::vector<long> indices;   // mdpp: selected design indices

  // Rows cov(f(p), u) for each p in pts (|pts| x m).
  Eigen::MatrixXd cross(const SpectralKernel& kernel, const Eigen::VectorXd& pts) const;
};

// K_uu = diag(lambda_1..m), K_fu = Phi Lambda; requires m <= kernel.terms().
InducingBlocks population_spectral_blocks(const SpectralKernel& kernel,
                                          const Dataset& data, long m);

// Top-m eigenpairs (mu_j, v_j) of K_ff: K_uu = diag(mu), K_fu col j = mu_j v_j.
InducingBlocks sample_spectral_blocks(const SpectralKernel& kernel,
                                      const Dataset& data, long m);

// Midpoint grid z_j = -pi + (j - 1/2) 2 pi / m.
Eigen::VectorXd equidistant_points(long m);

// K_uu = k(z, z), K_fu = k(x, z); z must be pairwise distinct (1e-12).
InducingBlocks point_blocks(const SpectralKernel& kernel, const Dataset& data,
                            const Eigen::VectorXd& z,
                            InducingKind kind = InducingKind::kEquidistantPoints);

// Exact size-m determinantal sample from the PSD matrix L: eigendecomposition,
// elementary-symmetric-polynomial recurrence for the eigenvector subset, then
// sequential point selection with projection updates. Deterministic given
// seed; indices returned sorted.
std::vector<long> mdpp_sample(const Eigen::MatrixXd& L, long m, std::uint64_t seed);

// Point blocks at design indices drawn by the k-DPP with L = K_ff.
InducingBlocks mdpp_blocks(const SpectralKernel& kernel, const Dataset& data, long m,
                           std::uint64_t seed);

// Dispatcher used by the experiment runners.
InducingBlocks make_blocks(const SpectralKernel& kernel, const Dataset& data,
                           InducingKind kind, long m, std::uint64_t seed);

}  // namespace svgp
