#include "svgp/inducing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "svgp/basis.hpp"
#include "svgp/errors.hpp"
#include "svgp/linalg.hpp"
#include "svgp/rng.hpp"

namespace svgp {

const char* to_string(InducingKind kind) {
  switch (kind) {
    case InducingKind::kPopulationSpectral: return "population_spectral";
    case InducingKind::kSampleSpectral: return "sample_spectral";
    case InducingKind::kEquidistantPoints: return "equidistant";
    case InducingKind::kMdpp: return "mdpp";
  }
  return "unknown";
}

InducingKind inducing_kind_from_string(const std::string& name) {
  if (name == "population_spectral") return InducingKind::kPopulationSpectral;
  if (name == "sample_spectral") return InducingKind::kSampleSpectral;
  if (name == "equidistant") return InducingKind::kEquidistantPoints;
  if (name == "mdpp") return InducingKind::kMdpp;
  throw ConfigError("strategies: unknown strategy \"" + name +
                    "\" (expected population_spectral | sample_spectral | "
                    "equidistant | mdpp)");
}

Eigen::MatrixXd InducingBlocks::cross(const SpectralKernel& kernel,
                                      const Eigen::VectorXd& pts) const {
  switch (kind) {
    case InducingKind::kPopulationSpectral: {
      Eigen::MatrixXd phi = kernel.feature_matrix(pts, m);
      phi.array().rowwise() *= kernel.eigenvalues().head(m).transpose().array();
      return phi;
    }
    case InducingKind::kSampleSpectral:
      return kernel.cross(pts, design) * V;
    case InducingKind::kEquidistantPoints:
    case InducingKind::kMdpp:
      return kernel.cross(pts, z);
  }
  throw ConfigError("unknown inducing kind");
}

InducingBlocks population_spectral_blocks(const SpectralKernel& kernel,
                                          const Dataset& data, long m) {
  if (m < 1) throw ConfigError("m: must be >= 1, got " + std::to_string(m));
  if (m > kernel.terms())
    throw ConfigError("m: exceeds kernel series truncation (" + std::to_string(m) +
                      " > " + std::to_string(kernel.terms()) + ")");
  InducingBlocks b;
  b.kind = InducingKind::kPopulationSpectral;
  b.m = m;
  b.K_uu = kernel.eigenvalues().head(m).asDiagonal();
  b.K_fu = kernel.feature_matrix(data.x, m);
  b.K_fu.array().rowwise() *= kernel.eigenvalues().head(m).transpose().array();
  return b;
}

InducingBlocks sample_spectral_blocks(const SpectralKernel& kernel,
                                      const Dataset& data, long m) {
  if (m < 1) throw ConfigError("m: must be >= 1, got " + std::to_string(m));
  if (m > data.n())
    throw ConfigError("m: exceeds sample size (" + std::to_string(m) + " > " +
                      std::to_string(data.n()) + ")");
  EigenPairs eigen = kernel_matrix_eigen(kernel, data.x);
  const double cutoff = 1e-12 * eigen.values.sum();
  if (m > eigen.values.size() || !(eigen.values[m - 1] > cutoff))
    throw NumericError("sample spectral features: kernel matrix rank below m=" +
                       std::to_string(m) + " (series truncation " +
                       std::to_string(kernel.terms()) + ", n=" +
                       std::to_string(data.n()) + ")");
  InducingBlocks b;
  b.kind = InducingKind::kSampleSpectral;
  b.m = m;
  b.K_uu = Eigen::MatrixXd(eigen.values.head(m).asDiagonal());
  b.V = eigen.vectors.leftCols(m);
  b.K_fu = b.V * eigen.values.head(m).asDiagonal();
  b.design = data.x;
  return b;
}

Eigen::VectorXd equidistant_points(long m) {
  if (m < 1) throw ConfigError("m: must be >= 1, got " + std::to_string(m));
  Eigen::VectorXd z(m);
  const double width = (basis::kDomainHi - basis::kDomainLo) / m;
  for (long j = 0; j < m; ++j) z[j] = basis::kDomainLo + (j + 0.5) * width;
  return z;
}

InducingBlocks point_blocks(const SpectralKernel& kernel, const Dataset& data,
                            const Eigen::VectorXd& z, InducingKind kind) {
  if (z.size() < 1) throw ConfigError("inducing points: need at least one");
  for (long i = 0; i < z.size(); ++i)
    for (long j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) < 1e-12)
        throw ConfigError("inducing points: duplicates at positions " +
                          std::to_string(i) + " and " + std::to_string(j) +
                          " (singular K_uu)");
  InducingBlocks b;
  b.kind = kind;
  b.m = z.size();
  b.z = z;
  b.K_uu = kernel.gram(z);
  b.K_fu = kernel.cross(data.x, z);
  return b;
}

namespace {

std::vector<long> mdpp_from_eigen(const EigenPairs& eigen, long m, Rng& rng) {
  const long count = eigen.values.size();
  const long n = eigen.vectors.rows();
  const double trace = eigen.values.sum();
  long rank = 0;
  for (long i = 0; i < count; ++i)
    if (eigen.values[i] > 1e-12 * trace) ++rank;
  if (m > rank)
    throw ConfigError("m: exceeds effective rank of the subset kernel (" +
                      std::to_string(m) + " > " + std::to_string(rank) + ")");

  // Elementary symmetric polynomials over max-normalized eigenvalues:
  // E(k, i) = e_k(w_1..w_i). Selection ratios are scale-invariant.
  const double norm = eigen.values[0];
  Eigen::VectorXd w = eigen.values / norm;
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(m + 1, count + 1);
  E.row(0).setOnes();
  for (long k = 1; k <= m; ++k)
    for (long i = 1; i <= count; ++i)
      E(k, i) = E(k, i - 1) + w[i - 1] * E(k - 1, i - 1);

  std::vector<long> chosen_vectors;
  long k = m;
  for (long i = count; i >= 1 && k > 0; --i) {
    double prob;
    if (i == k) {
      prob = 1.0;  // all remaining eigenvectors forced
    } else {
      prob = (E(k, i) > 0.0) ? w[i - 1] * E(k - 1, i - 1) / E(k, i) : 0.0;
    }
    if (rng.uniform() < prob) {
      chosen_vectors.push_back(i - 1);
      --k;
    }
  }
  if (k != 0) throw NumericError("k-DPP eigenvector selection failed to reach size m");

  Eigen::MatrixXd W(n, m);
  for (long c = 0; c < m; ++c) W.col(c) = eigen.vectors.col(chosen_vectors[c]);

  // Sequential point selection: draw an index from the squared row norms,
  // eliminate that row's direction, re-orthonormalize the rest.
  std::vector<long> out;
  out.reserve(m);
  for (long t = m; t >= 1; --t) {
    Eigen::VectorXd rowsq = W.rowwise().squaredNorm();
    const double total = rowsq.sum();
    if (!(total > 0.0)) throw NumericError("k-DPP point selection: degenerate basis");
    double u = rng.uniform() * total;
    long pick = n - 1;
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      acc += rowsq[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    out.push_back(pick);
    if (t == 1) break;

    long pivot = 0;
    W.row(pick).cwiseAbs().maxCoeff(&pivot);
    const double pivot_value = W(pick, pivot);
    if (pivot_value == 0.0)
      throw NumericError("k-DPP point selection: zero pivot row");
    Eigen::VectorXd pivot_col = W.col(pivot);
    for (long c = 0; c < t; ++c) {
      if (c == pivot) continue;
      W.col(c) -= (W(pick, c) / pivot_value) * pivot_col;
    }
    // drop the pivot column, re-orthonormalize the remaining t-1 columns
    Eigen::MatrixXd reduced(n, t - 1);
    long dst = 0;
    for (long c = 0; c < t; ++c)
      if (c != pivot) reduced.col(dst++) = W.col(c);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(reduced);
    W = qr.householderQ() * Eigen::MatrixXd::Identity(n, t - 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

constexpr std::uint64_t kDppStream = 3;

}  // namespace

std::vector<long> mdpp_sample(const Eigen::MatrixXd& L, long m, std::uint64_t seed) {
  if (m < 1) throw ConfigError("m: must be >= 1, got " + std::to_string(m));
  if (L.rows() != L.cols()) throw ConfigError("subset kernel must be square");
  if (m > L.rows())
    throw ConfigError("m: exceeds matrix size (" + std::to_string(m) + " > " +
                      std::to_string(L.rows()) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
  if (solver.info() != Eigen::Success)
    throw NumericError("subset kernel eigendecomposition failed");
  EigenPairs eigen;
  eigen.values = solver.eigenvalues().reverse().cwiseMax(0.0);
  eigen.vectors = solver.eigenvectors().rowwise().reverse();
  Rng rng(derive_stream(seed, kDppStream));
  return mdpp_from_eigen(eigen, m, rng);
}

InducingBlocks mdpp_blocks(const SpectralKernel& kernel, const Dataset& data, long m,
                           std::uint64_t seed) {
  if (m < 1) throw ConfigError("m: must be >= 1, got " + std::to_string(m));
  if (m > data.n())
    throw ConfigError("m: exceeds sample size (" + std::to_string(m) + " > " +
                      std::to_string(data.n()) + ")");
  EigenPairs eigen = kernel_matrix_eigen(kernel, data.x);
  Rng rng(derive_stream(seed, kDppStream));
  std::vector<long> idx = mdpp_from_eigen(eigen, m, rng);
  Eigen::VectorXd z(m);
  for (long j = 0; j < m; ++j) z[j] = data.x[idx[j]];
  InducingBlocks b = point_blocks(kernel, data, z, InducingKind::kMdpp);
  b.indices = std::move(idx);
  return b;
}

InducingBlocks make_blocks(const SpectralKernel& kernel, const Dataset& data,
                           InducingKind kind, long m, std::uint64_t seed) {
  switch (kind) {
    case InducingKind::kPopulationSpectral:
      return population_spectral_blocks(kernel, data, m);
    case InducingKind::kSampleSpectral:
      return sample_spectral_blocks(kernel, data, m);
    case InducingKind::kEquidistantPoints:
      return point_blocks(kernel, data, equidistant_points(m));
    case InducingKind::kMdpp:
      return mdpp_blocks(kernel, data, m, seed);
  }
  throw ConfigError("unknown inducing kind");
}

}  // namespace svgp
