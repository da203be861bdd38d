#pragma once

#include <Eigen/Dense>

#include "svgp/spectrum.hpp"

namespace svgp {

// Series-truncation policy: the kernel keeps the smallest J with
// sum_{j>J} lambda_j < tail_tol * trace, capped at max_terms. The achieved
// tail mass is recorded; statistical quantities that need the full series
// (V_n, spread, radius law) use the closed-form tails from Spectrum instead
// of the truncated sum.
struct Truncation {
  double tail_tol = 1e-8;  // relative to the trace
  long max_terms = 8192;
};

// Mercer-form covariance k(x,y) = sum_{j<=J} lambda_j phi_j(x) phi_j(y) with
// the trigonometric basis; all Gram blocks are built from the same truncated
// series, so alternative evaluation routes agree to rounding error.
class SpectralKernel {
 public:
  explicit SpectralKernel(const Spectrum& spectrum, const Truncation& trunc = {});

  const Spectrum& spectrum() const { return spectrum_; }
  long terms() const { return terms_; }          // J
  double tail_mass() const { return tail_mass_; }  // sum_{j>J} lambda_j
  double trace_value() const { return trace_; }    // sum_{j>=1} lambda_j

  double eigenvalue(long j) const { return spectrum_.eigenvalue(j); }
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }  // 1..J

  double eval(double x, double y) const;
  double diag(double x) const { return eval(x, x); }

  // [k(a_i, b_j)]; gram(pts) = cross(pts, pts) exploiting symmetry.
  Eigen::MatrixXd gram(const Eigen::VectorXd& pts) const;
  Eigen::MatrixXd cross(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  // Basis matrix Phi (n x m), m <= J not required here; callers that pair it
  // with the truncated series must keep m <= terms().
  Eigen::MatrixXd feature_matrix(const Eigen::VectorXd& x, long m) const;

 private:
  Spectrum spectrum_;
  long terms_;
  double tail_mass_;
  double trace_;
  Eigen::VectorXd lambda_;
  Eigen::VectorXd sqrt_lambda_;
};

}  // namespace svgp
