#pragma once

#include <Eigen/Dense>

namespace svgp {

enum class TruthKind { kSparseThirds, kHeavyTail, kSmoothPower, kZero };

struct SobolevNorm {
  double value = 0.0;  // sqrt of the partial sum up to the truncation
  bool divergent = false;  // true when the infinite series is non-summable
};

// Regression function represented by basis coefficients c_j = <f0, phi_j>,
// stored densely up to a truncation, with a closed-form descriptor for the
// coefficient tail so L2/Sobolev functionals avoid truncation bias.
class TrueFunction {
 public:
  // c_j = j^(-1/2-beta) / log(j) when j is a multiple of 3, else 0.
  static TrueFunction sparse_thirds(double beta, long j_max = 10000);

  // c_j = j^(-(1+p/r)/2); admissible band 2 r beta / d < p < 2 beta / (d + 2 beta).
  static TrueFunction heavy_tail(double p, double r, double beta, int d = 1,
                                 long j_max = 10000);

  // c_j = j^(-1/2-q); admissible band beta / d < q < alpha / d.
  static TrueFunction smooth_power(double q, double alpha, double beta, int d = 1,
                                   long j_max = 10000);

  static TrueFunction zero();

  TruthKind kind() const { return kind_; }
  double declared_beta() const { return beta_; }
  long truncation() const { return coef_.size(); }
  double coefficient(long j) const;  // 0 beyond the truncation
  const Eigen::VectorXd& coefficients() const { return coef_; }  // entries 1..J_f

  double eval(double x) const;
  Eigen::VectorXd eval(const Eigen::VectorXd& x) const;

  // sum_{j>m} c_j^2: exact partial sum inside the truncation plus the
  // closed-form remainder of the infinite series beyond it.
  double tail_squared_beyond(long m) const;
  double l2_norm_squared() const { return tail_squared_beyond(0); }
  double l2_norm() const;

  // ||f||_{beta_q}^2 = sum j^(2 beta_q / d) c_j^2: partial sum up to the
  // truncation; the flag reports whether the infinite series diverges.
  SobolevNorm sobolev_norm(double beta_q, int d = 1) const;

 private:
  TruthKind kind_ = TruthKind::kZero;
  double beta_ = 0.0;  // declared smoothness
  double p_ = 0.0, r_ = 0.0, q_ = 0.0;
  int d_ = 1;
  Eigen::VectorXd coef_;

  double analytic_remainder(long m) const;  // sum_{j>m} c_j^2, m >= truncation-ish
};

}  // namespace svgp
