#include "svgp/truth.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "svgp/basis.hpp"
#include "svgp/errors.hpp"
#include "svgp/spectrum.hpp"

namespace svgp {

namespace {

// 64-point Gauss-Legendre rule on [0,1], nodes by Newton iteration.
struct QuadRule {
  std::vector<double> node, weight;
};

const QuadRule& unit_gauss_legendre() {
  static const QuadRule rule = [] {
    constexpr int n = 64;
    QuadRule r;
    r.node.resize(n);
    r.weight.resize(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      r.node[i] = 0.5 * (1.0 + x);
      r.weight[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // *2, then /2 for [0,1]
    }
    return r;
  }();
  return rule;
}

// integral_M^inf x^(-1-2b) / log(x)^2 dx via x = M / t^(1/(2b)), which maps to
// (M^(-2b) / (2b)) * integral_0^1 dt / (log M + |log t|/(2b))^2.
double log_squared_power_tail(double M, double b) {
  const QuadRule& q = unit_gauss_legendre();
  const double logM = std::log(M);
  double acc = 0.0;
  for (std::size_t i = 0; i < q.node.size(); ++i) {
    const double denom = logM - std::log(q.node[i]) / (2.0 * b);
    acc += q.weight[i] / (denom * denom);
  }
  return std::pow(M, -2.0 * b) / (2.0 * b) * acc;
}

}  // namespace

TrueFunction TrueFunction::sparse_thirds(double beta, long j_max) {
  if (!(beta > 0.0)) throw ConfigError("truth.beta: must be > 0, got " + std::to_string(beta));
  if (j_max < 3) throw ConfigError("truth.j_max: must be >= 3, got " + std::to_string(j_max));
  TrueFunction f;
  f.kind_ = TruthKind::kSparseThirds;
  f.beta_ = beta;
  f.coef_ = Eigen::VectorXd::Zero(j_max);
  for (long j = 3; j <= j_max; j += 3)
    f.coef_[j - 1] = std::pow(static_cast<double>(j), -0.5 - beta) /
                     std::log(static_cast<double>(j));
  return f;
}

TrueFunction TrueFunction::heavy_tail(double p, double r, double beta, int d, long j_max) {
  if (d < 1) throw ConfigError("truth.d: must be a positive integer");
  if (!(beta > 0.0)) throw ConfigError("truth.beta: must be > 0");
  if (!(r > 0.0)) throw ConfigError("truth.r: must be > 0");
  if (j_max < 1) throw ConfigError("truth.j_max: must be >= 1");
  const double lower = 2.0 * r * beta / d;
  const double upper = 2.0 * beta / (d + 2.0 * beta);
  if (!(p > lower))
    throw ConfigError("truth.p: violates p > 2 r beta / d = " + std::to_string(lower));
  if (!(p < upper))
    throw ConfigError("truth.p: violates p < 2 beta / (d + 2 beta) = " + std::to_string(upper));
  TrueFunction f;
  f.kind_ = TruthKind::kHeavyTail;
  f.beta_ = beta;
  f.p_ = p;
  f.r_ = r;
  f.d_ = d;
  f.coef_.resize(j_max);
  const double expo = -0.5 * (1.0 + p / r);
  for (long j = 1; j <= j_max; ++j)
    f.coef_[j - 1] = std::pow(static_cast<double>(j), expo);
  return f;
}

TrueFunction TrueFunction::smooth_power(double q, double alpha, double beta, int d,
                                        long j_max) {
  if (d < 1) throw ConfigError("truth.d: must be a positive integer");
  if (!(beta > 0.0)) throw ConfigError("truth.beta: must be > 0");
  if (!(alpha > 0.0)) throw ConfigError("truth.alpha: must be > 0");
  if (j_max < 1) throw ConfigError("truth.j_max: must be >= 1");
  if (!(q > beta / d))
    throw ConfigError("truth.q: violates q > beta / d = " + std::to_string(beta / d));
  if (!(q < alpha / d))
    throw ConfigError("truth.q: violates q < alpha / d = " + std::to_string(alpha / d));
  TrueFunction f;
  f.kind_ = TruthKind::kSmoothPower;
  f.beta_ = beta;
  f.q_ = q;
  f.d_ = d;
  f.coef_.resize(j_max);
  for (long j = 1; j <= j_max; ++j)
    f.coef_[j - 1] = std::pow(static_cast<double>(j), -0.5 - q);
  return f;
}

TrueFunction TrueFunction::zero() {
  TrueFunction f;
  f.kind_ = TruthKind::kZero;
  f.coef_ = Eigen::VectorXd::Zero(1);
  return f;
}

double TrueFunction::coefficient(long j) const {
  if (j < 1) throw ConfigError("coefficient index must be >= 1, got " + std::to_string(j));
  if (j > coef_.size()) return 0.0;
  return coef_[j - 1];
}

double TrueFunction::eval(double x) const {
  if (kind_ == TruthKind::kZero) return 0.0;
  Eigen::VectorXd phi(coef_.size());
  basis::eval_prefix(x, coef_.size(), phi.data());
  return coef_.dot(phi);
}

Eigen::VectorXd TrueFunction::eval(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(x.size());
  if (kind_ == TruthKind::kZero) {
    out.setZero();
    return out;
  }
  Eigen::VectorXd phi(coef_.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    basis::eval_prefix(x[i], coef_.size(), phi.data());
    out[i] = coef_.dot(phi);
  }
  return out;
}

double TrueFunction::analytic_remainder(long m) const {
  const double M = static_cast<double>(m);
  switch (kind_) {
    case TruthKind::kZero:
      return 0.0;
    case TruthKind::kSparseThirds:
      // multiples of 3 beyond m have density 1/3 along the integral bound
      return log_squared_power_tail(std::max(M, 3.0), beta_) / 3.0;
    case TruthKind::kHeavyTail:
      return hurwitz_zeta(1.0 + p_ / r_, M + 1.0);
    case TruthKind::kSmoothPower:
      return hurwitz_zeta(1.0 + 2.0 * q_, M + 1.0);
  }
  return 0.0;
}

double TrueFunction::tail_squared_beyond(long m) const {
  if (m < 0) throw ConfigError("tail start must be >= 0, got " + std::to_string(m));
  const long jf = coef_.size();
  double partial = 0.0;
  for (long j = std::max(m, 0L) + 1; j <= jf; ++j) {
    const double c = coef_[j - 1];
    partial += c * c;
  }
  return partial + analytic_remainder(std::max(m, jf));
}

double TrueFunction::l2_norm() const { return std::sqrt(l2_norm_squared()); }

SobolevNorm TrueFunction::sobolev_norm(double beta_q, int d) const {
  if (d < 1) throw ConfigError("sobolev d: must be a positive integer");
  SobolevNorm out;
  double sum = 0.0;
  for (long j = 1; j <= coef_.size(); ++j) {
    const double c = coef_[j - 1];
    if (c != 0.0) sum += std::pow(static_cast<double>(j), 2.0 * beta_q / d) * c * c;
  }
  out.value = std::sqrt(sum);
  switch (kind_) {
    case TruthKind::kZero:
      out.divergent = false;
      break;
    case TruthKind::kSparseThirds:
      // terms ~ j^(2 beta_q / d - 1 - 2 beta) / log^2 j: the log^2 factor
      // saves the boundary beta_q / d = beta
      out.divergent = beta_q > beta_ * d;
      break;
    case TruthKind::kHeavyTail:
      out.divergent = beta_q >= p_ * d / (2.0 * r_);
      break;
    case TruthKind::kSmoothPower:
      out.divergent = beta_q >= q_ * d;
      break;
  }
  return out;
}

}  // namespace svgp
