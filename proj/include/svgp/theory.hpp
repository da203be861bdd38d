#pragma once

#include <Eigen/Dense>

#include "svgp/spectrum.hpp"
#include "svgp/truth.hpp"

namespace svgp {

// Closed-form finite-n quantities driving the contraction/coverage theory,
// in the noise-normalized convention:
//   nu_j = n lambda_j / (sigma^2 + n lambda_j)
//   B_n  = sum_{j<=m} (1-nu_j)^2 c_j^2 + sum_{j>m} c_j^2       (squared bias)
//   W_n  = (1/n) sum_{j<=m} nu_j^2                              (variance shape;
//          the estimator's sampling variance is sigma^2 W_n)
//   V_n  = (1/n) sum_{j<=m} nu_j + sum_{j>m} lambda_j           (posterior spread shape)
//   R_n  = (B_n + W_n) / V_n
//   J_n  = max{ j : n lambda_j >= 1 }, 0 when n lambda_1 < 1.
struct RateTerms {
  Eigen::VectorXd nu;  // nu_1..m
  double B_n = 0.0;
  double W_n = 0.0;
  double V_n = 0.0;
  double R_n = 0.0;
  long J_n = 0;
  double predicted_exponent = 0.0;  // norm-rate exponent -(beta ^ alpha)/(d + 2 alpha)
};

double nu_factor(long n, double lambda, double sigma2);

long effective_dim(const Spectrum& spectrum, long n);

RateTerms rate_terms(const Spectrum& spectrum, const TrueFunction& truth, long n,
                     long m, double sigma2);

// The coarser elbow-point forms (constants dropped by the theory):
//   B_alt = sum_{j <= m^Jn} (n lambda_j)^{-2} c_j^2 + sum_{j > m^Jn} c_j^2
//   V_alt = (m^Jn)/n + sum_{j > m^Jn} lambda_j
//   W_alt = (m^Jn)/n + n sum_{m^Jn < j <= m} lambda_j^2
// with m^Jn = min(m, J_n). Agree with the exact forms up to constant factors.
struct AltRateTerms {
  double B_alt = 0.0;
  double V_alt = 0.0;
  double W_alt = 0.0;
};
AltRateTerms alternative_rate_terms(const Spectrum& spectrum, const TrueFunction& truth,
                                    long n, long m);

enum class RateRegime { kOptimal, kUndersmoothed, kOversmoothed, kInsufficientM };
const char* to_string(RateRegime regime);

struct PredictedRate {
  double exponent = 0.0;  // of the L2-norm rate n^exponent
  RateRegime regime = RateRegime::kOptimal;
};

// alpha: prior smoothness (calibration parameter for rescaled-exponential
// priors), beta: truth smoothness, r: exponent of the m-rule m ~ n^r.
PredictedRate predicted_rate(double alpha, double beta, int d, double r);

}  // namespace svgp
