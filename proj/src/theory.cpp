#include "svgp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "svgp/errors.hpp"

namespace svgp {

double nu_factor(long n, double lambda, double sigma2) {
  if (n < 1) throw ConfigError("nu: n must be >= 1");
  if (!(sigma2 > 0.0)) throw ConfigError("nu: sigma^2 must be > 0");
  if (lambda < 0.0) throw ConfigError("nu: lambda must be >= 0");
  const double nl = static_cast<double>(n) * lambda;
  return nl / (sigma2 + nl);
}

long effective_dim(const Spectrum& spectrum, long n) {
  if (n < 1) throw ConfigError("effective_dim: n must be >= 1");
  // boundary guard: n lambda_j >= 1 up to 1e-9 relative rounding
  const auto qualifies = [&](long j) {
    return static_cast<double>(n) * spectrum.eigenvalue(j) >= 1.0 - 1e-9;
  };
  if (!qualifies(1)) return 0;
  long lo = 1, hi = 2;
  while (qualifies(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > (1L << 60)) throw NumericError("effective_dim: spectrum does not decay");
  }
  // eigenvalues nonincreasing: largest qualifying j lies in [lo, hi)
  while (lo + 1 < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (qualifies(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

RateTerms rate_terms(const Spectrum& spectrum, const TrueFunction& truth, long n,
                     long m, double sigma2) {
  if (n < 1) throw ConfigError("rate_terms: n must be >= 1");
  if (m < 0) throw ConfigError("rate_terms: m must be >= 0");
  if (!(sigma2 > 0.0)) throw ConfigError("rate_terms: sigma^2 must be > 0");
  if (truth.kind() != TruthKind::kZero && m > truth.truncation())
    throw ConfigError("rate_terms: truth truncation " +
                      std::to_string(truth.truncation()) + " is below m = " +
                      std::to_string(m));
  RateTerms out;
  out.nu.resize(m);
  double head_bias = 0.0, head_var = 0.0, head_spread = 0.0;
  for (long j = 1; j <= m; ++j) {
    const double nu = nu_factor(n, spectrum.eigenvalue(j), sigma2);
    out.nu[j - 1] = nu;
    const double c = truth.coefficient(j);
    head_bias += (1.0 - nu) * (1.0 - nu) * c * c;
    head_var += nu * nu;
    head_spread += nu;
  }
  out.B_n = head_bias + truth.tail_squared_beyond(m);
  out.W_n = head_var / static_cast<double>(n);
  out.V_n = head_spread / static_cast<double>(n) + spectrum.tail(m);
  out.R_n = (out.B_n + out.W_n) / out.V_n;
  out.J_n = effective_dim(spectrum, n);
  const double beta = truth.declared_beta();
  const double alpha =
      (spectrum.kind == SpectrumKind::kPolynomial && spectrum.alpha > 0.0)
          ? spectrum.alpha
          : std::max(beta, 1e-12);
  const double cap = std::min(alpha, std::max(beta, 1e-12));
  out.predicted_exponent = -cap / (spectrum.d + 2.0 * alpha);
  return out;
}

AltRateTerms alternative_rate_terms(const Spectrum& spectrum, const TrueFunction& truth,
                                    long n, long m) {
  if (n < 1) throw ConfigError("rate_terms: n must be >= 1");
  if (m < 0) throw ConfigError("rate_terms: m must be >= 0");
  AltRateTerms out;
  const long elbow = std::min(m, effective_dim(spectrum, n));
  double head_bias = 0.0;
  for (long j = 1; j <= elbow; ++j) {
    const double nl = static_cast<double>(n) * spectrum.eigenvalue(j);
    const double c = truth.coefficient(j);
    head_bias += c * c / (nl * nl);
  }
  out.B_alt = head_bias + truth.tail_squared_beyond(elbow);
  out.V_alt = static_cast<double>(elbow) / n + spectrum.tail(elbow);
  double mid_sq = 0.0;
  for (long j = elbow + 1; j <= m; ++j) {
    const double lam = spectrum.eigenvalue(j);
    mid_sq += lam * lam;
  }
  out.W_alt = static_cast<double>(elbow) / n + static_cast<double>(n) * mid_sq;
  return out;
}

const char* to_string(RateRegime regime) {
  switch (regime) {
    case RateRegime::kOptimal: return "optimal";
    case RateRegime::kUndersmoothed: return "undersmoothed";
    case RateRegime::kOversmoothed: return "oversmoothed";
    case RateRegime::kInsufficientM: return "insufficient-m";
  }
  return "unknown";
}

PredictedRate predicted_rate(double alpha, double beta, int d, double r) {
  if (!(alpha > 0.0)) throw ConfigError("predicted_rate: alpha must be > 0");
  if (!(beta > 0.0)) throw ConfigError("predicted_rate: beta must be > 0");
  if (d < 1) throw ConfigError("predicted_rate: d must be >= 1");
  PredictedRate out;
  out.exponent = -std::min(alpha, beta) / (d + 2.0 * alpha);
  if (r < static_cast<double>(d) / (d + 2.0 * alpha) - 1e-12) {
    out.regime = RateRegime::kInsufficientM;
  } else if (alpha == beta) {
    out.regime = RateRegime::kOptimal;
  } else if (alpha > beta) {
    out.regime = RateRegime::kOversmoothed;
  } else {
    out.regime = RateRegime::kUndersmoothed;
  }
  return out;
}

}  // namespace svgp
