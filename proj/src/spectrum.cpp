#include "svgp/spectrum.hpp"

#include <cmath>
#include <string>

#include "svgp/errors.hpp"

namespace svgp {

namespace {

void check_common(int d, double scale) {
  if (d < 1) throw ConfigError("spectrum.d: must be a positive integer, got " + std::to_string(d));
  if (!(scale > 0.0)) throw ConfigError("spectrum.scale: must be > 0, got " + std::to_string(scale));
}

// Upper incomplete gamma Gamma(d, z) for integer d >= 1:
// (d-1)! e^{-z} sum_{k=0}^{d-1} z^k / k!.
double upper_gamma_int(int d, double z) {
  double factorial = 1.0;
  for (int k = 2; k < d; ++k) factorial *= k;
  double sum = 0.0;
  double term = 1.0;  // z^k / k!
  for (int k = 0; k < d; ++k) {
    sum += term;
    term *= z / (k + 1);
  }
  return factorial * std::exp(-z) * sum;
}

// Tail of sum_{j > j0} exp(-tau j^{1/d}) for d >= 2: explicit summation of a
// leading block, then the integral remainder with a midpoint correction.
double exp_tail_general(double tau, int d, long j0) {
  constexpr long kBlock = 20000;
  double sum = 0.0;
  long j = j0 + 1;
  for (long k = 0; k < kBlock; ++k, ++j) {
    const double term = std::exp(-tau * std::pow(static_cast<double>(j), 1.0 / d));
    sum += term;
    if (term < 1e-18 * (sum + 1e-300)) return sum;
  }
  // Remainder sum_{i >= j} f(i) ~ integral_{j-1/2}^inf f(x) dx; substituting
  // u = x^{1/d} gives d tau^{-d} Gamma(d, tau (j-1/2)^{1/d}).
  const double u0 = std::pow(static_cast<double>(j) - 0.5, 1.0 / d);
  return sum + d * std::pow(tau, -d) * upper_gamma_int(d, tau * u0);
}

}  // namespace

Spectrum Spectrum::polynomial(double alpha, int d, double scale) {
  check_common(d, scale);
  if (!(alpha > 0.0)) throw ConfigError("spectrum.alpha: must be > 0, got " + std::to_string(alpha));
  Spectrum s;
  s.kind = SpectrumKind::kPolynomial;
  s.alpha = alpha;
  s.d = d;
  s.scale = scale;
  return s;
}

Spectrum Spectrum::exponential(double tau, int d, double scale) {
  check_common(d, scale);
  if (!(tau > 0.0)) throw ConfigError("spectrum.tau: must be > 0, got " + std::to_string(tau));
  Spectrum s;
  s.kind = SpectrumKind::kExponential;
  s.tau = tau;
  s.d = d;
  s.scale = scale;
  return s;
}

Spectrum Spectrum::exponential_rescaled(double tau, double scale) {
  check_common(1, scale);
  if (!(tau > 0.0)) throw ConfigError("spectrum.tau: must be > 0, got " + std::to_string(tau));
  Spectrum s;
  s.kind = SpectrumKind::kExponentialRescaled;
  s.tau = tau;
  s.d = 1;
  s.scale = scale;
  return s;
}

double Spectrum::eigenvalue(long j) const {
  if (j < 1) throw ConfigError("eigenvalue index must be >= 1, got " + std::to_string(j));
  const double x = static_cast<double>(j);
  switch (kind) {
    case SpectrumKind::kPolynomial:
      return scale * std::pow(x, -1.0 - 2.0 * alpha / d);
    case SpectrumKind::kExponential:
      return scale * std::exp(-tau * std::pow(x, 1.0 / d));
    case SpectrumKind::kExponentialRescaled:
      return scale * tau * std::exp(-tau * x / 4.0);
  }
  return 0.0;
}

double Spectrum::tail(long j0) const {
  if (j0 < 0) throw ConfigError("tail start must be >= 0, got " + std::to_string(j0));
  switch (kind) {
    case SpectrumKind::kPolynomial:
      return scale * hurwitz_zeta(1.0 + 2.0 * alpha / d, static_cast<double>(j0 + 1));
    case SpectrumKind::kExponential: {
      if (d == 1) {
        const double q = std::exp(-tau);
        return scale * std::pow(q, static_cast<double>(j0 + 1)) / (1.0 - q);
      }
      return scale * exp_tail_general(tau, d, j0);
    }
    case SpectrumKind::kExponentialRescaled: {
      const double q = std::exp(-tau / 4.0);
      return scale * tau * std::pow(q, static_cast<double>(j0 + 1)) / (1.0 - q);
    }
  }
  return 0.0;
}

double Spectrum::tail_squared(long j0) const {
  if (j0 < 0) throw ConfigError("tail start must be >= 0, got " + std::to_string(j0));
  switch (kind) {
    case SpectrumKind::kPolynomial:
      return scale * scale * hurwitz_zeta(2.0 + 4.0 * alpha / d, static_cast<double>(j0 + 1));
    case SpectrumKind::kExponential: {
      if (d == 1) {
        const double q = std::exp(-2.0 * tau);
        return scale * scale * std::pow(q, static_cast<double>(j0 + 1)) / (1.0 - q);
      }
      return scale * scale * exp_tail_general(2.0 * tau, d, j0);
    }
    case SpectrumKind::kExponentialRescaled: {
      const double q = std::exp(-tau / 2.0);
      return scale * scale * tau * tau * std::pow(q, static_cast<double>(j0 + 1)) /
             (1.0 - q);
    }
  }
  return 0.0;
}

double Spectrum::trace() const { return tail(0); }

double rescaling_tau(long n, double alpha, int d) {
  if (n < 2) throw ConfigError("rescaling_tau: n must be >= 2, got " + std::to_string(n));
  if (!(alpha > 0.0)) throw ConfigError("rescaling_tau: alpha must be > 0");
  if (d < 1) throw ConfigError("rescaling_tau: d must be >= 1");
  const double x = static_cast<double>(n);
  return std::pow(x, -1.0 / (d + 2.0 * alpha)) * std::log(x);
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw ConfigError("hurwitz_zeta: requires s > 1");
  if (!(a > 0.0)) throw ConfigError("hurwitz_zeta: requires a > 0");
  // B_2, B_4, ..., B_16
  static constexpr double kBernoulli[] = {
      1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};
  constexpr int kDirect = 32;
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(a + k, -s);
  const double b = a + kDirect;
  sum += std::pow(b, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(b, -s);
  // Euler-Maclaurin corrections: B_{2r}/(2r)! * s(s+1)...(s+2r-2) * b^{-s-2r+1}
  double poch = s;            // rising factorial, 2r-1 factors
  double fact = 2.0;          // (2r)!
  double power = std::pow(b, -s - 1.0);
  for (int r = 1; r <= 8; ++r) {
    sum += kBernoulli[r - 1] / fact * poch * power;
    poch *= (s + 2.0 * r - 1.0) * (s + 2.0 * r);
    fact *= (2.0 * r + 1.0) * (2.0 * r + 2.0);
    power /= b * b;
  }
  return sum;
}

}  // namespace svgp
