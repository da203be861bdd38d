#pragma once

namespace svgp {

// Eigenvalue sequences of the prior covariance operator, indexed j = 1, 2, ...
// All kinds are strictly positive and nonincreasing in j.
enum class SpectrumKind {
  kPolynomial,           // scale * j^(-1 - 2 alpha / d)
  kExponential,          // scale * exp(-tau * j^(1/d))
  kExponentialRescaled,  // scale * tau * exp(-tau * j / 4)
};

struct Spectrum {
  SpectrumKind kind = SpectrumKind::kPolynomial;
  double alpha = 0.0;  // polynomial smoothness exponent
  double tau = 0.0;    // exponential decay parameter
  int d = 1;           // input dimension entering the index calculus
  double scale = 1.0;

  static Spectrum polynomial(double alpha, int d = 1, double scale = 1.0);
  static Spectrum exponential(double tau, int d = 1, double scale = 1.0);
  static Spectrum exponential_rescaled(double tau, double scale = 1.0);

  double eigenvalue(long j) const;  // j >= 1

  // Closed-form partial sums (Hurwitz zeta / geometric series / integer-order
  // incomplete gamma); no truncation error beyond double rounding.
  double trace() const;               // sum_{j >= 1} lambda_j
  double tail(long j0) const;         // sum_{j > j0} lambda_j
  double tail_squared(long j0) const; // sum_{j > j0} lambda_j^2
};

// Sample-size-dependent decay parameter tau_n = n^(-1/(d + 2 alpha)) log n
// used by the rescaled-exponential family; n >= 2.
double rescaling_tau(long n, double alpha, int d = 1);

// Hurwitz zeta(s, a) = sum_{k >= 0} (a + k)^(-s) for s > 1, a > 0, by
// Euler-Maclaurin summation; relative error ~ 1e-15 for s in (1, 20].
double hurwitz_zeta(double s, double a);

}  // namespace svgp
