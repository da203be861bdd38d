#include <doctest.h>

#include <cmath>
#include <vector>

#include "svgp/basis.hpp"
#include "svgp/errors.hpp"
#include "svgp/kernel.hpp"
#include "svgp/rng.hpp"
#include "svgp/spectrum.hpp"

using namespace svgp;

namespace {

// Independent reference for the basis: direct trigonometric formulas.
double basis_reference(long j, double x) {
  if (j == 1) return 1.0;
  const double root2 = std::sqrt(2.0);
  const long ell = j / 2;
  if (j % 2 == 0) return root2 * std::cos(ell * x);
  return root2 * std::sin(ell * x);
}

}  // namespace

TEST_SUITE("spectrum_basis") {
  TEST_CASE("basis matches the trigonometric reference") {
    Rng rng(5);
    for (int rep = 0; rep < 50; ++rep) {
      const double x = rng.uniform(basis::kDomainLo, basis::kDomainHi);
      for (long j = 1; j <= 13; ++j)
        CHECK(basis::eval(j, x) ==
              doctest::Approx(basis_reference(j, x)).epsilon(1e-13).scale(1.0));
    }
    CHECK(basis::eval(3, M_PI / 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(basis::eval(1, -2.9) == 1.0);
    CHECK_THROWS_AS(basis::eval(0, 0.3), ConfigError);
  }

  TEST_CASE("prefix evaluation equals per-index evaluation") {
    Rng rng(6);
    std::vector<double> buf(40);
    for (int rep = 0; rep < 20; ++rep) {
      const double x = rng.uniform(basis::kDomainLo, basis::kDomainHi);
      basis::eval_prefix(x, 40, buf.data());
      for (long j = 1; j <= 40; ++j)
        CHECK(buf[j - 1] == doctest::Approx(basis::eval(j, x)).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("basis is orthonormal in L2 of the uniform law") {
    // Periodic trapezoid rule is exact for trigonometric polynomials once the
    // node count exceeds the highest frequency involved.
    const long N = 257;
    for (long i = 1; i <= 8; ++i) {
      for (long j = i; j <= 8; ++j) {
        double acc = 0.0;
        for (long k = 0; k < N; ++k) {
          const double x = basis::kDomainLo + (basis::kDomainHi - basis::kDomainLo) *
                                                  (double(k) / N);
          acc += basis::eval(i, x) * basis::eval(j, x);
        }
        acc /= double(N);
        CHECK(acc == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
      }
    }
  }

  TEST_CASE("basis sup norm is sqrt(2)") {
    double worst = 0.0;
    for (long j = 1; j <= 12; ++j)
      for (long k = 0; k <= 2000; ++k) {
        const double x =
            basis::kDomainLo + (basis::kDomainHi - basis::kDomainLo) * k / 2000.0;
        worst = std::max(worst, std::abs(basis::eval(j, x)));
      }
    CHECK(worst <= basis::kSupNorm + 1e-12);
    CHECK(basis::kSupNorm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }

  TEST_CASE("polynomial eigenvalues follow the power law") {
    const Spectrum s = Spectrum::polynomial(0.5, 1, 1.0);
    CHECK(s.eigenvalue(1) == 1.0);
    CHECK(s.eigenvalue(4) == doctest::Approx(0.0625).epsilon(1e-15));  // 4^{-2}
    CHECK(s.eigenvalue(10) == doctest::Approx(0.01).epsilon(1e-15));
    const Spectrum s2 = Spectrum::polynomial(1.0, 2, 3.0);  // 3 j^{-2}
    CHECK(s2.eigenvalue(5) == doctest::Approx(3.0 / 25.0).epsilon(1e-15));
    CHECK_THROWS_AS(s.eigenvalue(0), ConfigError);
  }

  TEST_CASE("exponential eigenvalues and rescaled variant") {
    const Spectrum e = Spectrum::exponential(0.3, 1, 1.0);
    CHECK(e.eigenvalue(5) == doctest::Approx(std::exp(-1.5)).epsilon(1e-15));
    const Spectrum e2 = Spectrum::exponential(0.5, 2, 2.0);
    CHECK(e2.eigenvalue(9) == doctest::Approx(2.0 * std::exp(-1.5)).epsilon(1e-14));
    const Spectrum r = Spectrum::exponential_rescaled(0.2, 1.0);
    CHECK(r.eigenvalue(4) ==
          doctest::Approx(0.2 * std::exp(-0.2)).epsilon(1e-15));  // 0.16374615061559636
  }

  TEST_CASE("rescaling tau follows n^{-1/(d+2a)} log n") {
    CHECK(rescaling_tau(2500, 0.5, 1) ==
          doctest::Approx(std::log(2500.0) / 50.0).epsilon(1e-14));
    CHECK(rescaling_tau(2, 0.5, 1) ==
          doctest::Approx(std::pow(2.0, -0.5) * std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(rescaling_tau(1, 0.5, 1), ConfigError);
  }

  TEST_CASE("polynomial trace equals the Riemann zeta value") {
    const Spectrum s = Spectrum::polynomial(0.5, 1, 1.0);  // sum j^{-2}
    CHECK(s.trace() == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
    const Spectrum q = Spectrum::polynomial(1.5, 1, 2.0);  // 2 sum j^{-4}
    CHECK(q.trace() == doctest::Approx(2.0 * std::pow(M_PI, 4) / 90.0).epsilon(1e-12));
  }

  TEST_CASE("tails agree with brute-force partial sums") {
    const Spectrum cases[] = {Spectrum::polynomial(0.5, 1, 1.0),
                              Spectrum::polynomial(0.75, 2, 0.7),
                              Spectrum::exponential(0.5, 1, 1.3),
                              Spectrum::exponential(0.8, 2, 1.0),
                              Spectrum::exponential_rescaled(0.3, 2.0)};
    for (const Spectrum& s : cases) {
      for (long j0 : {0L, 1L, 7L, 40L}) {
        double partial = 0.0;
        for (long j = 1; j <= j0; ++j) partial += s.eigenvalue(j);
        // partial + tail reconstructs the trace (tail(j0) itself can be tiny,
        // so compare on the trace scale)
        CHECK(partial + s.tail(j0) == doctest::Approx(s.trace()).epsilon(1e-12));
        double partial_sq = 0.0;
        for (long j = j0 + 1; j <= j0 + 200000; ++j) {
          const double lam = s.eigenvalue(j);
          partial_sq += lam * lam;
          if (lam * lam < 1e-22 * partial_sq) break;
        }
        CHECK(s.tail_squared(j0) == doctest::Approx(partial_sq).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("exponential tail has the geometric closed form") {
    const Spectrum e = Spectrum::exponential(0.5, 1, 1.0);
    const double expected = std::exp(-0.5 * 11.0) / (1.0 - std::exp(-0.5));
    CHECK(e.tail(10) == doctest::Approx(expected).epsilon(1e-13));
  }

  TEST_CASE("hurwitz zeta matches brute-force evaluation") {
    // references built from published Riemann zeta values:
    //   zeta(1.5) = 2.6123753486854883433..., zeta(2.5) = 1.3414872572509171798...
    const double zeta_15 = 2.612375348685488343348567567924;
    const double zeta_25 = 1.341487257250917179756769693348;
    CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
    // zeta(s, 3) = zeta(s) - 1 - 2^{-s}
    CHECK(hurwitz_zeta(1.5, 3.0) ==
          doctest::Approx(zeta_15 - 1.0 - std::pow(2.0, -1.5)).epsilon(1e-13));
    // zeta(s, 1/2) = (2^s - 1) zeta(s); peel off the first ten terms
    double head = 0.0;
    for (int k = 0; k < 10; ++k) head += std::pow(0.5 + k, -2.5);
    CHECK(hurwitz_zeta(2.5, 10.5) ==
          doctest::Approx((std::pow(2.0, 2.5) - 1.0) * zeta_25 - head).epsilon(1e-12));
    CHECK(hurwitz_zeta(4.0, 1.0) == doctest::Approx(std::pow(M_PI, 4) / 90.0).epsilon(1e-13));
  }

  TEST_CASE("kernel truncation honors the tail tolerance") {
    Truncation trunc;
    trunc.tail_tol = 1e-6;
    trunc.max_terms = 100000;
    const Spectrum s = Spectrum::exponential(0.4, 1, 1.0);
    const SpectralKernel k(s, trunc);
    const double budget = trunc.tail_tol * s.trace();
    CHECK(s.tail(k.terms()) < budget);
    CHECK(s.tail(k.terms() - 1) >= budget);
    CHECK(k.tail_mass() == doctest::Approx(s.tail(k.terms())).epsilon(1e-14));
  }

  TEST_CASE("slowly decaying spectra hit the term cap") {
    Truncation trunc;  // defaults: tol 1e-8, cap 8192
    const Spectrum s = Spectrum::polynomial(0.5, 1, 1.0);
    const SpectralKernel k(s, trunc);
    CHECK(k.terms() == trunc.max_terms);
    CHECK(k.tail_mass() > 0.0);
  }

  TEST_CASE("kernel evaluation equals the truncated series") {
    Truncation trunc;
    trunc.tail_tol = 1e-10;
    const Spectrum s = Spectrum::exponential(0.6, 1, 1.0);
    const SpectralKernel k(s, trunc);
    Rng rng(17);
    for (int rep = 0; rep < 25; ++rep) {
      const double x = rng.uniform(basis::kDomainLo, basis::kDomainHi);
      const double y = rng.uniform(basis::kDomainLo, basis::kDomainHi);
      double acc = 0.0;
      for (long j = 1; j <= k.terms(); ++j)
        acc += s.eigenvalue(j) * basis_reference(j, x) * basis_reference(j, y);
      CHECK(k.eval(x, y) == doctest::Approx(acc).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("gram, cross, diag and feature matrix are mutually consistent") {
    Truncation trunc;
    trunc.tail_tol = 1e-9;
    const Spectrum s = Spectrum::exponential(0.5, 1, 1.0);
    const SpectralKernel k(s, trunc);
    Rng rng(19);
    Eigen::VectorXd x(7), z(4);
    for (long i = 0; i < x.size(); ++i) x[i] = rng.uniform(-M_PI, M_PI);
    for (long i = 0; i < z.size(); ++i) z[i] = rng.uniform(-M_PI, M_PI);
    const Eigen::MatrixXd G = k.gram(x);
    CHECK((G - G.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    for (long i = 0; i < x.size(); ++i)
      for (long j = 0; j < x.size(); ++j)
        CHECK(G(i, j) == doctest::Approx(k.eval(x[i], x[j])).epsilon(1e-11).scale(1.0));
    const Eigen::MatrixXd C = k.cross(x, z);
    for (long i = 0; i < x.size(); ++i)
      for (long j = 0; j < z.size(); ++j)
        CHECK(C(i, j) == doctest::Approx(k.eval(x[i], z[j])).epsilon(1e-11).scale(1.0));
    for (long i = 0; i < x.size(); ++i)
      CHECK(k.diag(x[i]) == doctest::Approx(k.eval(x[i], x[i])).epsilon(1e-12));
    const Eigen::MatrixXd Phi = k.feature_matrix(x, k.terms());
    const Eigen::VectorXd lam = k.eigenvalues();
    const Eigen::MatrixXd G2 = Phi * lam.asDiagonal() * Phi.transpose();
    CHECK((G - G2).cwiseAbs().maxCoeff() < 1e-11);
  }
}
