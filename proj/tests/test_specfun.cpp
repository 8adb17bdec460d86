#include <doctest.h>

#include <cmath>

#include "ws/error.hpp"
#include "ws/quadrature.hpp"
#include "ws/specfun.hpp"

using namespace ws;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

QuadTolerance tight() {
  QuadTolerance t;
  t.abs_tol = 1e-15;
  t.rel_tol = 1e-14;
  return t;
}

// Schlaefli: J_nu(x) = 1/pi int_0^pi cos(nu t - x sin t) dt - sin(nu pi)/pi int_0^inf exp(-x sinh t - nu t) dt.
// No large prefactor, so absolute accuracy carries over for every x.
double schlaefli_j(double nu, double x) {
  auto f = [&](double t) -> cplx { return std::cos(nu * t - x * std::sin(t)); };
  auto g = [&](double t) -> cplx { return std::exp(-x * std::sinh(t) - nu * t); };
  const int panels = 4 + int(x);
  double s = 0.0;
  for (int i = 0; i < panels; ++i) s += integrate(f, kPi * i / panels, kPi * (i + 1) / panels, tight()).value.real();
  const double tail = std::sin(nu * kPi) == 0.0 ? 0.0 : integrate_to_infinity(g, 0.0, 1.0, tight()).value.real();
  return (s - std::sin(nu * kPi) * tail) / kPi;
}

// K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt, Re z > 0.
cplx integral_k(cplx nu, cplx z) {
  auto f = [&](double t) -> cplx { return std::exp(-z * std::cosh(t)) * std::cosh(nu * t); };
  return integrate(f, 0.0, 40.0, tight()).value;
}

}  // namespace

TEST_CASE("gamma: known values, reflection and poles") {
  CHECK(rel(ws::gamma(cplx(0.5)), std::sqrt(kPi)) < 1e-15);
  CHECK(rel(ws::gamma(cplx(5.0)), 24.0) < 1e-15);
  CHECK(rel(ws::gamma(cplx(-0.5)), -2.0 * std::sqrt(kPi)) < 1e-14);
  const cplx z(0.3, 1.7);
  // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
  CHECK(rel(ws::gamma(z) * ws::gamma(1.0 - z), kPi / sinpi(z)) < 1e-13);
  // Gamma(z + 1) = z Gamma(z)
  CHECK(rel(ws::gamma(z + 1.0), z * ws::gamma(z)) < 1e-14);
  CHECK_THROWS_AS(ws::gamma(cplx(-3.0)), Error);
  CHECK(rgamma(cplx(-3.0)) == cplx(0.0));
  CHECK(rel(rgamma(z), 1.0 / ws::gamma(z)) < 1e-14);
}

TEST_CASE("digamma and harmonic numbers") {
  CHECK(std::abs(digamma(1.0) + kEulerGamma) < 1e-15);
  CHECK(std::abs(digamma(2.0) - digamma(1.0) - 1.0) < 1e-15);
  const cplx z(-0.7, 0.4);
  CHECK(rel(digamma(z + 1.0), digamma(z) + 1.0 / z) < 1e-13);
  // psi(1/2) = -gamma - 2 log 2
  CHECK(std::abs(digamma(0.5) - (-kEulerGamma - 2.0 * std::log(2.0))) < 1e-14);
  CHECK(std::abs(harmonic(4) - 25.0 / 12.0) < 1e-15);
  CHECK_THROWS_AS(digamma(0.0), Error);
}

TEST_CASE("sinpi and cospi vanish exactly") {
  CHECK(sinpi(3.0) == 0.0);
  CHECK(cospi(2.5) == 0.0);
  CHECK(sinpi(cplx(-2.0)) == cplx(0.0));
  CHECK(std::abs(sinpi(0.25) - std::sqrt(0.5)) < 2e-16);
  CHECK(pochhammer(cplx(-2.0), 3) == cplx(0.0));
  CHECK(rel(pochhammer(cplx(0.5), 3), 0.5 * 1.5 * 2.5) < 1e-15);
}

TEST_CASE("J_nu against the Schlaefli integral") {
  for (double nu : {0.0, 0.5, 1.5, 3.25}) {
    for (double x : {0.1, 1.0, 5.0, 11.0, 16.5, 17.5, 25.0, 60.0}) {
      CAPTURE(nu);
      CAPTURE(x);
      CHECK(std::abs(bessel_j(nu, x).real() - schlaefli_j(nu, x)) < 1e-13);
    }
  }
}

TEST_CASE("J_{1/2} and J_{-1/2} are elementary") {
  for (double x : {0.3, 2.0, 13.0, 40.0}) {
    const double s = std::sqrt(2.0 / (kPi * x));
    CHECK(std::abs(bessel_j(0.5, x).real() - s * std::sin(x)) < 1e-14);
    CHECK(std::abs(bessel_j(-0.5, x).real() - s * std::cos(x)) < 1e-14);
  }
}

TEST_CASE("series and asymptotic J agree across the crossover band") {
  for (double nu : {0.0, 0.7, 2.5}) {
    for (double x = 14.0; x <= 20.0; x += 0.75) {
      CAPTURE(nu);
      CAPTURE(x);
      CHECK(std::abs(bessel_j_series(nu, x) - bessel_j_asymptotic(nu, x)) < 1e-12);
    }
  }
}

TEST_CASE("Hankel functions: conjugate pair and Wronskian") {
  for (double nu : {0.0, 1.0 / 3.0, 2.0}) {
    for (double x : {0.4, 3.0, 19.0}) {
      const cplx hp = hankel(Side::Plus, nu, x), hm = hankel(Side::Minus, nu, x);
      CHECK(std::abs(hp - std::conj(hm)) < 1e-14 * std::abs(hp));
      CHECK(std::abs(0.5 * (hp + hm) - bessel_j(nu, x)) < 1e-13 * std::max(1.0, std::abs(hp)));
      // J_nu Y_{nu+1} - J_{nu+1} Y_nu = -2 / (pi x)
      const double y0 = hp.imag(), y1 = hankel(Side::Plus, nu + 1.0, x).imag();
      const double w = bessel_j(nu, x).real() * y1 - bessel_j(nu + 1.0, x).real() * y0;
      CHECK(std::abs(w + 2.0 / (kPi * x)) < 1e-12 * std::max(1.0, std::abs(y1 * y0)));
    }
  }
}

TEST_CASE("Hankel modulation factor reproduces the expansion") {
  const cplx nu = 0.75;
  for (cplx z : {cplx(30.0, 0.0), cplx(25.0, 10.0), cplx(40.0, -5.0)}) {
    for (Side s : {Side::Plus, Side::Minus}) {
      const double sg = sign_of(s);
      const cplx ph = std::exp(cplx(0.0, sg) * (z - (nu / 2.0 + 0.25) * kPi));
      const cplx built = std::sqrt(2.0 / (kPi * z)) * ph * hankel_modulation(s, nu, z);
      CHECK(std::abs(built - hankel_asymptotic(s, nu, z)) < 1e-14 * std::abs(built));
    }
  }
}

TEST_CASE("K_nu against its cosh integral") {
  for (cplx nu : {cplx(0.0), cplx(0.5), cplx(1.3), cplx(0.4, 0.6)}) {
    for (cplx z : {cplx(0.3), cplx(2.0), cplx(1.5, 1.0), cplx(24.0, -3.0)}) {
      CAPTURE(nu);
      CAPTURE(z);
      const cplx ref = integral_k(nu, z);
      CHECK(std::abs(bessel_k(nu, z) - ref) < 1e-12 * std::abs(ref));
    }
  }
}

TEST_CASE("I_nu from the series of J at imaginary argument") {
  for (double nu : {0.0, 0.5, 2.25}) {
    for (double x : {0.2, 3.0, 9.0}) {
      const cplx ref = std::exp(cplx(0.0, -0.5 * kPi * nu)) * bessel_j_series(nu, cplx(0.0, x));
      CHECK(rel(bessel_i(nu, x), ref) < 1e-13);
    }
  }
  // I_{1/2}(x) = sqrt(2 / (pi x)) sinh x
  CHECK(rel(bessel_i(0.5, 20.0), std::sqrt(2.0 / (kPi * 20.0)) * std::sinh(20.0)) < 1e-13);
}
