#include <doctest.h>

#include <cmath>

#include "ws/distr.hpp"
#include "ws/error.hpp"
#include "ws/quadrature.hpp"
#include "ws/serialize.hpp"
#include "ws/specfun.hpp"

using namespace ws;

namespace {

QuadTolerance tight() {
  QuadTolerance t;
  t.abs_tol = 1e-15;
  t.rel_tol = 1e-14;
  return t;
}

cplx phi_at(const TestFunction& f, double x, int k = 0) { return f.jet(x, k).derivative(k); }

GeneralizedFunction single(Coefficient c, SingularBasis b) {
  GeneralizedFunction d;
  d.add(std::move(c), b);
  return d;
}

// <(x-1)_+^lambda, phi> continued in lambda: on [0, t0] phi(1 + t) is replaced
// by its Taylor series at 1 and each power integrated exactly, the rest is an
// ordinary integral.  t0 sits well inside the series' disc of convergence.
cplx pow_plus_oracle(cplx lambda, const TestFunction& f) {
  const double t0 = 0.04, R = f.support_hi() - 1.0;
  const int N = f.max_order();
  const Jet j = f.jet(1.0, N);
  cplx s = 0.0;
  for (int k = 0; k <= N; ++k) s += j[k] * std::pow(t0, lambda + double(k) + 1.0) / (lambda + double(k) + 1.0);
  auto g = [&](double t) -> cplx { return std::exp(lambda * std::log(t)) * f.value(1.0 + t); };
  if (R > t0) s += integrate(g, t0, R, tight()).value;
  return s;
}

// Same for (x-1)_-^lambda through the reflection t = 1 - x.
cplx pow_minus_oracle(cplx lambda, const Bump& f) {
  class Reflected : public TestFunction {
   public:
    explicit Reflected(const Bump& b) : b_(b) {}
    double support_lo() const override { return 2.0 - b_.support_hi(); }
    double support_hi() const override { return 2.0 - b_.support_lo(); }
    int max_order() const override { return b_.max_order(); }
    Jet jet(double x, int order) const override {
      Jet j = b_.jet(2.0 - x, order);
      for (int k = 1; k <= order; k += 2) j[k] = -j[k];
      return j;
    }

   private:
    const Bump& b_;
  } r(f);
  return pow_plus_oracle(lambda, r);
}

// PV int phi(x)/(x-1) dx as a symmetric integral.
cplx pv_oracle(const Bump& f) {
  const double w = std::max(f.support_hi() - 1.0, 1.0 - f.support_lo());
  auto g = [&](double t) -> cplx { return t == 0.0 ? 2.0 * phi_at(f, 1.0, 1) : (f.value(1.0 + t) - f.value(1.0 - t)) / t; };
  return integrate(g, 0.0, w, tight()).value;
}

}  // namespace

TEST_CASE("regular term equals plain quadrature") {
  const Bump phi(1.3, 0.6);
  const Coefficient c(2.0, {Factor::power(0.5)});
  const cplx v = pair(single(c, SingularBasis::regular()), phi);
  auto f = [&](double x) -> cplx { return 2.0 * std::sqrt(x) * phi.value(x); };
  const cplx ref = integrate(f, 0.7, 1.9, tight()).value;
  CHECK(std::abs(v - ref) < 1e-13);
}

TEST_CASE("delta derivatives carry the (-1)^m sign") {
  const Bump phi(1.1, 0.5);
  const GeneralizedFunction d0 = single(Coefficient(1.0), SingularBasis::delta(0));
  const GeneralizedFunction d1 = single(Coefficient(1.0), SingularBasis::delta(1));
  CHECK(std::abs(pair(d0, phi) - phi.value(1.0)) < 1e-15);
  // Central difference with one Richardson step for phi'(1).
  auto cd = [&](double h) { return (phi.value(1.0 + h) - phi.value(1.0 - h)) / (2.0 * h); };
  const cplx dphi = (4.0 * cd(1e-3) - cd(2e-3)) / 3.0;
  CHECK(std::abs(pair(d1, phi) + dphi) < 1e-9);
}

TEST_CASE("principal value against the symmetric integral") {
  for (const Bump& phi : {Bump(1.1, 0.4), Bump(0.9, 0.5), Bump(1.0, 0.05)}) {
    const cplx v = pair(single(Coefficient(1.0), SingularBasis::principal_value()), phi);
    CHECK(std::abs(v - pv_oracle(phi)) < 1e-11);
  }
  // Support away from x = 1: an ordinary integral.
  const Bump far(2.0, 0.3);
  auto f = [&](double x) -> cplx { return far.value(x) / (x - 1.0); };
  const cplx v = pair(single(Coefficient(1.0), SingularBasis::principal_value()), far);
  CHECK(std::abs(v - integrate(f, 1.7, 2.3, tight()).value) < 1e-13);
}

TEST_CASE("one-sided powers against Taylor-split integrals") {
  const Bump phi(1.15, 0.45, 30);
  for (cplx l : {cplx(-0.5), cplx(0.7), cplx(-1.5), cplx(-2.5), cplx(-0.5, 0.7), cplx(-1.3, -0.4), cplx(-3.2)}) {
    CAPTURE(l);
    const cplx vp = pair(single(Coefficient(1.0), SingularBasis::pow_plus(l)), phi);
    const cplx vm = pair(single(Coefficient(1.0), SingularBasis::pow_minus(l)), phi);
    CHECK(std::abs(vp - pow_plus_oracle(l, phi)) < 1e-10 * std::max(1.0, std::abs(vp)));
    CHECK(std::abs(vm - pow_minus_oracle(l, phi)) < 1e-10 * std::max(1.0, std::abs(vm)));
  }
}

TEST_CASE("coefficient multiplies inside the one-sided power") {
  const Bump phi(1.2, 0.5);
  const Coefficient c(1.0, {Factor::power(-0.7), Factor::shift_power(0.5)});
  const cplx v = pair(single(c, SingularBasis::pow_plus(-0.4)), phi);
  auto g = [&](double t) -> cplx {
    const double x = 1.0 + t;
    return std::pow(t, -0.4) * std::pow(x, -0.7) * std::sqrt(1.0 + x) * phi.value(x);
  };
  const cplx ref = integrate_endpoints(g, 0.0, 0.7, Endpoint::power(-0.4), Endpoint::smooth(), tight()).value;
  CHECK(std::abs(v - ref) < 1e-12);
}

TEST_CASE("integration-by-parts depth does not change the value") {
  const Bump phi(1.05, 0.5);
  for (cplx l : {cplx(-0.3), cplx(-0.5, 0.7), cplx(-1.6)}) {
    const int d0 = default_ibp_depth(l);
    SingularBasis b = SingularBasis::pow_plus(l);
    b.depth = d0;
    const cplx ref = pair(single(Coefficient(1.0), b), phi);
    for (int extra = 1; extra <= 3; ++extra) {
      b.depth = d0 + extra;
      CHECK(std::abs(pair(single(Coefficient(1.0), b), phi) - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
  CHECK(default_ibp_depth(-0.3) == 0);
  CHECK(default_ibp_depth(-0.5) == 0);
  CHECK(default_ibp_depth(-1.6) == 2);
}

TEST_CASE("weak derivative: <D', phi> = -<D, phi'>") {
  const Bump phi(1.1, 0.6);
  const DerivedTest dphi(phi, 1);
  const Coefficient c(1.0, {Factor::power(0.3)});
  for (SingularBasis b : {SingularBasis::pow_plus(-0.5), SingularBasis::pow_minus(0.4), SingularBasis::heaviside(),
                          SingularBasis::log_abs(), SingularBasis::principal_value(), SingularBasis::delta(1),
                          SingularBasis::boundary_power(-0.25, Side::Minus)}) {
    CAPTURE(to_string(b.kind));
    const GeneralizedFunction d = single(c, b);
    CHECK(std::abs(pair(differentiate(d), phi) + pair(d, dphi)) < 1e-10);
  }
}

TEST_CASE("Sokhotski: (x - 1 + i0)^{-1} = PV - i pi delta") {
  const Bump phi(1.1, 0.4);
  const cplx pv = pv_oracle(phi);
  const cplx plus = pair(single(Coefficient(1.0), SingularBasis::boundary_power(-1.0, Side::Plus)), phi);
  const cplx minus = pair(single(Coefficient(1.0), SingularBasis::boundary_power(-1.0, Side::Minus)), phi);
  CHECK(std::abs(plus - (pv - cplx(0.0, kPi) * phi.value(1.0))) < 1e-11);
  CHECK(std::abs(minus - (pv + cplx(0.0, kPi) * phi.value(1.0))) < 1e-11);
}

TEST_CASE("boundary powers: definition and conjugate sides") {
  const Bump phi(0.95, 0.5, 30);
  for (double l : {-0.4, 0.6, -1.7, -2.0, -3.0}) {
    CAPTURE(l);
    const cplx plus = pair(single(Coefficient(1.0), SingularBasis::boundary_power(l, Side::Plus)), phi);
    const cplx minus = pair(single(Coefficient(1.0), SingularBasis::boundary_power(l, Side::Minus)), phi);
    CHECK(std::abs(plus - std::conj(minus)) < 1e-11 * std::max(1.0, std::abs(plus)));
    if (l != std::nearbyint(l)) {
      const cplx ref = pow_plus_oracle(l, phi) + std::exp(cplx(0.0, kPi * l)) * pow_minus_oracle(l, phi);
      CHECK(std::abs(plus - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("JSON round trip preserves the pairing") {
  GeneralizedFunction d;
  d.add(Coefficient(cplx(0.5, -0.25), {Factor::power(0.3), Factor::hyp(0.4, 0.9, 1.7)}), SingularBasis::pow_plus(-0.6));
  d.add(Coefficient(2.0, {Factor::polynomial({1.0, cplx(0.0, 2.0)})}), SingularBasis::delta(2));
  d.add(Coefficient(-1.0, {Factor::log_smooth()}), SingularBasis::boundary_power(cplx(-1.2, 0.3), Side::Minus));
  d.add(Coefficient(1.0, {Factor::shift_power(-0.5)}), SingularBasis::principal_value());
  const Bump phi(1.0, 0.3);
  const json j = to_json(d);
  const GeneralizedFunction back = generalized_function_from_json(json::parse(j.dump()));
  CHECK(back.terms.size() == d.terms.size());
  CHECK(std::abs(pair(back, phi) - pair(d, phi)) < 1e-15 * std::max(1.0, std::abs(pair(d, phi))));
  CHECK(to_json(back).dump() == j.dump());

  GeneralizedFunction opaque;
  opaque.add(Coefficient(1.0, {Factor::lambda([](double, int k) { return Jet(k, 1.0); })}), SingularBasis::regular());
  CHECK_FALSE(opaque.terms[0].coeff.serializable());
  CHECK_THROWS_AS(to_json(opaque), Error);
}

TEST_CASE("test-function guards") {
  const Bump phi(1.0, 0.3, 2);
  CHECK_THROWS_AS(pair(single(Coefficient(1.0), SingularBasis::delta(5)), phi), Error);
}
