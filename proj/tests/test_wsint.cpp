#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ws/error.hpp"
#include "ws/oracle.hpp"
#include "ws/specfun.hpp"
#include "ws/wsint.hpp"

using namespace ws;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

WSParams params(cplx mu, cplx nu, cplx rho, IntegralKind kind = IntegralKind::JJ, cplx arg = 1.0) {
  WSParams p;
  p.mu = mu;
  p.nu = nu;
  p.rho = rho;
  p.kind = kind;
  p.arg = arg;
  return p;
}

bool has_note(const WSResult& r, const std::string& needle) {
  return std::any_of(r.notes.begin(), r.notes.end(), [&](const std::string& s) { return s.find(needle) != s.npos; });
}

}  // namespace

TEST_CASE("discontinuous integrals with elementary values") {
  // int J_0(xk) J_1(k) dk: 1 below x = 1, 0 above
  CHECK(std::abs(ws_function(0.0, 1.0, 0.0, 0.4) - 1.0) < 1e-14);
  CHECK(std::abs(ws_function(0.0, 1.0, 0.0, 2.5)) < 1e-14);
  // int J_1(xk) J_0(k) dk: 0 below, 1/x above
  CHECK(std::abs(ws_function(1.0, 0.0, 0.0, 0.4)) < 1e-14);
  CHECK(std::abs(ws_function(1.0, 0.0, 0.0, 2.5) - 0.4) < 1e-14);
  // int J_mu(xk) J_mu(k) dk / k = min(x, 1/x)^mu / (2 mu)
  for (double mu : {0.5, 1.0, 2.7}) {
    for (double x : {0.3, 0.9, 1.2, 7.0}) {
      const double ref = std::pow(std::min(x, 1.0 / x), mu) / (2.0 * mu);
      CHECK(rel(ws_function(mu, mu, -1.0, x), ref) < 1e-13);
    }
  }
}

TEST_CASE("interchange: WS(mu, nu, rho; x) = x^{-rho-1} WS(nu, mu, rho; 1/x)") {
  const cplx cases[][3] = {{0.3, 1.1, -0.4}, {2.0, 0.5, 0.2}, {cplx(0.5, 0.3), 1.5, cplx(-0.2, 0.4)}, {1.0, 3.0, -1.5}};
  for (const auto& c : cases) {
    for (double x : {0.2, 0.7, 1.6, 9.0}) {
      CAPTURE(c[0]);
      CAPTURE(c[2]);
      CAPTURE(x);
      const cplx l = ws_function(c[0], c[1], c[2], x);
      const cplx r = std::pow(x, -c[2] - 1.0) * ws_function(c[1], c[0], c[2], 1.0 / x);
      CHECK(rel(l, r) < 1e-11);
    }
  }
}

TEST_CASE("pointwise values against brute-force quadrature") {
  const double cases[][3] = {{0.0, 0.0, -0.5}, {0.5, 1.5, -0.3}, {2.0, 1.0, 0.4}, {1.3, 0.0, -1.2}};
  for (const auto& c : cases) {
    for (double x : {0.5, 2.0}) {
      CAPTURE(c[0]);
      CAPTURE(c[1]);
      CAPTURE(c[2]);
      CAPTURE(x);
      const OracleValue o = quad_ws(params(c[0], c[1], c[2]), x);
      CHECK(rel(ws_function(c[0], c[1], c[2], x), o.value) < 1e-8);
    }
  }
}

TEST_CASE("closure at rho = 1 and mu = nu") {
  const Bump phi(1.05, 0.4);
  for (double nu : {0.0, 0.5, 2.0}) {
    const WSResult r = ws_distribution(nu, nu, 1.0);
    CHECK(r.regime == Regime::SpecialRho1);
    CHECK(std::abs(pair(r.dist, phi) - phi.value(1.0)) < 1e-8);
  }
}

TEST_CASE("distribution pairing against the Abel-summed oracle") {
  const Bump phi(0.9, 0.35);
  const cplx mu = 0.5, nu = 0.0, rho = 1.5;
  const cplx v = pair(ws_distribution(mu, nu, rho).dist, phi);
  const OracleValue o = quad_pairing(params(mu, nu, rho), phi);
  CHECK(std::abs(v - o.value) < 1e-6);
}

TEST_CASE("integer rho: continuity in nu") {
  // (mu, nu, rho) = (2, 0, 1) sits outside Re(rho+nu+1) > |Re mu| and hits the
  // degenerate T-block; it must match the nearby non-degenerate parameters.
  const Bump phi(1.2, 0.5);
  const WSResult r = ws_distribution(2.0, 0.0, 1.0);
  CHECK(has_note(r, "formula continued analytically"));
  const cplx v = pair(r.dist, phi);
  const cplx v1 = pair(ws_distribution(2.0, 1e-6, 1.0).dist, phi);
  const cplx v2 = pair(ws_distribution(2.0, -1e-6, 1.0).dist, phi);
  CHECK(std::abs(v - 0.5 * (v1 + v2)) < 1e-8);
  // rho just off an integer joins the integer branch continuously.
  const cplx w = pair(ws_distribution(0.7, 0.2, 2.0).dist, phi);
  const cplx w1 = pair(ws_distribution(0.7, 0.2, 2.0 + 1e-5).dist, phi);
  const cplx w2 = pair(ws_distribution(0.7, 0.2, 2.0 - 1e-5).dist, phi);
  CHECK(std::abs(w - 0.5 * (w1 + w2)) < 1e-6 * std::max(1.0, std::abs(w)));
}

TEST_CASE("Hankel kinds: conjugates whose mean is J.J") {
  for (double x : {0.45, 3.0}) {
    const WSResult hp = hankel_variant(Side::Plus, 0.7, 1.2, -0.3, x, false);
    const WSResult hm = hankel_variant(Side::Minus, 0.7, 1.2, -0.3, x, false);
    CHECK(std::abs(hp.value - std::conj(hm.value)) < 1e-13 * std::abs(hp.value));
    CHECK(rel(0.5 * (hp.value + hm.value), ws_function(0.7, 1.2, -0.3, x)) < 1e-12);
  }
  const Bump phi(1.0, 0.3);
  const WSResult dp = hankel_variant(Side::Plus, 0.7, 1.2, 1.4, 0.0, true);
  const WSResult dm = hankel_variant(Side::Minus, 0.7, 1.2, 1.4, 0.0, true);
  const cplx jj = pair(ws_distribution(0.7, 1.2, 1.4).dist, phi);
  CHECK(std::abs(0.5 * (pair(dp.dist, phi) + pair(dm.dist, phi)) - jj) < 1e-10 * std::max(1.0, std::abs(jj)));
}

TEST_CASE("validity: J.J by convergence, other kinds by the stated inequality") {
  CHECK(validity_violation(params(2.0, 0.0, 1.0)).empty());
  CHECK(validity_violation(params(-1.0, 0.0, -0.5)).find("Re(rho+mu+nu+1) > 0") != std::string::npos);
  CHECK(validity_violation(params(2.0, 0.0, 0.5, IntegralKind::HplusJ)).find("Re(rho+nu+1) > |Re mu|") !=
        std::string::npos);
  CHECK(classify(params(-1.0, 0.0, -0.5)) == Regime::Invalid);
  try {
    evaluate(params(2.0, 0.0, 0.5, IntegralKind::HminusJ, 2.0));
    FAIL("expected a validity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validity);
  }
  CHECK_THROWS_AS(ws_function(0.0, 0.0, -0.5, 1.0), Error);
  CHECK_THROWS_AS(ws_function(0.0, 0.0, 1.5, 2.0), Error);
}

TEST_CASE("degenerate parameters: continuity by default, error when strict") {
  WSParams p = params(0.0, 0.0, 3.0);
  p.symbolic = true;
  CHECK(literal_degenerate(p));
  CHECK(classify(p) == Regime::DistInteger);
  WSOptions strict;
  strict.strict_degenerate = true;
  CHECK(classify(p, strict) == Regime::DegenerateUnsupported);
  try {
    evaluate(p, strict);
    FAIL("expected a degenerate error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDegenerate);
    CHECK(std::string(e.what()).find("(1-rho+-mu+nu)/2 integer") != std::string::npos);
  }
  CHECK_NOTHROW(evaluate(p));
  p.mu = 0.5;
  CHECK_FALSE(literal_degenerate(p));
}

TEST_CASE("K kinds against quadrature") {
  const cplx cases[][4] = {{0.3, 0.5, 0.2, 2.0}, {1.2, 0.4, 1.5, cplx(1.5, 0.5)}, {0.0, 0.0, 0.5, 3.0}};
  for (const auto& c : cases) {
    for (IntegralKind kind : {IntegralKind::KJ, IntegralKind::KI}) {
      CAPTURE(to_string(kind));
      CAPTURE(c[3]);
      const WSParams p = params(c[0], c[1], c[2], kind, c[3]);
      CHECK(rel(evaluate(p).value, quad_kexp(p).value) < 1e-9);
    }
  }
  CHECK_THROWS_AS(kj_integral(0.3, 0.5, 0.2, -1.0), Error);
}

TEST_CASE("x < 1 branch uses x^2; the inverted control disagrees") {
  WSOptions wrong;
  wrong.inverted_small_x_argument = true;
  const double x = 0.5;
  const cplx ref = quad_ws(params(0.5, 1.5, -0.3), x).value;
  CHECK(rel(ws_function(0.5, 1.5, -0.3, x), ref) < 1e-8);
  CHECK(rel(ws_function(0.5, 1.5, -0.3, x, wrong), ref) > 1e-3);
}
