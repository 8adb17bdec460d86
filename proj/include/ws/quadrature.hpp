#pragma once

// Adaptive Gauss-Kronrod quadrature for complex-valued integrands, with
// power/log endpoint substitutions and fixed Gauss-Legendre rules.

#include <functional>
#include <vector>

#include "ws/types.hpp"

namespace ws {

using RealToComplex = std::function<cplx(double)>;

struct QuadResult {
  cplx value{};
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct QuadTolerance {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
};

// Adaptive G10/K21 on [a, b]; the interval with the largest error estimate is
// bisected first (deterministic).
QuadResult integrate(const RealToComplex& f, double a, double b, const QuadTolerance& tol = {});

// Behaviour of an integrand at one endpoint.
struct Endpoint {
  enum class Kind { Smooth, Power, Log } kind = Kind::Smooth;
  // exponent sigma for Power: integrand ~ |x - end|^sigma, Re sigma > -1
  double sigma = 0.0;

  static Endpoint smooth() { return {}; }
  static Endpoint power(double s) { return {Kind::Power, s}; }
  static Endpoint log() { return {Kind::Log, 0.0}; }
};

// As integrate(), but the interval is split at its midpoint and each half is
// mapped by x = end +- L u^p so that the endpoint behaviour becomes smooth.
QuadResult integrate_endpoints(const RealToComplex& f, double a, double b, Endpoint left, Endpoint right,
                               const QuadTolerance& tol = {});

// Integral over [a, inf) for integrands decaying at least exponentially,
// summed over panels of doubling width until three consecutive panels are
// negligible.
QuadResult integrate_to_infinity(const RealToComplex& f, double a, double first_width, const QuadTolerance& tol = {});

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule (cached, thread-safe).
const GaussRule& gauss_legendre(int n);

// Fixed-rule integral of f over [a, b] with `panels` equal panels.
cplx gauss_panels(const RealToComplex& f, double a, double b, int n, int panels);

}  // namespace ws
