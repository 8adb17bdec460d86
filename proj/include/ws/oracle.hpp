#pragma once

// Brute-force reference values.  Nothing here touches the hypergeometric
// code: only the Bessel evaluators and the quadrature rules are shared.

#include <vector>

#include "ws/distr.hpp"
#include "ws/wsint.hpp"

namespace ws {

enum class Damping { Exponential, Gaussian };  // e^{-eps k} or e^{-(eps k)^2}

struct QuadConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_panels = 20000;
  std::vector<double> abel_eps_ladder{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  int extrapolation_order = 3;
  Damping damping = Damping::Exponential;
  // Worker threads for panel batches; 0 picks the hardware concurrency.
  int threads = 1;
};

// Throws InvalidArgument if the ladder is not strictly decreasing and
// positive, or a tolerance is not positive.
void validate(const QuadConfig& cfg);

struct OracleValue {
  cplx value{};
  double abs_error = 0.0;
  int panels = 0;
  double tail_estimate = 0.0;
  // Damped values, one per ladder member (pairings only).
  std::vector<cplx> ladder;
  // Value with no damping at all, from the same nodes (pairings only).
  cplx undamped{};
  // Extrapolated value under the other damping family (pairings only).
  cplx alternate{};
};

// The first `count` positive zeros of J_nu, nu > -1 real: McMahon's expansion
// polished by Newton steps.
std::vector<double> bessel_zeros(double nu, int count);

// int_0^inf k^rho A_mu(x k) J_nu(k) dk for A = J, H^+, H^- (p.kind), Re rho < 1,
// x != 1.  Panels between zeros of J_nu up to a cutoff; beyond it each
// exponential component of the large-argument expansion is integrated along
// a ray rotated into the half plane where it decays.
OracleValue quad_ws(const WSParams& p, double x, const QuadConfig& cfg = {});

// lim_{eps -> 0} int_0^inf D_eps(k) k^rho J_nu(k) int A_mu(x k) phi(x) dx dk,
// extrapolated over the eps ladder.
OracleValue quad_pairing(const WSParams& p, const TestFunction& phi, const QuadConfig& cfg = {});

// int_0^inf k^rho K_mu(z k) C_nu(k) dk with C = I (kind KI) or J (kind KJ),
// z = p.arg.
OracleValue quad_kexp(const WSParams& p, const QuadConfig& cfg = {});

// Polynomial extrapolation to eps = 0 through (eps_j, v_j), j <= order.
// Throws Error(Extrapolation) when successive extrapolants move apart.
cplx richardson(const std::vector<double>& eps, const std::vector<cplx>& v, int order, double* err = nullptr);

}  // namespace ws
