#pragma once

// Kernels of functions of the Bessel operator H_mu = -d^2/dx^2 + (mu^2 - 1/4)/x^2
// on the half line, diagonalized by the Hankel transform F_mu.

#include <optional>
#include <utility>

#include "ws/distr.hpp"
#include "ws/wsint.hpp"

namespace ws {

struct KernelSpec {
  double mu = 0.0;
  double nu = 0.0;  // second order, wave-operator kernels only
  cplx gamma = 0.0;
  std::optional<std::pair<double, double>> window;  // spectral window [a, b], 0 < a < b
  Side sign = Side::Plus;
  // Accept mu or nu <= 1 for wave-operator kernels; results are tagged.
  bool allow_outside_hypothesis = false;
};

// Throws InvalidArgument when mu <= -1 or the window is malformed.
void validate(const KernelSpec& s);

// Kernel of 1_[a,b](H_mu):  int_{sqrt a}^{sqrt b} sqrt(xy) J_mu(x k) J_mu(y k) k dk.
double projection_kernel(const KernelSpec& s, double x, double y);

// A kernel value at (x, y): a number, or (coincident or distributional regime)
// a generalized function of the ratio r = x/y to be paired in r.
struct KernelValue {
  bool is_scalar = true;
  cplx value{};
  // y K(r y, y) in r = x/y, so that int K(x, y) f(x) dx = <dist, f(r y)>.
  GeneralizedFunction dist;
  std::vector<std::string> notes;
};

// Kernel of H_mu^gamma at (x, y).
KernelValue power_kernel(const KernelSpec& s, double x, double y);

// Kernel of Omega^{+-}_{mu,nu} H_nu^gamma: e^{+-i(mu-nu)pi/2} sqrt(x/y) y^{-2gamma-1} WS(mu, nu, 2gamma+1, x/y).
KernelValue wave_operator_kernel(const KernelSpec& s, double x, double y);

// int K(x, y) phi(x / y) dx for a distributional kernel value.
cplx pair_in_ratio(const KernelValue& k, const TestFunction& phi, const PairOptions& opt = {});

struct InvolutionGrid {
  double x_min = 1e-3;
  double x_max = 150.0;
  int points = 9000;
  // Residual measured on grid points inside this window.
  double check_lo = 0.25;
  double check_hi = 4.0;
};

// max |F_mu F_mu phi - phi| / max |phi| over the check window, F_mu
// discretized by the trapezoid rule in log x on a geometric grid.
double involution_residual(double mu, const TestFunction& phi, const InvolutionGrid& grid = {});

}  // namespace ws
