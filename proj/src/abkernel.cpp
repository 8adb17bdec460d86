#include "ws/abkernel.hpp"

#include <algorithm>
#include <cmath>

#include "ws/error.hpp"
#include "ws/quadrature.hpp"
#include "ws/specfun.hpp"

namespace ws {

void validate(const KernelSpec& s) {
  if (!(s.mu > -1.0)) throw Error(ErrorCode::InvalidArgument, "kernel: need mu > -1");
  if (s.window) {
    const auto [a, b] = *s.window;
    if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
      throw Error(ErrorCode::InvalidArgument, "kernel: window must satisfy 0 < a < b < inf");
    }
  }
}

namespace {

void require_points(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel: x and y must be positive");
}

// prefactor * sqrt(x/y) y^{-rho} WS(mu, nu, rho, x/y) with rho = 2 gamma + 1.
KernelValue ws_kernel(double mu, double nu, cplx gamma, double x, double y, cplx prefactor) {
  require_points(x, y);
  const cplx rho = 2.0 * gamma + 1.0;
  const double r = x / y;
  const cplx ypow = std::exp(-rho * std::log(y));
  KernelValue out;
  if (rho.real() < 1.0 && x != y) {
    out.value = prefactor * std::sqrt(r) * ypow * ws_function(mu, nu, rho, r);
    if (rho.real() >= 0.0) out.notes.push_back("Re(2gamma+1) in [0,1): pointwise value by analytic continuation");
    return out;
  }
  if (!(rho.real() > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "kernel: no value or distribution at x = y when Re(2gamma+1) <= 0");
  }
  const WSResult w = ws_distribution(mu, nu, rho);
  out.is_scalar = false;
  // dx = y dr: the stored distribution is y K(r y, y).
  out.dist = multiply(Coefficient(prefactor * ypow * y, {Factor::power(0.5)}), w.dist);
  out.notes = w.notes;
  out.notes.push_back("distribution in r = x/y; pair with a test function of r");
  return out;
}

}  // namespace

double projection_kernel(const KernelSpec& s, double x, double y) {
  validate(s);
  if (!s.window) throw Error(ErrorCode::InvalidArgument, "projection kernel needs a window [a, b]");
  require_points(x, y);
  const double lo = std::sqrt(s.window->first), hi = std::sqrt(s.window->second);
  const double sxy = std::sqrt(x * y);
  auto f = [&](double k) -> cplx {
    return sxy * (bessel_j(s.mu, x * k) * bessel_j(s.mu, y * k)).real() * k;
  };
  QuadTolerance tol;
  tol.abs_tol = 1e-15;
  tol.rel_tol = 1e-13;
  // Split the range into pieces of about one period of the faster factor.
  const double period = 2.0 * kPi / std::max(x, y);
  const int pieces = std::max(1, int((hi - lo) / period));
  double sum = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double a = lo + (hi - lo) * i / pieces, b = lo + (hi - lo) * (i + 1) / pieces;
    const QuadResult r = integrate(f, a, b, tol);
    if (!r.converged) throw Error(ErrorCode::Quadrature, "projection kernel: quadrature did not converge");
    sum += r.value.real();
  }
  return sum;
}

KernelValue power_kernel(const KernelSpec& s, double x, double y) {
  validate(s);
  return ws_kernel(s.mu, s.mu, s.gamma, x, y, 1.0);
}

KernelValue wave_operator_kernel(const KernelSpec& s, double x, double y) {
  validate(s);
  const bool inside = s.mu > 1.0 && s.nu > 1.0;
  if (!inside && !s.allow_outside_hypothesis) {
    throw Error(ErrorCode::Validity, "wave-operator kernel requires mu > 1 and nu > 1");
  }
  const double sg = s.sign == Side::Plus ? 1.0 : -1.0;
  const cplx phase = std::exp(cplx(0.0, sg * (s.mu - s.nu) * kPi / 2.0));
  KernelValue k = ws_kernel(s.mu, s.nu, s.gamma, x, y, phase);
  if (!inside) k.notes.push_back("outside hypothesis mu, nu > 1");
  return k;
}

cplx pair_in_ratio(const KernelValue& k, const TestFunction& phi, const PairOptions& opt) {
  if (k.is_scalar) throw Error(ErrorCode::InvalidArgument, "kernel value is pointwise; nothing to pair");
  return pair(k.dist, phi, opt);
}

double involution_residual(double mu, const TestFunction& phi, const InvolutionGrid& grid) {
  if (!(grid.x_min > 0.0) || !(grid.x_max > grid.x_min) || grid.points < 2) {
    throw Error(ErrorCode::InvalidArgument, "involution grid: need 0 < x_min < x_max and at least 2 points");
  }
  const int n = grid.points;
  const double h = std::log(grid.x_max / grid.x_min) / (n - 1);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = grid.x_min * std::exp(h * i);
    w[i] = x[i] * h * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
  }
  auto kernel = [&](double a, double b) { return std::sqrt(a * b) * bessel_j(mu, a * b).real(); };

  // F phi on the whole grid; phi vanishes off its support.
  std::vector<int> supp;
  std::vector<double> fv(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (x[i] > phi.support_lo() && x[i] < phi.support_hi()) {
      supp.push_back(i);
      fv[i] = phi.value(x[i]).real();
    }
  }
  std::vector<double> g(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i : supp) s += kernel(x[j], x[i]) * fv[i] * w[i];
    g[j] = s;
  }
  double peak = 0.0, res = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x[i] < grid.check_lo || x[i] > grid.check_hi) continue;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += kernel(x[i], x[j]) * g[j] * w[j];
    res = std::max(res, std::abs(s - fv[i]));
    peak = std::max(peak, std::abs(fv[i]));
  }
  if (peak == 0.0) throw Error(ErrorCode::InvalidArgument, "involution check: test function vanishes on the window");
  return res / peak;
}

}  // namespace ws
