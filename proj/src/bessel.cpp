#include <cmath>
#include <complex>

#include "ws/error.hpp"
#include "ws/specfun.hpp"

namespace ws {

namespace {

using ldouble = long double;
using lcplx = std::complex<long double>;

constexpr int kMaxSeriesTerms = 500;
constexpr int kMaxAsymptoticTerms = 200;

bool is_integer_order(cplx nu, int& n) {
  if (nu.imag() != 0.0 || nu.real() != std::floor(nu.real())) return false;
  n = static_cast<int>(nu.real());
  return true;
}

// sum_k s^k (z^2/4)^k / (k! (nu+1)_k) in long double; the caller multiplies
// by (z/2)^nu / Gamma(nu+1).
lcplx bessel_power_sum(lcplx nu, lcplx z, int s) {
  const lcplx q = static_cast<ldouble>(s) * z * z / 4.0L;
  lcplx term = 1.0L;
  lcplx sum = 1.0L;
  const ldouble zabs = std::abs(z);
  int small = 0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    term *= q / (static_cast<ldouble>(k + 1) * (nu + static_cast<ldouble>(k + 1)));
    sum += term;
    if (std::abs(term) <= 1e-21L * std::abs(sum) && k > zabs) {
      if (++small >= 2) return sum;
    } else {
      small = 0;
    }
  }
  throw Error(ErrorCode::Convergence, "bessel series did not converge", kMaxSeriesTerms);
}

ldouble bessel_power_sum_real(ldouble nu, ldouble x, int s) {
  const ldouble q = static_cast<ldouble>(s) * x * x / 4.0L;
  ldouble term = 1.0L;
  ldouble sum = 1.0L;
  int small = 0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    term *= q / (static_cast<ldouble>(k + 1) * (nu + static_cast<ldouble>(k + 1)));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum) && k > x) {
      if (++small >= 2) return sum;
    } else {
      small = 0;
    }
  }
  throw Error(ErrorCode::Convergence, "bessel series did not converge", kMaxSeriesTerms);
}

// (z/2)^nu / Gamma(nu + 1) * sum, s = -1 for J and +1 for I.
cplx bessel_series(cplx nu, cplx z, int s) {
  int n = 0;
  if (is_integer_order(nu, n) && n < 0) {
    // J_{-n} = (-1)^n J_n, I_{-n} = I_n
    const cplx v = bessel_series(-nu, z, s);
    return (s < 0 && (n % 2 != 0)) ? -v : v;
  }
  if (z == cplx(0.0)) {
    if (nu == cplx(0.0)) return 1.0;
    if (nu.real() > 0.0) return 0.0;
    throw Error(ErrorCode::Domain, "bessel: singular at zero argument");
  }
  if (nu.imag() == 0.0 && z.imag() == 0.0 && z.real() > 0.0) {
    const ldouble sum = bessel_power_sum_real(nu.real(), z.real(), s);
    const cplx rg = rgamma(nu + 1.0);
    return std::pow(z.real() / 2.0, nu.real()) * rg * static_cast<double>(sum);
  }
  const lcplx sum = bessel_power_sum(lcplx(nu.real(), nu.imag()), lcplx(z.real(), z.imag()), s);
  const cplx pre = std::exp(nu * std::log(z / 2.0)) * rgamma(nu + 1.0);
  return pre * cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

// Coefficient ratio a_k / a_{k-1} of the Hankel expansion.
inline cplx hankel_coeff_ratio(cplx mu4, int k) {
  const double odd = 2.0 * k - 1.0;
  return (mu4 - odd * odd) / (8.0 * k);
}

// sum_k c^k a_k(nu) / z^k, truncated at the smallest term; c = +-i or +-1.
cplx hankel_tail_sum(cplx nu, cplx z, cplx c) {
  const cplx mu4 = 4.0 * nu * nu;
  cplx term = 1.0;
  cplx sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < kMaxAsymptoticTerms; ++k) {
    term *= hankel_coeff_ratio(mu4, k) * c / z;
    const double mag = std::abs(term);
    if (mag > prev && k > 2) break;  // asymptotic divergence: stop at the least term
    sum += term;
    if (mag <= 1e-17 * std::abs(sum)) break;
    prev = mag;
  }
  return sum;
}

// K by trapezoidal rule on  int_0^inf exp(-z cosh t) cosh(nu t) dt, valid for
// |arg z| <= pi/3.
cplx bessel_k_trapezoid(cplx nu, cplx z) {
  const double h = 0.04;
  cplx sum = 0.5 * std::exp(-z);
  for (int j = 1; j < 20000; ++j) {
    const double t = j * h;
    const cplx f = std::exp(-z * std::cosh(t)) * std::cosh(nu * t);
    sum += f;
    if (std::abs(f) <= 1e-19 * std::abs(sum) && t > 1.0) break;
  }
  return h * sum;
}

// Integer-order K_n by the logarithmic series, n >= 0.
cplx bessel_k_integer_series(int n, cplx zc) {
  const lcplx z(zc.real(), zc.imag());
  const lcplx half = z / 2.0L;
  const lcplx q = half * half;
  ldouble fact_nm1 = 1.0L;  // (n-1)!
  for (int j = 2; j < n; ++j) fact_nm1 *= j;

  lcplx first = 0.0L;
  if (n > 0) {
    // (1/2)(z/2)^{-n} sum_{k<n} (n-k-1)!/k! (-q)^k
    lcplx t = fact_nm1;  // k = 0 term
    lcplx s = t;
    for (int k = 1; k < n; ++k) {
      t *= -q / (static_cast<ldouble>(k) * static_cast<ldouble>(n - k));
      s += t;
    }
    first = 0.5L * s * std::pow(half, static_cast<ldouble>(-n));
  }

  const cplx in = bessel_series(static_cast<double>(n), zc, +1);
  const lcplx in_l(in.real(), in.imag());
  const lcplx logpart = ((n % 2 == 0) ? -1.0L : 1.0L) * std::log(half) * in_l;

  // (-1)^n (1/2)(z/2)^n sum_k [psi(k+1)+psi(n+k+1)] q^k / (k!(n+k)!)
  const ldouble euler = static_cast<ldouble>(kEulerGamma);
  ldouble psi_k1 = -euler;                 // psi(1)
  ldouble psi_nk1 = -euler;                // psi(n+1)
  for (int j = 1; j <= n; ++j) psi_nk1 += 1.0L / j;
  ldouble fact_n = 1.0L;
  for (int j = 2; j <= n; ++j) fact_n *= j;
  lcplx t = 1.0L / fact_n;
  lcplx s = (psi_k1 + psi_nk1) * t;
  int small = 0;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    t *= q / (static_cast<ldouble>(k) * static_cast<ldouble>(n + k));
    psi_k1 += 1.0L / k;
    psi_nk1 += 1.0L / (n + k);
    const lcplx term = (psi_k1 + psi_nk1) * t;
    s += term;
    if (std::abs(term) <= 1e-21L * std::abs(s) && k > std::abs(z)) {
      if (++small >= 2) break;
    } else {
      small = 0;
    }
  }
  const lcplx third = ((n % 2 == 0) ? 0.5L : -0.5L) * std::pow(half, static_cast<ldouble>(n)) * s;
  const lcplx total = first + logpart + third;
  return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

cplx bessel_k_series_noninteger(cplx nu, cplx z) {
  const cplx im = bessel_series(-nu, z, +1);
  const cplx ip = bessel_series(nu, z, +1);
  return kPi / (2.0 * sinpi(nu)) * (im - ip);
}

cplx bessel_k_series(cplx nu, cplx z) {
  int n = 0;
  if (is_integer_order(nu, n)) return bessel_k_integer_series(std::abs(n), z);
  const double d = distance_to_integer(nu);
  if (d < 1e-5) {
    // Quadratic interpolation across the integer in the order variable.
    const double h = 1e-3;
    const double n0 = std::nearbyint(nu.real());
    const cplx delta = nu - n0;
    const cplx k0 = bessel_k_integer_series(static_cast<int>(std::abs(n0)), z);
    const cplx kp = bessel_k_series_noninteger(n0 + h, z);
    const cplx km = bessel_k_series_noninteger(n0 - h, z);
    return k0 + delta * (kp - km) / (2.0 * h) + delta * delta * (kp - 2.0 * k0 + km) / (2.0 * h * h);
  }
  return bessel_k_series_noninteger(nu, z);
}

}  // namespace

cplx bessel_j_series(cplx order, cplx z) { return bessel_series(order, z, -1); }

cplx bessel_j_asymptotic(cplx nu, double x) {
  const cplx mu4 = 4.0 * nu * nu;
  cplx term = 1.0;
  cplx p = 1.0;
  cplx q = 0.0;
  double prev = 1.0;
  for (int k = 1; k < kMaxAsymptoticTerms; ++k) {
    term *= hankel_coeff_ratio(mu4, k) / x;
    const double mag = std::abs(term);
    if (mag > prev && k > 2) break;
    // k even: (-1)^{k/2} into P; k odd: (-1)^{(k-1)/2} into Q
    const int r = k % 4;
    if (r == 0) p += term;
    else if (r == 1) q += term;
    else if (r == 2) p -= term;
    else q -= term;
    if (mag <= 1e-17) break;
    prev = mag;
  }
  const cplx chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

cplx bessel_j(cplx order, double x) {
  if (x < 0.0) throw Error(ErrorCode::Domain, "bessel_j: negative argument");
  if (x > kBesselAsymptoticRadius && std::abs(order) < 0.5 * x) return bessel_j_asymptotic(order, x);
  return bessel_series(order, x, -1);
}

cplx bessel_i(cplx order, double x) {
  if (x < 0.0) throw Error(ErrorCode::Domain, "bessel_i: negative argument");
  if (x > kBesselAsymptoticRadius && std::abs(order) < 0.5 * x) {
    return std::exp(x) / std::sqrt(2.0 * kPi * x) * hankel_tail_sum(order, x, -1.0);
  }
  return bessel_series(order, x, +1);
}

cplx bessel_k(cplx order, cplx z) {
  if (z == cplx(0.0)) throw Error(ErrorCode::Domain, "bessel_k: singular at zero");
  if (z.real() < 0.0) throw Error(ErrorCode::Domain, "bessel_k: requires Re z >= 0");
  if (order.real() < 0.0) order = -order;  // K is even in the order
  const double r = std::abs(z);
  if (r > kBesselAsymptoticRadius && std::abs(order) < 0.5 * r) {
    return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * hankel_tail_sum(order, z, 1.0);
  }
  if (r > 1.5 && z.real() >= 0.5 * r) return bessel_k_trapezoid(order, z);
  return bessel_k_series(order, z);
}

cplx hankel(Side sign, cplx order, double x) {
  if (x <= 0.0) throw Error(ErrorCode::Domain, "hankel: requires positive argument");
  const cplx i(0.0, 1.0);
  if (sign == Side::Plus) {
    return 2.0 / (i * kPi) * std::exp(-i * kPi * order / 2.0) * bessel_k(order, -i * x);
  }
  return -2.0 / (i * kPi) * std::exp(i * kPi * order / 2.0) * bessel_k(order, i * x);
}

cplx hankel_asymptotic(Side sign, cplx order, cplx z) {
  const cplx i(0.0, 1.0);
  const double s = sign == Side::Plus ? 1.0 : -1.0;
  const cplx omega = z - (0.5 * order + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * z)) * std::exp(s * i * omega) * hankel_tail_sum(order, z, s * i);
}

cplx hankel_modulation(Side sign, cplx order, cplx z) {
  return hankel_tail_sum(order, z, cplx(0.0, sign == Side::Plus ? 1.0 : -1.0));
}

}  // namespace ws
