#include "ws/specfun.hpp"

#include <array>
#include <cmath>

#include "ws/error.hpp"

namespace ws {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Pole: return "pole";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Convergence: return "convergence";
    case ErrorCode::Validity: return "validity";
    case ErrorCode::UnsupportedDegenerate: return "unsupported-degenerate";
    case ErrorCode::InsufficientOrder: return "insufficient-derivative-order";
    case ErrorCode::Quadrature: return "quadrature";
    case ErrorCode::Extrapolation: return "extrapolation";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

namespace {

// Reduce x to r in [-1, 1] with x = r + 2m; sin/cos of pi r evaluated on
// [-1/2, 1/2] so that integer and half-integer arguments give exact zeros.
void sincospi_real(double x, double& s, double& c) {
  double r = x - 2.0 * std::nearbyint(x / 2.0);
  double sign_c = 1.0;
  if (r > 0.5) {
    r = 1.0 - r;
    sign_c = -1.0;
  } else if (r < -0.5) {
    r = -1.0 - r;
    sign_c = -1.0;
  }
  if (r == 0.0) {
    s = 0.0;
    c = sign_c;
    return;
  }
  if (std::abs(r) == 0.5) {
    s = r > 0 ? 1.0 : -1.0;
    c = 0.0;
    return;
  }
  s = std::sin(kPi * r);
  c = sign_c * std::cos(kPi * r);
}

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma for Re z >= 1/2.
cplx lgamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

double sinpi(double x) {
  double s, c;
  sincospi_real(x, s, c);
  return s;
}

double cospi(double x) {
  double s, c;
  sincospi_real(x, s, c);
  return c;
}

cplx sinpi(cplx z) {
  double s, c;
  sincospi_real(z.real(), s, c);
  const double y = kPi * z.imag();
  if (y == 0.0) return {s, 0.0};
  return {s * std::cosh(y), c * std::sinh(y)};
}

cplx cospi(cplx z) {
  double s, c;
  sincospi_real(z.real(), s, c);
  const double y = kPi * z.imag();
  if (y == 0.0) return {c, 0.0};
  return {c * std::cosh(y), -s * std::sinh(y)};
}

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

double distance_to_integer(cplx z) {
  return std::hypot(z.real() - std::nearbyint(z.real()), z.imag());
}

cplx lgamma(cplx z) {
  if (is_nonpositive_integer(z)) throw Error(ErrorCode::Pole, "lgamma: pole at non-positive integer");
  if (z.real() >= 0.5) return lgamma_right(z);
  return std::log(kPi) - std::log(sinpi(z)) - lgamma_right(1.0 - z);
}

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw Error(ErrorCode::Pole, "gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    const cplx s = sinpi(z);
    const cplx g = gamma(1.0 - z);
    return kPi / (s * g);
  }
  const cplx lg = lgamma_right(z);
  if (lg.real() > 709.0) throw Error(ErrorCode::Overflow, "gamma: result exceeds double range");
  // Positive integers: exact factorials keep the recurrence tight.
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()) && z.real() <= 30.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(z.real()); ++k) f *= k;
    return f;
  }
  return std::exp(lg);
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) {
    const cplx lg = lgamma_right(1.0 - z);
    if (lg.real() > 709.0) throw Error(ErrorCode::Overflow, "rgamma: reflection overflow");
    return sinpi(z) * std::exp(lg) / kPi;
  }
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()) && z.real() <= 30.0) {
    return 1.0 / gamma(z);
  }
  return std::exp(-lgamma_right(z));
}

cplx digamma(cplx z) {
  if (is_nonpositive_integer(z)) throw Error(ErrorCode::Pole, "digamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    // psi(z) = psi(1 - z) - pi cot(pi z)
    return digamma(1.0 - z) - kPi * cospi(z) / sinpi(z);
  }
  cplx acc = 0.0;
  while (std::abs(z) < 12.0 || z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const cplx iz2 = 1.0 / (z * z);
  // Bernoulli tail: B_{2k} / (2k z^{2k})
  static constexpr std::array<double, 8> kB = {
      1.0 / 12.0,    -1.0 / 120.0, 1.0 / 252.0,       -1.0 / 240.0,
      1.0 / 132.0,   -691.0 / 32760.0, 1.0 / 12.0,    -3617.0 / 8160.0};
  cplx tail = 0.0;
  cplx p = iz2;
  for (double b : kB) {
    tail += b * p;
    p *= iz2;
  }
  return acc + std::log(z) - 0.5 / z - tail;
}

cplx pochhammer(cplx a, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "pochhammer: negative k");
  cplx p = 1.0;
  for (int j = 0; j < k; ++j) p *= a + static_cast<double>(j);
  return p;
}

double harmonic(int n) {
  double h = 0.0;
  for (int j = 1; j <= n; ++j) h += 1.0 / j;
  return h;
}

}  // namespace ws
