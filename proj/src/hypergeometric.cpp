#include "ws/hypergeometric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ws/error.hpp"
#include "ws/specfun.hpp"

namespace ws {

namespace {

// Mapped arguments above this modulus are not summed directly.
constexpr double kSeriesRadius = 0.85;
// Parameter gaps closer than this to an integer make a connection formula
// numerically useless; such transforms are skipped.
constexpr double kDegenerateGap = 1e-3;
constexpr int kMaxPolynomialDegree = 400;

struct Partial {
  cplx value;
  double err;
  int terms;
};

template <typename C>
Partial sum_series(cplx a, cplx b, cplx c, cplx z, cplx t0, const SeriesConfig& cfg) {
  using R = typename C::value_type;
  const C ca(a.real(), a.imag()), cb(b.real(), b.imag()), cc(c.real(), c.imag());
  const C cz(z.real(), z.imag());
  C term(t0.real(), t0.imag());
  C sum = term;
  R biggest = std::abs(term);
  int below = 0;
  for (int k = 0; k < cfg.max_terms; ++k) {
    const R kk = static_cast<R>(k);
    term *= (ca + kk) * (cb + kk) * cz / ((cc + kk) * (kk + R(1)));
    sum += term;
    const R mag = std::abs(term);
    biggest = std::max(biggest, mag);
    if (mag == R(0)) {
      // terminating (polynomial) series
      return {cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag())),
              static_cast<double>(biggest) * 1e-16 * (k + 1), k + 1};
    }
    if (mag <= static_cast<R>(cfg.rel_tol) * std::abs(sum)) {
      if (++below >= cfg.stop_run) {
        const double round = static_cast<double>(biggest) * std::numeric_limits<double>::epsilon() * std::sqrt(k + 1.0);
        return {cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag())),
                static_cast<double>(mag) + round, k + 1};
      }
    } else {
      below = 0;
    }
  }
  throw Error(ErrorCode::Convergence, "hypergeometric series hit the term cap", cfg.max_terms);
}

bool is_polynomial(cplx a, cplx b, int& degree) {
  for (cplx p : {a, b}) {
    if (is_nonpositive_integer(p) && -p.real() <= kMaxPolynomialDegree) {
      degree = static_cast<int>(-p.real());
      return true;
    }
  }
  return false;
}

// Direct Maclaurin sum of F(a,b;c;z)/Gamma(c).  Non-positive integer c uses
//   F/Gamma(c) at c = -m  equals  (a)_{m+1}(b)_{m+1} z^{m+1} F/Gamma(m+2)
// with shifted parameters.
Partial series_reg(cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg) {
  if (is_nonpositive_integer(c)) {
    const int m = static_cast<int>(-c.real());
    cplx pre = 1.0;
    for (int j = 0; j <= m; ++j) pre *= (a + double(j)) * (b + double(j)) * z;
    if (pre == cplx(0.0)) return {0.0, 0.0, 0};
    Partial p = series_reg(a + double(m + 1), b + double(m + 1), double(m + 2), z, cfg);
    return {pre * p.value, std::abs(pre) * p.err, p.terms};
  }
  const cplx t0 = rgamma(c);
  if (cfg.extended_precision) return sum_series<std::complex<long double>>(a, b, c, z, t0, cfg);
  return sum_series<cplx>(a, b, c, z, t0, cfg);
}

cplx cpow(cplx base, cplx e) {
  if (base == cplx(0.0)) return e == cplx(0.0) ? cplx(1.0) : cplx(0.0);
  return std::exp(e * std::log(base));
}

// --- ODE continuation -------------------------------------------------------

struct OdeState {
  cplx f;
  cplx df;
};

// Advance the solution of z(1-z)F'' + [c-(a+b+1)z]F' - abF = 0 from z0 by h
// using the local Taylor expansion.
OdeState taylor_step(cplx a, cplx b, cplx c, cplx z0, OdeState s, cplx h) {
  const cplx A0 = z0 * (1.0 - z0), A1 = 1.0 - 2.0 * z0;
  const double A2 = -1.0;
  const cplx B0 = c - (a + b + 1.0) * z0, B1 = -(a + b + 1.0);
  const cplx ab = a * b;
  cplx cm1 = s.f, c0 = s.df;  // c_n, c_{n+1}
  cplx hp = h;                // h^{n+1}
  cplx f = s.f + s.df * h;
  cplx df = s.df;
  const double scale = std::max(std::abs(s.f), std::abs(s.df) * std::abs(h));
  int small = 0;
  for (int n = 0; n < 2000; ++n) {
    const double dn = n;
    const cplx c2 = -((A1 * dn + B0) * (dn + 1.0) * c0 + (A2 * dn * (dn - 1.0) + B1 * dn - ab) * cm1) /
                    (A0 * (dn + 2.0) * (dn + 1.0));
    df += (dn + 2.0) * c2 * hp;
    hp *= h;
    const cplx t = c2 * hp;
    f += t;
    cm1 = c0;
    c0 = c2;
    if (std::abs(t) <= 1e-18 * std::max(scale, std::abs(f))) {
      if (++small >= 3) return {f, df};
    } else {
      small = 0;
    }
  }
  throw Error(ErrorCode::Convergence, "hypergeometric ODE continuation did not converge");
}

OdeState integrate_segment(cplx a, cplx b, cplx c, cplx from, cplx to, OdeState s) {
  cplx z = from;
  for (int guard = 0; guard < 10000; ++guard) {
    const cplx rem = to - z;
    const double remaining = std::abs(rem);
    if (remaining == 0.0) return s;
    const double dist = std::min(std::abs(z), std::abs(z - 1.0));
    const double step = std::min(0.5 * dist, remaining);
    const cplx h = (step == remaining) ? rem : rem * (step / remaining);
    s = taylor_step(a, b, c, z, s, h);
    z = (step == remaining) ? to : z + h;
  }
  throw Error(ErrorCode::Convergence, "hypergeometric ODE path too long");
}

cplx ode_reg(cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg) {
  // Path avoids the singular points 0 and 1; near the positive real axis
  // beyond 1 it detours through Im z = +-1/2 on the side of z.
  const double r = std::abs(z);
  const bool detour = z.real() > 0.75 && std::abs(z.imag()) < 0.5;
  std::vector<cplx> path;
  if (detour) {
    const double s = std::signbit(z.imag()) ? -1.0 : 1.0;
    path = {0.5, cplx(0.5, 0.5 * s), cplx(z.real(), 0.5 * s), z};
  } else {
    path = {0.5 * z / r, z};
  }
  const cplx z0 = path.front();
  OdeState st{series_reg(a, b, c, z0, cfg).value,
              a * b * series_reg(a + 1.0, b + 1.0, c + 1.0, z0, cfg).value};
  for (std::size_t i = 1; i < path.size(); ++i) st = integrate_segment(a, b, c, path[i - 1], path[i], st);
  return st.f;
}

// 1 - z and 1/z keeping the sign of a zero imaginary part (the side of the
// cut); plain complex arithmetic turns -0 into +0 here.
cplx one_minus(cplx z) { return {1.0 - z.real(), -z.imag()}; }
cplx reciprocal(cplx z) { return std::conj(z) / std::norm(z); }

// Regularized F around z = 1 when c - a - b = m is an integer (the
// logarithmic case of the 1 - z connection formula), |1 - z| < 1.
// Takes w = 1 - z itself, so that callers near z = 1 lose nothing forming it.
Partial one_minus_log_case(cplx a, cplx b, int m, cplx w, const SeriesConfig& cfg) {
  const cplx L = std::log(w);
  const int k = std::abs(m);
  // Finite part.
  cplx fin = 0.0;
  if (k > 0) {
    const cplx aa = m > 0 ? a : a - double(k), bb = m > 0 ? b : b - double(k);
    cplx t = 1.0, sum = 0.0;
    for (int n = 0; n < k; ++n) {
      sum += t;
      t *= (aa + double(n)) * (bb + double(n)) / (double(n + 1) * (1.0 - k + n)) * w;
    }
    const double gk = std::tgamma(double(k));
    fin = m > 0 ? gk * rgamma(a + double(k)) * rgamma(b + double(k)) * sum
                : gk * rgamma(a) * rgamma(b) * std::pow(w, -double(k)) * sum;
  }
  // Logarithmic series: sum (A)_n (B)_n / (n! (n+k)!) w^n [L - psi(n+1) - psi(n+k+1) + psi(A+n) + psi(B+n)].
  const cplx A = m > 0 ? a + double(k) : a, B = m > 0 ? b + double(k) : b;
  cplx psa = digamma(A), psb = digamma(B);
  double ps1 = -kEulerGamma, psk = digamma(cplx(double(k + 1))).real();
  double fact = std::tgamma(double(k + 1));  // (n+k)! n! running product
  cplx coef = 1.0 / fact;
  cplx sum = 0.0;
  int small = 0, n = 0;
  for (; n < cfg.max_terms; ++n) {
    const cplx term = coef * (L - ps1 - psk + psa + psb);
    sum += term;
    if (std::abs(term) <= cfg.rel_tol * 1e-2 * std::abs(sum)) {
      if (++small >= cfg.stop_run) break;
    } else {
      small = 0;
    }
    coef *= (A + double(n)) * (B + double(n)) / (double(n + 1) * double(n + k + 1)) * w;
    psa += 1.0 / (A + double(n));
    psb += 1.0 / (B + double(n));
    ps1 += 1.0 / double(n + 1);
    psk += 1.0 / double(n + k + 1);
  }
  if (n >= cfg.max_terms) throw Error(ErrorCode::Convergence, "logarithmic hypergeometric series hit the term cap", n);
  cplx pre;
  if (m >= 0) pre = -std::pow(-w, double(k)) * rgamma(a) * rgamma(b);
  else pre = -((k % 2 == 0) ? 1.0 : -1.0) * rgamma(a - double(k)) * rgamma(b - double(k));
  const cplx v = fin + pre * sum;
  return {v, 1e-15 * (std::abs(fin) + std::abs(pre * sum)), n};
}

// --- transformation engine --------------------------------------------------

enum class Map { Identity, Pfaff, OneMinus, Inverse, InverseOneMinus, OneMinusInverse };

Partial eval_reg(cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg);

// The 1 - z connection formula in w = 1 - z, c - a - b not an integer.
Partial one_minus_map(cplx a, cplx b, cplx c, cplx w, const SeriesConfig& cfg) {
  const cplx one = 1.0;
  const cplx s = c - a - b;
  const Partial p1 = series_reg(a, b, one - s, w, cfg);
  const Partial p2 = series_reg(c - a, c - b, one + s, w, cfg);
  const cplx k = kPi / sinpi(s);
  const cplx t1 = k * rgamma(c - a) * rgamma(c - b);
  const cplx t2 = k * cpow(w, s) * rgamma(a) * rgamma(b);
  return {t1 * p1.value - t2 * p2.value, std::abs(t1) * p1.err + std::abs(t2) * p2.err, p1.terms + p2.terms};
}

Partial apply_map(Map m, cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg) {
  const cplx one = 1.0;
  switch (m) {
    case Map::Identity:
      return series_reg(a, b, c, z, cfg);
    case Map::Pfaff: {
      const Partial p = series_reg(a, c - b, c, z / (z - one), cfg);
      const cplx pre = cpow(one_minus(z), -a);
      return {pre * p.value, std::abs(pre) * p.err, p.terms};
    }
    case Map::OneMinus:
      return one_minus_map(a, b, c, one_minus(z), cfg);
    case Map::Inverse: {
      const cplx w = reciprocal(z);
      const cplx mz = -z;
      const Partial p1 = series_reg(a, a - c + one, a - b + one, w, cfg);
      const Partial p2 = series_reg(b, b - c + one, b - a + one, w, cfg);
      const cplx k = kPi / sinpi(b - a);
      const cplx t1 = k * cpow(mz, -a) * rgamma(b) * rgamma(c - a);
      const cplx t2 = k * cpow(mz, -b) * rgamma(a) * rgamma(c - b);
      return {t1 * p1.value - t2 * p2.value, std::abs(t1) * p1.err + std::abs(t2) * p2.err, p1.terms + p2.terms};
    }
    case Map::InverseOneMinus: {
      const cplx u = one_minus(z);
      const cplx w = reciprocal(u);
      const Partial p1 = series_reg(a, c - b, a - b + one, w, cfg);
      const Partial p2 = series_reg(b, c - a, b - a + one, w, cfg);
      const cplx k = kPi / sinpi(b - a);
      const cplx t1 = k * cpow(u, -a) * rgamma(b) * rgamma(c - a);
      const cplx t2 = k * cpow(u, -b) * rgamma(a) * rgamma(c - b);
      return {t1 * p1.value - t2 * p2.value, std::abs(t1) * p1.err + std::abs(t2) * p2.err, p1.terms + p2.terms};
    }
    case Map::OneMinusInverse: {
      const cplx s = c - a - b;
      const cplx w = one_minus(reciprocal(z));
      const Partial p1 = series_reg(a, a - c + one, a + b - c + one, w, cfg);
      const Partial p2 = series_reg(c - a, one - a, s + one, w, cfg);
      const cplx k = kPi / sinpi(s);
      const cplx t1 = k * cpow(z, -a) * rgamma(c - a) * rgamma(c - b);
      const cplx t2 = k * cpow(one_minus(z), s) * cpow(z, a - c) * rgamma(a) * rgamma(b);
      return {t1 * p1.value - t2 * p2.value, std::abs(t1) * p1.err + std::abs(t2) * p2.err, p1.terms + p2.terms};
    }
  }
  return {0.0, 0.0, 0};
}

Partial eval_reg(cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg) {
  if (z == cplx(0.0) || a == cplx(0.0) || b == cplx(0.0)) return {rgamma(c), 0.0, 1};
  int degree = 0;
  if (is_polynomial(a, b, degree)) return series_reg(a, b, c, z, cfg);

  const cplx one = 1.0;
  const bool gap_s = distance_to_integer(c - a - b) < kDegenerateGap;
  const bool gap_ba = distance_to_integer(b - a) < kDegenerateGap;
  struct Candidate {
    Map map;
    double modulus;
    bool usable;
  };
  const Candidate cands[] = {
      {Map::Identity, std::abs(z), true},
      {Map::Pfaff, std::abs(z / (z - one)), true},
      {Map::OneMinus, std::abs(one - z), !gap_s},
      {Map::Inverse, 1.0 / std::abs(z), !gap_ba},
      {Map::InverseOneMinus, 1.0 / std::abs(one - z), !gap_ba},
      {Map::OneMinusInverse, std::abs(one - one / z), !gap_s},
  };
  const Candidate* best = nullptr;
  for (const Candidate& cd : cands) {
    if (!cd.usable) continue;
    if (best == nullptr || cd.modulus < best->modulus) best = &cd;
  }
  if (best != nullptr && best->modulus <= kSeriesRadius) return apply_map(best->map, a, b, c, z, cfg);
  // A map blocked only by an integer gap: the regularized function is entire
  // in the parameters, so average symmetric parameter shifts and extrapolate
  // in shift^2 to zero.
  const Candidate* blocked = nullptr;
  for (const Candidate& cd : cands) {
    if (cd.usable || cd.modulus > kSeriesRadius) continue;
    if (blocked == nullptr || cd.modulus < blocked->modulus) blocked = &cd;
  }
  const cplx gap = c - a - b;
  const double gap_int = std::nearbyint(gap.real());
  if (std::abs(gap - gap_int) < 1e-13 && std::abs(one - z) <= kSeriesRadius) {
    return one_minus_log_case(a, b, int(gap_int), one_minus(z), cfg);
  }
  // Integer b - a with |1 - z| large: Pfaff turns it into the logarithmic
  // case in 1/(1 - z) with gap b - a.
  const cplx gba = b - a;
  const double gba_int = std::nearbyint(gba.real());
  if (std::abs(gba - gba_int) < 1e-13 && 1.0 / std::abs(one - z) <= kSeriesRadius) {
    const Partial p = one_minus_log_case(a, c - b, int(gba_int), reciprocal(one_minus(z)), cfg);
    const cplx pre = cpow(one_minus(z), -a);
    return {pre * p.value, std::abs(pre) * p.err, p.terms};
  }
  if (blocked != nullptr) {
    const bool shift_c = blocked->map == Map::OneMinus || blocked->map == Map::OneMinusInverse;
    const double d = 5e-3;
    cplx sym[3];
    int terms = 0;
    for (int k = 1; k <= 3; ++k) {
      const double h = k * d;
      const Partial up = shift_c ? apply_map(blocked->map, a, b, c + h, z, cfg)
                                 : apply_map(blocked->map, a + h, b - h, c, z, cfg);
      const Partial dn = shift_c ? apply_map(blocked->map, a, b, c - h, z, cfg)
                                 : apply_map(blocked->map, a - h, b + h, c, z, cfg);
      sym[k - 1] = 0.5 * (up.value + dn.value);
      terms += up.terms + dn.terms;
    }
    // Lagrange weights at 0 for nodes d^2, 4d^2, 9d^2.
    const cplx v = 1.5 * sym[0] - 0.6 * sym[1] + 0.1 * sym[2];
    const cplx v2 = (4.0 * sym[0] - sym[1]) / 3.0;
    return {v, std::abs(v - v2) + 1e-13 * std::abs(v), terms};
  }
  const cplx v = ode_reg(a, b, c, z, cfg);
  return {v, 1e-14 * std::abs(v), 0};
}

SeriesResult pack(const Partial& p) {
  SeriesResult r;
  r.value = p.value;
  r.est_abs_error = p.err;
  r.terms_used = p.terms;
  r.converged = true;
  return r;
}

void reject_cut(cplx z) {
  if (z.imag() == 0.0 && z.real() > 1.0) {
    throw Error(ErrorCode::Domain, "hypergeometric argument on the branch cut [1, inf) needs a side tag");
  }
}

}  // namespace

SeriesResult hyp2f1_regularized(cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg) {
  reject_cut(z);
  if (z == cplx(1.0)) {
    // Gauss summation when it converges.
    const cplx s = c - a - b;
    if (s.real() <= 0.0) throw Error(ErrorCode::Domain, "hypergeometric diverges at z = 1");
    SeriesResult r;
    r.value = gamma(s) * rgamma(c - a) * rgamma(c - b);
    r.converged = true;
    return r;
  }
  return pack(eval_reg(a, b, c, z, cfg));
}

SeriesResult hyp2f1(cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg) {
  if (is_nonpositive_integer(c)) throw Error(ErrorCode::Pole, "hyp2f1: c is a non-positive integer");
  SeriesResult r = hyp2f1_regularized(a, b, c, z, cfg);
  const cplx g = gamma(c);
  r.value *= g;
  r.est_abs_error *= std::abs(g);
  return r;
}

cplx hyp2f1_regularized_boundary(cplx a, cplx b, cplx c, double x, Side side, const SeriesConfig& cfg) {
  if (!(x > 1.0)) throw Error(ErrorCode::Domain, "hyp2f1_boundary: requires x > 1");
  // Signed zero carries the side through every branch-cut function.
  const cplx z(x, side == Side::Plus ? -0.0 : 0.0);
  return eval_reg(a, b, c, z, cfg).value;
}

cplx hyp2f1_boundary(cplx a, cplx b, cplx c, double x, Side side, const SeriesConfig& cfg) {
  if (is_nonpositive_integer(c)) throw Error(ErrorCode::Pole, "hyp2f1: c is a non-positive integer");
  return gamma(c) * hyp2f1_regularized_boundary(a, b, c, x, side, cfg);
}

cplx hyp2f1_regularized_complement(cplx a, cplx b, cplx c, cplx w, const SeriesConfig& cfg) {
  int degree = 0;
  if (std::abs(w) <= kSeriesRadius && !is_polynomial(a, b, degree)) {
    const cplx gap = c - a - b;
    const double m = std::nearbyint(gap.real());
    if (std::abs(gap - m) < 1e-13) return one_minus_log_case(a, b, int(m), w, cfg).value;
    if (distance_to_integer(gap) >= kDegenerateGap) return one_minus_map(a, b, c, w, cfg).value;
  }
  return eval_reg(a, b, c, one_minus(w), cfg).value;
}

cplx hyp2f1_regularized_ode(cplx a, cplx b, cplx c, cplx z) { return ode_reg(a, b, c, z, SeriesConfig{}); }

cplx s_series(cplx mu, cplx nu, int n, cplx z) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "s_series: n must be a positive integer");
  const cplx ap = (1.0 - double(n) + mu + nu) / 2.0;
  const cplx bp = (1.0 - double(n) - mu + nu) / 2.0;
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int k = 0; k + 1 < n; ++k) {
    term *= (ap + double(k)) * (bp + double(k)) * z / ((1.0 - n + k) * double(k + 1));
    sum += term;
  }
  return sum;
}

SeriesResult t_series(cplx mu, cplx nu, int n, cplx z, double tol) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "t_series: n must be a positive integer");
  if (std::abs(z) >= 1.0) throw Error(ErrorCode::Domain, "t_series: requires |z| < 1");
  const cplx a = (1.0 + double(n) + mu + nu) / 2.0;
  const cplx b = (1.0 + double(n) - mu + nu) / 2.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    throw Error(ErrorCode::UnsupportedDegenerate, "t_series: digamma pole in (1+n+-mu+nu)/2 + k");
  }
  double fact = 1.0;
  for (int j = 2; j <= n; ++j) fact *= j;
  cplx coef = 1.0 / fact;  // (a)_k (b)_k z^k / ((n+k)! k!)
  double psi_k1 = -kEulerGamma;
  double psi_nk1 = -kEulerGamma + harmonic(n);
  cplx psi_a = digamma(a), psi_b = digamma(b);
  cplx sum = coef * (psi_k1 + psi_nk1 - psi_a - psi_b);
  double biggest = std::abs(sum);
  int below = 0;
  const int cap = 100000;
  for (int k = 0; k < cap; ++k) {
    coef *= (a + double(k)) * (b + double(k)) * z / (double(n + k + 1) * double(k + 1));
    psi_k1 += 1.0 / (k + 1);
    psi_nk1 += 1.0 / (n + k + 1);
    psi_a += 1.0 / (a + double(k));
    psi_b += 1.0 / (b + double(k));
    const cplx term = coef * (psi_k1 + psi_nk1 - psi_a - psi_b);
    sum += term;
    biggest = std::max(biggest, std::abs(term));
    if (std::abs(term) <= tol * std::abs(sum) || term == cplx(0.0)) {
      if (++below >= 3) {
        SeriesResult r;
        r.value = sum;
        r.est_abs_error = std::abs(term) + biggest * 1e-16 * std::sqrt(k + 1.0);
        r.terms_used = k + 2;
        r.converged = true;
        return r;
      }
    } else {
      below = 0;
    }
  }
  throw Error(ErrorCode::Convergence, "t_series hit the term cap", cap);
}

}  // namespace ws
