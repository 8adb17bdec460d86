#include "ws/distr.hpp"

#include <algorithm>
#include <cmath>

#include "ws/error.hpp"
#include "ws/hypergeometric.hpp"
#include "ws/quadrature.hpp"
#include "ws/specfun.hpp"

namespace ws {

// ---------------------------------------------------------------------------
// factors and coefficients

Factor Factor::power(cplx alpha) {
  Factor f;
  f.kind = Kind::Pow;
  f.p[0] = alpha;
  return f;
}

Factor Factor::shift_power(cplx beta) {
  Factor f;
  f.kind = Kind::ShiftPow;
  f.p[0] = beta;
  return f;
}

Factor Factor::hyp(cplx a, cplx b, cplx c) {
  Factor f;
  f.kind = Kind::Hyp;
  f.p[0] = a;
  f.p[1] = b;
  f.p[2] = c;
  return f;
}

Factor Factor::polynomial(std::vector<cplx> coeffs) {
  Factor f;
  f.kind = Kind::Poly;
  f.poly = std::move(coeffs);
  return f;
}

Factor Factor::log_smooth() {
  Factor f;
  f.kind = Kind::LogSmooth;
  return f;
}

Factor Factor::scaled_t(cplx mu, cplx nu, int n) {
  Factor f;
  f.kind = Kind::ScaledT;
  f.p[0] = mu;
  f.p[1] = nu;
  f.n = n;
  return f;
}

Factor Factor::derivative(const Coefficient& inner, int n) {
  Factor f;
  f.kind = Kind::Derivative;
  f.inner = std::make_shared<Coefficient>(inner);
  f.n = n;
  return f;
}

Factor Factor::lambda(std::function<Jet(double, int)> fn) {
  Factor f;
  f.kind = Kind::Lambda;
  f.fn = std::move(fn);
  return f;
}

namespace {

Jet w_jet(double x, int order) {
  Jet w = -1.0 * pow(Jet::variable(order, x), -2.0);
  w[0] += 1.0;
  return w;
}

// Taylor coefficients at w0 of sum_k c[k] w^k, up to `order`.
std::vector<cplx> shift_polynomial(const std::vector<cplx>& c, cplx w0, int order) {
  std::vector<cplx> out(order + 1, 0.0);
  for (int j = 0; j <= order; ++j) {
    cplx s = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= j; --k) {
      double binom = 1.0;
      for (int i = 1; i <= j; ++i) binom = binom * (k - j + i) / i;
      s = s * w0 + c[k] * binom;
    }
    out[j] = s;
  }
  return out;
}

// Taylor coefficients t_k of sum_k (a)_k (b)_k w^k / ((n+k)! k!) {psi...}.
std::vector<cplx> t_coefficients(cplx a, cplx b, int n, double wabs) {
  std::vector<cplx> t;
  double fact = 1.0;
  for (int j = 2; j <= n; ++j) fact *= j;
  cplx coef = 1.0 / fact;
  double psi_k1 = -kEulerGamma, psi_nk1 = -kEulerGamma + harmonic(n);
  cplx psi_a = digamma(a), psi_b = digamma(b);
  double biggest = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const cplx tk = coef * (psi_k1 + psi_nk1 - psi_a - psi_b);
    t.push_back(tk);
    const double mag = std::abs(tk) * std::pow(wabs, k) * (k + 1.0) * (k + 1.0) * (k + 1.0) * (k + 1.0);
    biggest = std::max(biggest, std::abs(tk) * std::pow(wabs, k));
    if (k > 8 && mag < 1e-18 * std::max(biggest, 1e-300)) break;
    coef *= (a + double(k)) * (b + double(k)) / (double(n + k + 1) * double(k + 1));
    psi_k1 += 1.0 / (k + 1);
    psi_nk1 += 1.0 / (n + k + 1);
    psi_a += 1.0 / (a + double(k));
    psi_b += 1.0 / (b + double(k));
  }
  return t;
}

Jet scaled_t_jet(cplx mu, cplx nu, int n, double x, int order) {
  const cplx a = (1.0 + double(n) + mu + nu) / 2.0, b = (1.0 + double(n) - mu + nu) / 2.0;
  const cplx ap = (1.0 - double(n) + mu + nu) / 2.0, bp = (1.0 - double(n) - mu + nu) / 2.0;
  const cplx rr = rgamma(ap) * rgamma(bp);
  const double w0 = 1.0 - 1.0 / (x * x);
  if (rr == cplx(0.0)) {
    // 1/Gamma(b') -> 0 against the poles of psi(b + k), k <= j, when b = -j:
    // the limit is (-1)^m m! / Gamma(a') sum_{k<=j} (a)_k (-j)_k w^k / ((n+k)! k!), m = j + n.
    // Same with a and b exchanged; zero when neither pairing applies.
    auto nonpos = [](cplx v, int& j) {
      if (v.imag() != 0.0 || v.real() > 0.0 || v.real() != std::nearbyint(v.real())) return false;
      j = static_cast<int>(-v.real());
      return true;
    };
    int j = 0, jj = 0;
    cplx other = 0.0, lead = 0.0;
    if (nonpos(b, j) && nonpos(bp, jj) && !nonpos(ap, jj)) {
      other = a;
      lead = rgamma(ap);
    } else if (nonpos(a, j) && nonpos(ap, jj) && !nonpos(bp, jj)) {
      other = b;
      lead = rgamma(bp);
    } else {
      return Jet(order, 0.0);
    }
    const int m = j + n;
    double mf = 1.0;
    for (int i = 2; i <= m; ++i) mf *= i;
    std::vector<cplx> c(j + 1);
    cplx term = lead * ((m % 2 == 0) ? 1.0 : -1.0) * mf;
    for (int i = 1; i <= n; ++i) term /= double(i);
    for (int k = 0; k <= j; ++k) {
      c[k] = term;
      term *= (other + double(k)) * double(k - j) / (double(n + k + 1) * double(k + 1));
    }
    return compose(shift_polynomial(c, w0, order), w_jet(x, order));
  }
  if (std::abs(w0) <= 0.9) {
    const std::vector<cplx> t = t_coefficients(a, b, n, std::abs(w0));
    std::vector<cplx> outer = shift_polynomial(t, w0, order);
    for (cplx& v : outer) v *= rr;
    return compose(outer, w_jet(x, order));
  }
  if (order > 0) {
    throw Error(ErrorCode::InsufficientOrder, "T-series block: derivatives unavailable for |1 - x^-2| > 0.9");
  }
  // Outside the disk: solve the log-case connection formula for T.
  const double z = 1.0 / (x * x);
  const cplx qplus = z > 1.0 ? hyp2f1_regularized_boundary(ap, bp, nu + 1.0, z, Side::Plus)
                             : hyp2f1_regularized(ap, bp, nu + 1.0, z).value;
  double fact = 1.0;
  for (int j = 2; j < n; ++j) fact *= j;
  const cplx poly = fact * rgamma(a) * rgamma(b) * s_series(mu, nu, n, w0);
  const cplx g = hyp2f1_regularized(a, b, double(n + 1), w0).value;
  const cplx logw(std::log(std::abs(w0)), x < 1.0 ? kPi : 0.0);
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  const cplx v = sgn * std::pow(w0, -n) * (qplus - poly) + rr * logw * g;
  return Jet(0, v);
}

}  // namespace

Jet Factor::jet(double x, int order) const {
  switch (kind) {
    case Kind::Pow:
      return pow(Jet::variable(order, x), p[0]);
    case Kind::ShiftPow: {
      Jet v = Jet::variable(order, x);
      v[0] += 1.0;
      return pow(v, p[0]);
    }
    case Kind::Hyp: {
      const double w0 = 1.0 - 1.0 / (x * x);
      std::vector<cplx> outer(order + 1);
      cplx poch = 1.0;
      double fact = 1.0;
      for (int j = 0; j <= order; ++j) {
        if (j > 0) {
          poch *= (p[0] + double(j - 1)) * (p[1] + double(j - 1));
          fact *= j;
        }
        outer[j] = poch == cplx(0.0) ? cplx(0.0)
                                     : poch / fact * hyp2f1_regularized(p[0] + double(j), p[1] + double(j),
                                                                        p[2] + double(j), w0).value;
      }
      return compose(outer, w_jet(x, order));
    }
    case Kind::Poly: {
      const double w0 = 1.0 - 1.0 / (x * x);
      return compose(shift_polynomial(poly, w0, order), w_jet(x, order));
    }
    case Kind::LogSmooth: {
      Jet v = Jet::variable(order, x);
      Jet s = v;
      s[0] += 1.0;
      return log(s) - 2.0 * log(v);
    }
    case Kind::ScaledT:
      return scaled_t_jet(p[0], p[1], n, x, order);
    case Kind::Derivative:
      return inner->jet(x, order + n).shifted(n);
    case Kind::Lambda:
      return fn(x, order);
  }
  return Jet(order, 0.0);
}

Jet Coefficient::jet(double x, int order) const {
  Jet j(order, scale);
  if (scale == cplx(0.0)) return j;
  for (const Factor& f : factors) j = j * f.jet(x, order);
  return j;
}

bool Coefficient::serializable() const {
  for (const Factor& f : factors) {
    if (f.kind == Factor::Kind::Lambda) return false;
    if (f.kind == Factor::Kind::Derivative && !f.inner->serializable()) return false;
  }
  return true;
}

Coefficient Coefficient::times(const Coefficient& o) const {
  Coefficient c(scale * o.scale, factors);
  c.factors.insert(c.factors.end(), o.factors.begin(), o.factors.end());
  return c;
}

const char* to_string(SingularBasis::Kind k) {
  switch (k) {
    case SingularBasis::Kind::Regular: return "Regular";
    case SingularBasis::Kind::PowMinus: return "PowMinus";
    case SingularBasis::Kind::PowPlus: return "PowPlus";
    case SingularBasis::Kind::BoundaryPower: return "BoundaryPower";
    case SingularBasis::Kind::DeltaDeriv: return "DeltaDeriv";
    case SingularBasis::Kind::PrincipalValue: return "PrincipalValue";
    case SingularBasis::Kind::LogAbs: return "LogAbs";
    case SingularBasis::Kind::HeavisideStep: return "HeavisideStep";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// test functions

Bump::Bump(double center, double width, int max_deriv_order)
    : center_(center), width_(width), max_order_(max_deriv_order) {
  if (!(width > 0.0) || !(center > width)) {
    throw Error(ErrorCode::InvalidArgument, "bump support must lie in (0, inf): need center > width > 0");
  }
}

Jet Bump::jet(double x, int order) const {
  if (order > max_order_) throw Error(ErrorCode::InsufficientOrder, "bump: derivative order above its maximum");
  const double t0 = (x - center_) / width_;
  if (std::abs(t0) >= 1.0) return Jet(order, 0.0);
  Jet t = Jet::variable(order, t0);
  if (order >= 1) t[1] = 1.0 / width_;
  Jet u = -1.0 * (t * t);
  u[0] += 1.0;
  const Jet r = reciprocal(u);
  if (r[0].real() > 700.0) return Jet(order, 0.0);
  return exp(-1.0 * r);
}

double CombinedTest::support_lo() const { return std::min(f_.support_lo(), g_.support_lo()); }
double CombinedTest::support_hi() const { return std::max(f_.support_hi(), g_.support_hi()); }
int CombinedTest::max_order() const { return std::min(f_.max_order(), g_.max_order()); }
Jet CombinedTest::jet(double x, int order) const {
  return alpha_ * f_.jet(x, order) + beta_ * g_.jet(x, order);
}

// ---------------------------------------------------------------------------
// pairing

int default_ibp_depth(cplx lambda) {
  // Smallest k with Re(lambda + k) >= -1/2: keeps the integrable weight
  // well away from the non-integrable edge.
  const double k = std::ceil(-lambda.real() - 0.5);
  return k > 0 ? static_cast<int>(k) : 0;
}

namespace {

bool is_integer_lambda(cplx l, int& k) {
  if (l.imag() != 0.0 || l.real() != std::nearbyint(l.real())) return false;
  k = static_cast<int>(std::nearbyint(l.real()));
  return true;
}

struct Pairer {
  const Term& t;
  const TestFunction& phi;
  const PairOptions& opt;
  double lo, hi;
  QuadTolerance qt;

  Pairer(const Term& t_, const TestFunction& phi_, const PairOptions& o)
      : t(t_), phi(phi_), opt(o), lo(phi_.support_lo()), hi(phi_.support_hi()) {
    qt.abs_tol = o.tol;
    qt.rel_tol = 1e-13;
  }

  void need(int order) const {
    if (order > phi.max_order()) {
      throw Error(ErrorCode::InsufficientOrder, "test function lacks the derivative order this basis requires");
    }
  }

  // k-th derivative of coeff * phi
  cplx g(double x, int k) const {
    const Jet pj = phi.jet(x, k);
    bool zero = true;
    for (int j = 0; j <= k; ++j) zero = zero && pj[j] == cplx(0.0);
    if (zero) return 0.0;
    return (t.coeff.jet(x, k) * pj).derivative(k);
  }

  cplx checked(const QuadResult& r) const {
    if (!r.converged && r.abs_error > std::max(1e-6, 1e3 * opt.tol)) {
      throw Error(ErrorCode::Quadrature, "pairing quadrature did not converge");
    }
    return r.value;
  }

  cplx integral(const RealToComplex& f, double a, double b, Endpoint l, Endpoint r) const {
    if (!(b > a)) return 0.0;
    return checked(integrate_endpoints(f, a, b, l, r, qt));
  }

  // Integral of f over the support, split at x = 1 with the given behaviour
  // on either side of 1.
  cplx split_at_one(const RealToComplex& f, Endpoint below, Endpoint above) const {
    if (hi <= 1.0 || lo >= 1.0) return integral(f, lo, hi, Endpoint::smooth(), Endpoint::smooth());
    return integral(f, lo, 1.0, Endpoint::smooth(), below) + integral(f, 1.0, hi, above, Endpoint::smooth());
  }

  cplx regular() const {
    return split_at_one([&](double x) { return g(x, 0); }, Endpoint::smooth(), Endpoint::smooth());
  }

  cplx pow_minus(cplx lambda) const {
    int kint = 0;
    if (is_integer_lambda(lambda, kint) && kint <= -1) {
      const int k = -kint;
      need(k);
      auto f = [&](double x) { return std::log(1.0 - x) * g(x, k); };
      const double top = std::min(hi, 1.0);
      const cplx I = integral(f, lo, top, Endpoint::smooth(), hi > 1.0 ? Endpoint::log() : Endpoint::smooth());
      double fact = 1.0;
      for (int j = 2; j < k; ++j) fact *= j;
      const double sgn = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k-1}
      return sgn * (I + harmonic(k - 1) * g(1.0, k - 1)) / fact;
    }
    const int k = t.basis.depth >= 0 ? t.basis.depth : default_ibp_depth(lambda);
    if ((lambda + double(k)).real() <= -1.0) throw Error(ErrorCode::InvalidArgument, "IBP depth too small");
    need(k);
    const cplx e = lambda + double(k);
    // In t = 1 - x, so that nodes near the singular end stay resolved.
    auto f = [&](double t) { return std::exp(e * std::log(t)) * g(1.0 - t, k); };
    const double bot = std::max(0.0, 1.0 - hi);
    const cplx I = integral(f, bot, 1.0 - lo, bot == 0.0 ? Endpoint::power(e.real()) : Endpoint::smooth(),
                            Endpoint::smooth());
    cplx den = 1.0;
    for (int j = 1; j <= k; ++j) den *= lambda + double(j);
    return I / den;
  }

  cplx pow_plus(cplx lambda) const {
    int kint = 0;
    if (is_integer_lambda(lambda, kint) && kint <= -1) {
      const int k = -kint;
      need(k);
      auto f = [&](double x) { return std::log(x - 1.0) * g(x, k); };
      const double bot = std::max(lo, 1.0);
      const cplx I = integral(f, bot, hi, lo < 1.0 ? Endpoint::log() : Endpoint::smooth(), Endpoint::smooth());
      double fact = 1.0;
      for (int j = 2; j < k; ++j) fact *= j;
      return (-I + harmonic(k - 1) * g(1.0, k - 1)) / fact;
    }
    const int k = t.basis.depth >= 0 ? t.basis.depth : default_ibp_depth(lambda);
    if ((lambda + double(k)).real() <= -1.0) throw Error(ErrorCode::InvalidArgument, "IBP depth too small");
    need(k);
    const cplx e = lambda + double(k);
    auto f = [&](double t) { return std::exp(e * std::log(t)) * g(1.0 + t, k); };
    const double bot = std::max(0.0, lo - 1.0);
    const cplx I = integral(f, bot, hi - 1.0, bot == 0.0 ? Endpoint::power(e.real()) : Endpoint::smooth(),
                            Endpoint::smooth());
    cplx den = 1.0;
    for (int j = 1; j <= k; ++j) den *= lambda + double(j);
    return ((k % 2 == 0) ? 1.0 : -1.0) * I / den;
  }

  cplx delta(int m) const {
    if (m > opt.max_delta_order) throw Error(ErrorCode::InsufficientOrder, "delta derivative order above maximum");
    need(m);
    return ((m % 2 == 0) ? 1.0 : -1.0) * g(1.0, m);
  }

  cplx principal_value() const {
    if (!(lo < 1.0 && hi > 1.0)) {
      return integral([&](double x) { return g(x, 0) / (x - 1.0); }, lo, hi, Endpoint::smooth(), Endpoint::smooth());
    }
    const double h = std::min(1.0 - lo, hi - 1.0);
    const cplx g1 = g(1.0, 0);
    auto sub = [&](double x) { return (g(x, 0) - g1) / (x - 1.0); };
    auto plain = [&](double x) { return g(x, 0) / (x - 1.0); };
    cplx s = integral(sub, 1.0 - h, 1.0, Endpoint::smooth(), Endpoint::smooth()) +
             integral(sub, 1.0, 1.0 + h, Endpoint::smooth(), Endpoint::smooth());
    s += integral(plain, lo, 1.0 - h, Endpoint::smooth(), Endpoint::smooth());
    s += integral(plain, 1.0 + h, hi, Endpoint::smooth(), Endpoint::smooth());
    return s;
  }

  cplx log_abs() const {
    return split_at_one([&](double x) { return std::log(std::abs(x - 1.0)) * g(x, 0); }, Endpoint::log(),
                        Endpoint::log());
  }

  cplx heaviside() const {
    const double bot = std::max(lo, 1.0);
    return integral([&](double x) { return g(x, 0); }, bot, hi, Endpoint::smooth(), Endpoint::smooth());
  }
};

}  // namespace

cplx pair_term(const Term& t, const TestFunction& phi, const PairOptions& opt) {
  if (t.coeff.scale == cplx(0.0)) return 0.0;
  const Pairer p(t, phi, opt);
  switch (t.basis.kind) {
    case SingularBasis::Kind::Regular: return p.regular();
    case SingularBasis::Kind::PowMinus: return p.pow_minus(t.basis.lambda);
    case SingularBasis::Kind::PowPlus: return p.pow_plus(t.basis.lambda);
    case SingularBasis::Kind::DeltaDeriv: return p.delta(t.basis.m);
    case SingularBasis::Kind::PrincipalValue: return p.principal_value();
    case SingularBasis::Kind::LogAbs: return p.log_abs();
    case SingularBasis::Kind::HeavisideStep: return p.heaviside();
    case SingularBasis::Kind::BoundaryPower: {
      cplx s = 0.0;
      for (const Term& e : boundary_power_expand(t.basis.lambda, t.basis.side).terms) {
        Term sub{t.coeff.times(e.coeff), e.basis};
        sub.basis.depth = t.basis.depth;
        s += pair_term(sub, phi, opt);
      }
      return s;
    }
  }
  return 0.0;
}

cplx pair(const GeneralizedFunction& d, const TestFunction& phi, const PairOptions& opt) {
  cplx s = 0.0;
  for (const Term& t : d.terms) s += pair_term(t, phi, opt);
  return s;
}

// ---------------------------------------------------------------------------
// algebra

GeneralizedFunction boundary_power_expand(cplx lambda, Side side) {
  GeneralizedFunction d;
  const double sg = side == Side::Plus ? 1.0 : -1.0;
  int kint = 0;
  if (is_integer_lambda(lambda, kint) && kint <= -1) {
    const int k = -kint;
    const double pm = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
    double fact = 1.0;
    for (int j = 2; j < k; ++j) fact *= j;
    d.add(Coefficient(pm), SingularBasis::pow_minus(lambda));
    d.add(Coefficient(1.0), SingularBasis::pow_plus(lambda));
    d.add(Coefficient(sg * pm * cplx(0.0, kPi) / fact), SingularBasis::delta(k - 1));
    return d;
  }
  const cplx phase = std::exp(cplx(0.0, sg * kPi) * lambda);
  d.add(Coefficient(phase), SingularBasis::pow_minus(lambda));
  d.add(Coefficient(1.0), SingularBasis::pow_plus(lambda));
  return d;
}

GeneralizedFunction differentiate(const GeneralizedFunction& d) {
  GeneralizedFunction out;
  for (const Term& t : d.terms) {
    // product rule: c' B + c B'
    Coefficient dc(1.0, {Factor::derivative(t.coeff, 1)});
    out.add(dc, t.basis);
    const Coefficient& c = t.coeff;
    const SingularBasis& b = t.basis;
    int kint = 0;
    switch (b.kind) {
      case SingularBasis::Kind::Regular:
        break;
      case SingularBasis::Kind::PowMinus:
        if (is_integer_lambda(b.lambda, kint) && kint <= 0) {
          const int k = -kint;
          double fact = 1.0;
          for (int j = 2; j <= k; ++j) fact *= j;
          if (k > 0) out.add(c.times(Coefficient(double(k))), SingularBasis::pow_minus(double(-k - 1)));
          out.add(c.times(Coefficient(-1.0 / fact)), SingularBasis::delta(k));
        } else {
          out.add(c.times(Coefficient(-b.lambda)), SingularBasis::pow_minus(b.lambda - 1.0));
        }
        break;
      case SingularBasis::Kind::PowPlus:
        if (is_integer_lambda(b.lambda, kint) && kint <= 0) {
          const int k = -kint;
          double fact = 1.0;
          for (int j = 2; j <= k; ++j) fact *= j;
          if (k > 0) out.add(c.times(Coefficient(-double(k))), SingularBasis::pow_plus(double(-k - 1)));
          out.add(c.times(Coefficient(((k % 2 == 0) ? 1.0 : -1.0) / fact)), SingularBasis::delta(k));
        } else {
          out.add(c.times(Coefficient(b.lambda)), SingularBasis::pow_plus(b.lambda - 1.0));
        }
        break;
      case SingularBasis::Kind::BoundaryPower:
        if (b.lambda != cplx(0.0)) {
          out.add(c.times(Coefficient(b.lambda)), SingularBasis::boundary_power(b.lambda - 1.0, b.side));
        }
        break;
      case SingularBasis::Kind::DeltaDeriv:
        out.add(c, SingularBasis::delta(b.m + 1));
        break;
      case SingularBasis::Kind::PrincipalValue:
        out.add(c.times(Coefficient(-1.0)), SingularBasis::pow_minus(-2.0));
        out.add(c.times(Coefficient(-1.0)), SingularBasis::pow_plus(-2.0));
        break;
      case SingularBasis::Kind::LogAbs:
        out.add(c, SingularBasis::principal_value());
        break;
      case SingularBasis::Kind::HeavisideStep:
        out.add(c, SingularBasis::delta(0));
        break;
    }
  }
  return out;
}

GeneralizedFunction scale_add(cplx alpha, const GeneralizedFunction& d1, const GeneralizedFunction& d2) {
  GeneralizedFunction out;
  for (const Term& t : d1.terms) out.add(t.coeff.times(Coefficient(alpha)), t.basis);
  for (const Term& t : d2.terms) out.terms.push_back(t);
  return out;
}

GeneralizedFunction negate(const GeneralizedFunction& d) { return scale_add(-1.0, d, GeneralizedFunction{}); }

GeneralizedFunction multiply(const Coefficient& c, const GeneralizedFunction& d) {
  GeneralizedFunction out;
  for (const Term& t : d.terms) out.add(c.times(t.coeff), t.basis);
  return out;
}

}  // namespace ws
