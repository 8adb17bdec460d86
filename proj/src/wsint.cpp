#include "ws/wsint.hpp"

#include <cmath>
#include <sstream>

#include "ws/error.hpp"
#include "ws/hypergeometric.hpp"
#include "ws/specfun.hpp"

namespace ws {

const char* to_string(IntegralKind k) {
  switch (k) {
    case IntegralKind::JJ: return "jj";
    case IntegralKind::HplusJ: return "hplus_j";
    case IntegralKind::HminusJ: return "hminus_j";
    case IntegralKind::KJ: return "kj";
    case IntegralKind::KI: return "ki";
  }
  return "?";
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Function: return "function";
    case Regime::DistNonInteger: return "dist_noninteger";
    case Regime::DistInteger: return "dist_integer";
    case Regime::SpecialRho1: return "special_rho1";
    case Regime::DegenerateUnsupported: return "degenerate_unsupported";
    case Regime::Invalid: return "invalid";
  }
  return "?";
}

namespace {

constexpr const char* kContinuedNote = "Re(rho+nu+1) <= |Re mu|: convergent integral, formula continued analytically";

bool snapped_integer(cplx rho, int& n) {
  const double r = std::nearbyint(rho.real());
  if (std::abs(rho.real() - r) < kIntegerSnap && std::abs(rho.imag()) < kIntegerSnap) {
    n = static_cast<int>(r);
    return true;
  }
  return false;
}

bool near_integer(cplx z) { return distance_to_integer(z) < kIntegerSnap; }

struct Params {
  cplx mu, nu, rho;
  cplx a, b, ap, bp;
};

Params make(cplx mu, cplx nu, cplx rho) {
  return {mu, nu, rho, (1.0 + rho + mu + nu) / 2.0, (1.0 + rho - mu + nu) / 2.0, (1.0 - rho + mu + nu) / 2.0,
          (1.0 - rho - mu + nu) / 2.0};
}

void require_valid(cplx mu, cplx nu, cplx rho, IntegralKind kind = IntegralKind::HplusJ) {
  WSParams p;
  p.mu = mu;
  p.nu = nu;
  p.rho = rho;
  p.kind = kind;
  const std::string v = validity_violation(p);
  if (!v.empty()) throw Error(ErrorCode::Validity, v);
}

cplx cpow(cplx base, cplx e) { return std::exp(e * std::log(base)); }

double factorial(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

// Coefficients of S in powers of w.
std::vector<cplx> s_coefficients(cplx mu, cplx nu, int n) {
  const cplx ap = (1.0 - double(n) + mu + nu) / 2.0, bp = (1.0 - double(n) - mu + nu) / 2.0;
  std::vector<cplx> c(n);
  cplx t = 1.0;
  for (int k = 0; k < n; ++k) {
    c[k] = t;
    t *= (ap + double(k)) * (bp + double(k)) / ((1.0 - n + k) * double(k + 1));
  }
  return c;
}

void add_note_if_ambiguous(WSResult& r, cplx mu) {
  if (mu.imag() != 0.0) {
    r.notes.push_back("ambiguous: validity taken as Re(rho+nu+1) > |Re mu| for complex mu");
  }
}

// J.J, rho not an integer.
GeneralizedFunction jj_noninteger(const Params& q) {
  GeneralizedFunction d;
  const cplx pre = cpow(2.0, q.rho) / sinpi(q.rho);
  const std::vector<Factor> shape = {Factor::power(-1.0 + q.rho - q.nu), Factor::shift_power(-q.rho),
                                     Factor::hyp(q.ap, q.bp, 1.0 - q.rho)};
  d.add(Coefficient(pre * sinpi(q.bp), shape), SingularBasis::pow_minus(-q.rho));
  d.add(Coefficient(pre * sinpi(q.b), shape), SingularBasis::pow_plus(-q.rho));
  const cplx reg = -pre * kPi * gamma(q.a) * rgamma(1.0 - q.b) * rgamma(q.ap) * rgamma(q.bp);
  d.add(Coefficient(reg, {Factor::power(-1.0 - q.rho - q.nu), Factor::hyp(q.a, q.b, 1.0 + q.rho)}),
        SingularBasis::regular());
  return d;
}

// J.J, rho = n.
GeneralizedFunction jj_integer(const Params& q, int n) {
  GeneralizedFunction d;
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  const cplx sb = sinpi(q.b), cb = cospi(q.b);
  const double two_n = std::ldexp(1.0, n);
  const std::vector<Factor> s_shape = {Factor::power(-1.0 + double(n) - q.nu), Factor::shift_power(-double(n)),
                                       Factor::polynomial(s_coefficients(q.mu, q.nu, n))};
  const double cs = two_n * factorial(n - 1) / kPi;
  d.add(Coefficient(sgn * sb * cs, s_shape), SingularBasis::pow_minus(-double(n)));
  d.add(Coefficient(sb * cs, s_shape), SingularBasis::pow_plus(-double(n)));
  d.add(Coefficient(sgn * kPi * cb / factorial(n - 1) * cs, s_shape), SingularBasis::delta(n - 1));

  // Regular block: K [sin(pi b)(T - log|w| G) - pi cos(pi b) theta(1-x) G]
  const cplx rr = rgamma(q.ap) * rgamma(q.bp);
  const cplx ga = gamma(q.a);
  const cplx ks = two_n * sgn * ga * rgamma(1.0 - q.b);  // K sin(pi b) / rr
  // K pi cos(pi b), with Gamma(b) / Gamma(b') = (b - n)_n finite at b in -N.
  const cplx kcr = two_n * sgn * ga * cb * rgamma(q.ap) * pochhammer(q.bp, n);
  const Factor px = Factor::power(-1.0 - double(n) - q.nu);
  const Factor g = Factor::hyp(q.a, q.b, double(n + 1));
  d.add(Coefficient(ks, {px, Factor::scaled_t(q.mu, q.nu, n)}), SingularBasis::regular());
  d.add(Coefficient(-ks * rr, {px, g}), SingularBasis::log_abs());
  d.add(Coefficient(-ks * rr, {px, Factor::log_smooth(), g}), SingularBasis::regular());
  d.add(Coefficient(-kcr, {px, g}), SingularBasis::regular());
  d.add(Coefficient(kcr, {px, g}), SingularBasis::heaviside());
  return d;
}

cplx hankel_prefactor(Side s, const Params& q) {
  const double sg = s == Side::Plus ? 1.0 : -1.0;
  return sg * cpow(2.0, q.rho) / cplx(0.0, kPi) * std::exp(cplx(0.0, sg * kPi) * q.b) * gamma(q.a) * gamma(q.b);
}

GeneralizedFunction hankel_noninteger(Side s, const Params& q) {
  GeneralizedFunction d;
  const double sg = s == Side::Plus ? 1.0 : -1.0;
  const cplx sing = sg * cpow(2.0, q.rho) / (cplx(0.0, 1.0) * sinpi(q.rho)) * std::exp(cplx(0.0, sg * kPi) * q.b);
  d.add(Coefficient(sing, {Factor::power(-1.0 + q.rho - q.nu), Factor::shift_power(-q.rho),
                           Factor::hyp(q.ap, q.bp, 1.0 - q.rho)}),
        SingularBasis::boundary_power(-q.rho, s));
  const cplx reg = -hankel_prefactor(s, q) * kPi / sinpi(q.rho) * rgamma(q.ap) * rgamma(q.bp);
  d.add(Coefficient(reg, {Factor::power(-1.0 - q.rho - q.nu), Factor::hyp(q.a, q.b, 1.0 + q.rho)}),
        SingularBasis::regular());
  return d;
}

GeneralizedFunction hankel_integer(Side s, const Params& q, int n) {
  GeneralizedFunction d;
  const double sg = s == Side::Plus ? 1.0 : -1.0;
  const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
  const cplx P = hankel_prefactor(s, q);
  const cplx sing = sg * std::ldexp(1.0, n) / cplx(0.0, kPi) * std::exp(cplx(0.0, sg * kPi) * q.b) * factorial(n - 1);
  d.add(Coefficient(sing, {Factor::power(-1.0 + double(n) - q.nu), Factor::shift_power(-double(n)),
                           Factor::polynomial(s_coefficients(q.mu, q.nu, n))}),
        SingularBasis::boundary_power(-double(n), s));
  const cplx rr = rgamma(q.ap) * rgamma(q.bp);
  const cplx k = P * sgn;
  const Factor px = Factor::power(-1.0 - double(n) - q.nu);
  const Factor g = Factor::hyp(q.a, q.b, double(n + 1));
  d.add(Coefficient(k, {px, Factor::scaled_t(q.mu, q.nu, n)}), SingularBasis::regular());
  d.add(Coefficient(-k * rr, {px, g}), SingularBasis::log_abs());
  d.add(Coefficient(-k * rr, {px, Factor::log_smooth(), g}), SingularBasis::regular());
  // -+ i pi theta(1-x) G  =  -+ i pi G  +-  i pi theta(x-1) G
  const cplx th = cplx(0.0, sg * kPi) * k * rr;
  d.add(Coefficient(-th, {px, g}), SingularBasis::regular());
  d.add(Coefficient(th, {px, g}), SingularBasis::heaviside());
  return d;
}

void check_distribution_params(cplx mu, cplx nu, cplx rho, const WSOptions& opt, int& n, bool& integer,
                               IntegralKind kind) {
  require_valid(mu, nu, rho, kind);
  if (!(rho.real() > 0.0)) throw Error(ErrorCode::Validity, "distribution case requires Re rho > 0");
  integer = snapped_integer(rho, n);
  if (integer && opt.strict_degenerate) {
    WSParams p;
    p.mu = mu;
    p.nu = nu;
    p.rho = rho;
    if (literal_degenerate(p)) {
      throw Error(ErrorCode::UnsupportedDegenerate,
                  "unsupported degenerate case: ρ ∈ ℤ and (1−ρ±μ+ν)/2 ∈ ℤ (rho integer, (1-rho+-mu+nu)/2 integer)");
    }
  }
}

}  // namespace

std::string validity_violation(const WSParams& p) {
  std::ostringstream os;
  os.precision(17);
  if (p.kind == IntegralKind::JJ) {
    // J.J converges at k = 0 iff Re(rho+mu+nu+1) > 0; the large-k end is
    // either convergent or taken in the Abel sense.
    const double e = (p.rho + p.mu + p.nu + 1.0).real();
    if (e > 0.0) return {};
    os << "validity violated: Re(rho+mu+nu+1) > 0 fails (" << e << " <= 0)";
    return os.str();
  }
  const double lhs = (p.rho + p.nu + 1.0).real();
  const double rhs = std::abs(p.mu.real());
  if (lhs > rhs) return {};
  os << "validity violated: Re(rho+nu+1) > |Re mu| fails (" << lhs << " <= " << rhs << ")";
  return os.str();
}

bool outside_stated_hypothesis(const WSParams& p) {
  return !((p.rho + p.nu + 1.0).real() > std::abs(p.mu.real()));
}

bool literal_degenerate(const WSParams& p) {
  int n = 0;
  if (!snapped_integer(p.rho, n)) return false;
  const cplx u = (1.0 - double(n) + p.mu + p.nu) / 2.0, v = (1.0 - double(n) - p.mu + p.nu) / 2.0;
  return near_integer(u) || near_integer(v);
}

Regime classify(const WSParams& p, const WSOptions& opt) {
  if (!validity_violation(p).empty()) return Regime::Invalid;
  if (p.kind == IntegralKind::KJ || p.kind == IntegralKind::KI) return Regime::Function;
  const double r = p.rho.real();
  if (r <= 0.0 || (r < 1.0 && !p.symbolic)) return Regime::Function;
  int n = 0;
  if (snapped_integer(p.rho, n)) {
    if (opt.strict_degenerate && literal_degenerate(p)) return Regime::DegenerateUnsupported;
    return Regime::DistInteger;
  }
  return Regime::DistNonInteger;
}

cplx ki_integral(cplx mu, cplx nu, cplx rho, cplx z, const SeriesConfig& cfg) {
  require_valid(mu, nu, rho);
  if (!(z.real() > 0.0)) throw Error(ErrorCode::Validity, "K.I integral requires Re z > 0");
  const Params q = make(mu, nu, rho);
  const cplx arg = 1.0 / (z * z);
  if (arg.imag() == 0.0 && arg.real() >= 1.0) {
    throw Error(ErrorCode::Domain, "K.I integral: z^-2 on the branch cut (need |z| > 1 for real z)");
  }
  return cpow(2.0, rho - 1.0) * gamma(q.a) * gamma(q.b) * cpow(z, -1.0 - rho - nu) *
         hyp2f1_regularized(q.a, q.b, nu + 1.0, arg, cfg).value;
}

cplx kj_integral(cplx mu, cplx nu, cplx rho, cplx z, const SeriesConfig& cfg) {
  require_valid(mu, nu, rho);
  if (!(z.real() > 0.0)) throw Error(ErrorCode::Validity, "K.J integral requires Re z > 0");
  const Params q = make(mu, nu, rho);
  return cpow(2.0, rho - 1.0) * gamma(q.a) * gamma(q.b) * cpow(z, -1.0 - rho - nu) *
         hyp2f1_regularized(q.a, q.b, nu + 1.0, -1.0 / (z * z), cfg).value;
}

cplx ws_function(cplx mu, cplx nu, cplx rho, double x, const WSOptions& opt) {
  require_valid(mu, nu, rho, IntegralKind::JJ);
  if (!(rho.real() < 1.0)) throw Error(ErrorCode::Validity, "function case requires Re rho < 1");
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "x must be positive");
  if (x == 1.0) throw Error(ErrorCode::InvalidArgument, "function case is not defined at x = 1");
  const Params q = make(mu, nu, rho);
  const cplx pre = cpow(2.0, rho) * gamma(q.a);
  if (x > 1.0) {
    return pre * rgamma((1.0 - rho + mu - nu) / 2.0) * std::pow(x, -1.0 - rho - nu) *
           hyp2f1_regularized(q.a, q.b, nu + 1.0, 1.0 / (x * x), opt.series).value;
  }
  const cplx b2 = (1.0 + rho + mu - nu) / 2.0;
  const cplx head = pre * rgamma(q.bp) * std::pow(x, mu);
  if (opt.inverted_small_x_argument) {
    return head * hyp2f1_regularized_boundary(q.a, b2, mu + 1.0, 1.0 / (x * x), Side::Plus, opt.series);
  }
  return head * hyp2f1_regularized(q.a, b2, mu + 1.0, x * x, opt.series).value;
}

WSResult ws_distribution(cplx mu, cplx nu, cplx rho, const WSOptions& opt) {
  int n = 0;
  bool integer = false;
  check_distribution_params(mu, nu, rho, opt, n, integer, IntegralKind::JJ);
  WSResult r;
  r.is_scalar = false;
  add_note_if_ambiguous(r, mu);
  {
    WSParams p;
    p.mu = mu;
    p.nu = nu;
    p.rho = rho;
    if (outside_stated_hypothesis(p)) r.notes.push_back(kContinuedNote);
  }
  if (integer) {
    r.regime = n == 1 ? Regime::SpecialRho1 : Regime::DistInteger;
    r.dist = jj_integer(make(mu, nu, double(n)), n);
    WSParams p;
    p.mu = mu;
    p.nu = nu;
    p.rho = rho;
    if (literal_degenerate(p)) r.notes.push_back("(1-rho+-mu+nu)/2 in Z: integer branch evaluated by continuity");
  } else {
    r.regime = Regime::DistNonInteger;
    r.dist = jj_noninteger(make(mu, nu, rho));
  }
  return r;
}

WSResult hankel_variant(Side sign, cplx mu, cplx nu, cplx rho, double x, bool symbolic, const WSOptions& opt) {
  WSResult r;
  add_note_if_ambiguous(r, mu);
  if (!symbolic) {
    require_valid(mu, nu, rho);
    if (!(rho.real() < 1.0)) throw Error(ErrorCode::Validity, "pointwise Hankel case requires Re rho < 1");
    if (!(x > 0.0) || x == 1.0) throw Error(ErrorCode::InvalidArgument, "x must be positive and != 1");
    const Params q = make(mu, nu, rho);
    const double z = 1.0 / (x * x);
    const cplx f = std::pow(x, -1.0 - rho - nu) *
                   (z > 1.0 ? hyp2f1_regularized_boundary(q.a, q.b, nu + 1.0, z, sign, opt.series)
                            : hyp2f1_regularized(q.a, q.b, nu + 1.0, z, opt.series).value);
    r.regime = Regime::Function;
    r.value = hankel_prefactor(sign, q) * f;
    return r;
  }
  int n = 0;
  bool integer = false;
  check_distribution_params(mu, nu, rho, opt, n, integer, IntegralKind::HplusJ);
  r.is_scalar = false;
  if (integer) {
    r.regime = n == 1 ? Regime::SpecialRho1 : Regime::DistInteger;
    r.dist = hankel_integer(sign, make(mu, nu, double(n)), n);
  } else {
    r.regime = Regime::DistNonInteger;
    r.dist = hankel_noninteger(sign, make(mu, nu, rho));
  }
  return r;
}

WSResult evaluate(const WSParams& p, const WSOptions& opt) {
  const Regime reg = classify(p, opt);
  if (reg == Regime::Invalid) throw Error(ErrorCode::Validity, validity_violation(p));
  if (reg == Regime::DegenerateUnsupported) {
    throw Error(ErrorCode::UnsupportedDegenerate,
                "unsupported degenerate case: ρ ∈ ℤ and (1−ρ±μ+ν)/2 ∈ ℤ (rho integer, (1-rho+-mu+nu)/2 integer)");
  }
  WSResult r;
  add_note_if_ambiguous(r, p.mu);
  switch (p.kind) {
    case IntegralKind::KI:
      r.value = ki_integral(p.mu, p.nu, p.rho, p.arg, opt.series);
      return r;
    case IntegralKind::KJ:
      r.value = kj_integral(p.mu, p.nu, p.rho, p.arg, opt.series);
      return r;
    case IntegralKind::JJ:
      if (reg == Regime::Function) {
        r.value = ws_function(p.mu, p.nu, p.rho, p.arg.real(), opt);
        if (p.rho.real() >= 0.0) r.notes.push_back("Re rho in [0,1): pointwise value by analytic continuation in rho");
        if (outside_stated_hypothesis(p)) {
          r.notes.push_back(kContinuedNote);
        }
        return r;
      }
      return ws_distribution(p.mu, p.nu, p.rho, opt);
    case IntegralKind::HplusJ:
    case IntegralKind::HminusJ: {
      const Side s = p.kind == IntegralKind::HplusJ ? Side::Plus : Side::Minus;
      return hankel_variant(s, p.mu, p.nu, p.rho, p.arg.real(), reg != Regime::Function, opt);
    }
  }
  return r;
}

}  // namespace ws
