#pragma once

// Distributions on the half-line as finite sums  coefficient x basis,  with
// every singular basis element anchored at x = 1.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ws/jet.hpp"
#include "ws/types.hpp"

namespace ws {

struct Coefficient;

// One multiplicative factor of a coefficient, as a function of x > 0.
// w denotes 1 - x^{-2}.
struct Factor {
  enum class Kind {
    Pow,         // x^alpha                                  (p[0] = alpha)
    ShiftPow,    // (1 + x)^beta                             (p[0] = beta)
    Hyp,         // regularized 2F1(a, b; c; w)              (p = a, b, c)
    Poly,        // sum_k poly[k] w^k
    LogSmooth,   // log(1 + x) - 2 log x
    ScaledT,     // T-series block of the integer case       (p = mu, nu; n)
    Derivative,  // n-th derivative of `inner`
    Lambda,      // opaque callback, not serializable
  };
  Kind kind = Kind::Pow;
  cplx p[3] = {0.0, 0.0, 0.0};
  int n = 0;
  std::vector<cplx> poly;
  std::shared_ptr<const Coefficient> inner;
  std::function<Jet(double, int)> fn;

  static Factor power(cplx alpha);
  static Factor shift_power(cplx beta);
  static Factor hyp(cplx a, cplx b, cplx c);
  static Factor polynomial(std::vector<cplx> coeffs);
  static Factor log_smooth();
  static Factor scaled_t(cplx mu, cplx nu, int n);
  static Factor derivative(const Coefficient& inner, int n);
  static Factor lambda(std::function<Jet(double, int)> fn);

  Jet jet(double x, int order) const;
};

// scale * product of factors.
struct Coefficient {
  cplx scale = 1.0;
  std::vector<Factor> factors;

  Coefficient() = default;
  explicit Coefficient(cplx s) : scale(s) {}
  Coefficient(cplx s, std::vector<Factor> f) : scale(s), factors(std::move(f)) {}

  Jet jet(double x, int order) const;
  cplx value(double x) const { return jet(x, 0).value(); }
  bool serializable() const;
  Coefficient times(const Coefficient& o) const;
};

struct SingularBasis {
  enum class Kind { Regular, PowMinus, PowPlus, BoundaryPower, DeltaDeriv, PrincipalValue, LogAbs, HeavisideStep };
  Kind kind = Kind::Regular;
  cplx lambda = 0.0;    // PowMinus, PowPlus, BoundaryPower
  Side side = Side::Plus;  // BoundaryPower
  int m = 0;            // DeltaDeriv order
  int depth = -1;       // IBP depth override for PowMinus/PowPlus, -1 = automatic

  static SingularBasis regular() { return {}; }
  static SingularBasis pow_minus(cplx l) { return {Kind::PowMinus, l}; }
  static SingularBasis pow_plus(cplx l) { return {Kind::PowPlus, l}; }
  static SingularBasis boundary_power(cplx l, Side s) { return {Kind::BoundaryPower, l, s}; }
  static SingularBasis delta(int m) { return {Kind::DeltaDeriv, 0.0, Side::Plus, m}; }
  static SingularBasis principal_value() { return {Kind::PrincipalValue}; }
  static SingularBasis log_abs() { return {Kind::LogAbs}; }
  static SingularBasis heaviside() { return {Kind::HeavisideStep}; }
};

const char* to_string(SingularBasis::Kind k);

struct Term {
  Coefficient coeff;
  SingularBasis basis;
};

struct GeneralizedFunction {
  std::vector<Term> terms;

  void add(Coefficient c, SingularBasis b) { terms.push_back({std::move(c), b}); }
};

// Smooth compactly supported test function on (0, inf).
class TestFunction {
 public:
  virtual ~TestFunction() = default;
  virtual double support_lo() const = 0;
  virtual double support_hi() const = 0;
  virtual int max_order() const = 0;
  virtual Jet jet(double x, int order) const = 0;
  cplx value(double x) const { return jet(x, 0).value(); }
};

// exp(-1/(1-t^2)), t = (x - center)/width.
class Bump : public TestFunction {
 public:
  Bump(double center, double width, int max_deriv_order = 20);
  double support_lo() const override { return center_ - width_; }
  double support_hi() const override { return center_ + width_; }
  int max_order() const override { return max_order_; }
  Jet jet(double x, int order) const override;
  double center() const { return center_; }
  double width() const { return width_; }

 private:
  double center_, width_;
  int max_order_;
};

// The k-th derivative of another test function.
class DerivedTest : public TestFunction {
 public:
  DerivedTest(const TestFunction& base, int k) : base_(base), k_(k) {}
  double support_lo() const override { return base_.support_lo(); }
  double support_hi() const override { return base_.support_hi(); }
  int max_order() const override { return base_.max_order() - k_; }
  Jet jet(double x, int order) const override { return base_.jet(x, order + k_).shifted(k_); }

 private:
  const TestFunction& base_;
  int k_;
};

// alpha * f + beta * g.
class CombinedTest : public TestFunction {
 public:
  CombinedTest(const TestFunction& f, cplx alpha, const TestFunction& g, cplx beta)
      : f_(f), g_(g), alpha_(alpha), beta_(beta) {}
  double support_lo() const override;
  double support_hi() const override;
  int max_order() const override;
  Jet jet(double x, int order) const override;

 private:
  const TestFunction& f_;
  const TestFunction& g_;
  cplx alpha_, beta_;
};

struct PairOptions {
  double tol = 1e-12;
  int max_delta_order = 20;
};

cplx pair(const GeneralizedFunction& d, const TestFunction& phi, const PairOptions& opt = {});
cplx pair_term(const Term& t, const TestFunction& phi, const PairOptions& opt = {});

// Depth used for PowMinus/PowPlus(lambda) when none is forced.
int default_ibp_depth(cplx lambda);

// (x - 1 +- i0)^lambda in the basis, coefficient 1.
GeneralizedFunction boundary_power_expand(cplx lambda, Side side);

GeneralizedFunction differentiate(const GeneralizedFunction& d);
// alpha * d1 + d2
GeneralizedFunction scale_add(cplx alpha, const GeneralizedFunction& d1, const GeneralizedFunction& d2);
GeneralizedFunction negate(const GeneralizedFunction& d);
// Multiply every term's coefficient by c.
GeneralizedFunction multiply(const Coefficient& c, const GeneralizedFunction& d);

}  // namespace ws
