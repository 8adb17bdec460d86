#pragma once

// Closed forms for  int_0^inf k^rho A_mu(x k) J_nu(k) dk  with A one of
// J, H^+, H^-, K (argument z k) and K paired with I.

#include <string>
#include <vector>

#include "ws/distr.hpp"
#include "ws/types.hpp"

namespace ws {

enum class IntegralKind { JJ, HplusJ, HminusJ, KJ, KI };

enum class Regime { Function, DistNonInteger, DistInteger, SpecialRho1, DegenerateUnsupported, Invalid };

const char* to_string(IntegralKind k);
const char* to_string(Regime r);

struct WSParams {
  cplx mu = 0.0;
  cplx nu = 0.0;
  cplx rho = 0.0;
  IntegralKind kind = IntegralKind::JJ;
  // x > 0 for JJ / H+-J, z with Re z > 0 for K-kinds; ignored when symbolic.
  cplx arg = 1.0;
  bool symbolic = false;
};

struct WSOptions {
  // Reject rho in Z with (1 - rho +- mu + nu)/2 in Z instead of evaluating
  // the integer branch by continuity.
  bool strict_degenerate = false;
  // Evaluate the x < 1 function branch with argument x^{-2} instead of x^2.
  // Wrong on purpose; kept only as a negative control.
  bool inverted_small_x_argument = false;
  // Term caps and tolerance for the hypergeometric series of the pointwise
  // formulas.
  SeriesConfig series;
};

struct WSResult {
  Regime regime = Regime::Function;
  bool is_scalar = true;
  cplx value{};
  double est_abs_error = 0.0;
  GeneralizedFunction dist;
  std::vector<std::string> notes;
};

// Snap tolerance for integer rho.
inline constexpr double kIntegerSnap = 1e-12;

// Re(rho + nu + 1) > |Re mu|, except for J.J (pointwise or distribution)
// where the integral converges whenever Re(rho + mu + nu + 1) > 0.  Returns
// an empty string when satisfied, otherwise a message naming the violated
// inequality.
std::string validity_violation(const WSParams& p);
bool outside_stated_hypothesis(const WSParams& p);

// True when rho (snapped) is an integer and (1 - rho +- mu + nu)/2 is an integer.
bool literal_degenerate(const WSParams& p);

Regime classify(const WSParams& p, const WSOptions& opt = {});

cplx ki_integral(cplx mu, cplx nu, cplx rho, cplx z, const SeriesConfig& cfg = {});
cplx kj_integral(cplx mu, cplx nu, cplx rho, cplx z, const SeriesConfig& cfg = {});

// J.J with Re rho < 1 at x != 1.
cplx ws_function(cplx mu, cplx nu, cplx rho, double x, const WSOptions& opt = {});

// J.J with Re rho > 0 as a distribution in x.
WSResult ws_distribution(cplx mu, cplx nu, cplx rho, const WSOptions& opt = {});

// H^+-.J: a distribution when symbolic (Re rho > 0), otherwise a pointwise
// value (Re rho < 1, x != 1).
WSResult hankel_variant(Side sign, cplx mu, cplx nu, cplx rho, double x, bool symbolic, const WSOptions& opt = {});

// Dispatch on p.kind and the regime.
WSResult evaluate(const WSParams& p, const WSOptions& opt = {});

}  // namespace ws
