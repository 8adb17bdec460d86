#pragma once

// Gauss hypergeometric function on the cut plane, boundary values on the cut,
// and the finite / logarithmic series used for integer parameter gaps.
//
// Normalization: the regularized function is F(a,b;c;z)/Gamma(c), entire in c.

#include "ws/types.hpp"

namespace ws {

SeriesResult hyp2f1(cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg = {});

SeriesResult hyp2f1_regularized(cplx a, cplx b, cplx c, cplx z, const SeriesConfig& cfg = {});

// lim F(a,b;c;x -+ i eps) for real x > 1.  Side::Plus approaches from below
// (x - i0), Side::Minus from above.
cplx hyp2f1_boundary(cplx a, cplx b, cplx c, double x, Side side, const SeriesConfig& cfg = {});
cplx hyp2f1_regularized_boundary(cplx a, cplx b, cplx c, double x, Side side,
                                 const SeriesConfig& cfg = {});

// Regularized F(a,b;c;1-w), with w passed exactly: near z = 1 this keeps the
// digits that forming 1 - z would lose.
cplx hyp2f1_regularized_complement(cplx a, cplx b, cplx c, cplx w, const SeriesConfig& cfg = {});

// Regularized 2F1 continued along the Taylor path of its ODE; exposed for
// cross-checks of the transformation engine.
cplx hyp2f1_regularized_ode(cplx a, cplx b, cplx c, cplx z);

// Finite sum over k < n of ((1-n+mu+nu)/2)_k ((1-n-mu+nu)/2)_k z^k / ((1-n)_k k!).
cplx s_series(cplx mu, cplx nu, int n, cplx z);

// The digamma-weighted series
//   sum_k (a)_k (b)_k z^k / ((n+k)! k!) {psi(k+1)+psi(n+k+1)-psi(a+k)-psi(b+k)},
// a = (1+n+mu+nu)/2, b = (1+n-mu+nu)/2, for |z| < 1.
SeriesResult t_series(cplx mu, cplx nu, int n, cplx z, double tol = 1e-14);

}  // namespace ws
