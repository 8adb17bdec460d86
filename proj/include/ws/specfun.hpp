#pragma once

// Scalar special functions: Gamma family, trigonometric helpers with exact
// zeros, and Bessel functions of complex order.

#include "ws/types.hpp"

namespace ws {

// sin(pi z), cos(pi z) with exact zeros at the integers / half-integers.
cplx sinpi(cplx z);
cplx cospi(cplx z);
double sinpi(double x);
double cospi(double x);

// True when z is a non-positive integer (within exact representation).
bool is_nonpositive_integer(cplx z);
// Distance of z from the nearest integer, |Im z| included.
double distance_to_integer(cplx z);

// Principal-branch log Gamma for Re z >= 1/2; reflection otherwise.  The
// imaginary part is not unwrapped, so only exp(lgamma) is meaningful across
// the reflection.
cplx lgamma(cplx z);

// Gamma(z).  Throws Error(Pole) at non-positive integers and Error(Overflow)
// when |Gamma| exceeds the double range.
cplx gamma(cplx z);

// 1/Gamma(z), entire; exactly zero at the poles of Gamma.
cplx rgamma(cplx z);

// psi(z) = Gamma'(z)/Gamma(z).  Throws Error(Pole) at non-positive integers.
cplx digamma(cplx z);

// Rising factorial (a)_k.
cplx pochhammer(cplx a, int k);

// Harmonic number H_n = sum_{j=1}^n 1/j.
double harmonic(int n);

// ---------------------------------------------------------------------------
// Bessel functions.  Orders may be complex with |Re order| <= 50.  Small
// arguments use power series accumulated in long double; |z| beyond
// kBesselAsymptoticRadius uses the Hankel asymptotic expansion.

inline constexpr double kBesselAsymptoticRadius = 17.0;

cplx bessel_j(cplx order, double x);
// J for complex argument via the power series only (any |z|); used to check
// the I = i^{-nu} J(i z) relation.
cplx bessel_j_series(cplx order, cplx z);
// Asymptotic expansion of J for real x (no crossover logic).
cplx bessel_j_asymptotic(cplx order, double x);

cplx bessel_i(cplx order, double x);

// K_order(z) for Re z >= 0, z != 0.
cplx bessel_k(cplx order, cplx z);

// Hankel functions H^+ = H^(1), H^- = H^(2) of real positive argument,
// obtained from K on the imaginary axis.
cplx hankel(Side sign, cplx order, double x);

// Large-argument Hankel expansion for complex z with Re z > 0; used by the
// quadrature oracle on rotated contours.
cplx hankel_asymptotic(Side sign, cplx order, cplx z);
// The slowly varying factor m with H^+-(z) = sqrt(2/(pi z)) e^{+-i(z - (order/2 + 1/4)pi)} m.
cplx hankel_modulation(Side sign, cplx order, cplx z);

}  // namespace ws
