#pragma once

#include <complex>
#include <cstdint>

namespace ws {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// Outcome of a truncated series or an expansion assembled from several.
struct SeriesResult {
  cplx value{};
  double est_abs_error = 0.0;
  int terms_used = 0;
  bool converged = false;
};

// Tolerances shared by the series engines.
struct SeriesConfig {
  double rel_tol = 1e-14;
  int max_terms = 100000;
  // Number of consecutive terms that must fall below tolerance.
  int stop_run = 3;
  // Accumulate series in long double.
  bool extended_precision = false;
};

// Boundary side for values on a branch cut or at x = 1.
enum class Side : int { Plus = 1, Minus = -1 };

inline int sign_of(Side s) { return static_cast<int>(s); }

}  // namespace ws
