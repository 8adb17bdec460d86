#pragma once

// Truncated Taylor arithmetic: a Jet of order N holds c[j] = f^{(j)}(x0)/j!
// for j = 0..N.

#include <vector>

#include "ws/types.hpp"

namespace ws {

class Jet {
 public:
  Jet() = default;
  explicit Jet(int order, cplx value = 0.0) : c_(order + 1, 0.0) { c_[0] = value; }

  static Jet constant(int order, cplx v) { return Jet(order, v); }
  // The identity map x -> x expanded at x0.
  static Jet variable(int order, double x0);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  cplx operator[](int j) const { return c_[j]; }
  cplx& operator[](int j) { return c_[j]; }
  cplx value() const { return c_[0]; }
  // j-th derivative f^{(j)}(x0).
  cplx derivative(int j) const;

  // The jet of f^{(k)}, one order shorter per derivative.
  Jet shifted(int k) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(cplx s);

 private:
  std::vector<cplx> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(cplx s, Jet a);
Jet reciprocal(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet pow(const Jet& a, cplx alpha);

// f(g(x)) where outer[j] = f^{(j)}(g(x0))/j! and g is the inner jet.
Jet compose(const std::vector<cplx>& outer, const Jet& inner);

}  // namespace ws
