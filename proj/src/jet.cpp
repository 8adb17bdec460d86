#include "ws/jet.hpp"

#include <algorithm>
#include <cmath>

#include "ws/error.hpp"

namespace ws {

Jet Jet::variable(int order, double x0) {
  Jet j(order, x0);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

cplx Jet::derivative(int j) const {
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= i;
  return c_[j] * f;
}

Jet Jet::shifted(int k) const {
  if (k > order()) throw Error(ErrorCode::InsufficientOrder, "jet: derivative order exceeds jet order");
  Jet out(order() - k);
  for (int j = 0; j <= out.order(); ++j) {
    double f = 1.0;
    for (int i = j + 1; i <= j + k; ++i) f *= i;
    out.c_[j] = c_[j + k] * f;
  }
  return out;
}

Jet Jet::truncated(int order) const {
  Jet out(order);
  for (int j = 0; j <= std::min(order, this->order()); ++j) out.c_[j] = c_[j];
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  for (int j = 0; j <= std::min(order(), o.order()); ++j) c_[j] += o.c_[j];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (int j = 0; j <= std::min(order(), o.order()); ++j) c_[j] -= o.c_[j];
  return *this;
}

Jet& Jet::operator*=(cplx s) {
  for (cplx& v : c_) v *= s;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(cplx s, Jet a) { return a *= s; }

Jet operator*(const Jet& a, const Jet& b) {
  const int n = std::min(a.order(), b.order());
  Jet out(n);
  for (int i = 0; i <= n; ++i) {
    cplx s = 0.0;
    for (int k = 0; k <= i; ++k) s += a[k] * b[i - k];
    out[i] = s;
  }
  return out;
}

Jet reciprocal(const Jet& a) {
  const int n = a.order();
  Jet r(n);
  const cplx inv = 1.0 / a[0];
  r[0] = inv;
  for (int i = 1; i <= n; ++i) {
    cplx s = 0.0;
    for (int k = 1; k <= i; ++k) s += a[k] * r[i - k];
    r[i] = -s * inv;
  }
  return r;
}

Jet exp(const Jet& a) {
  const int n = a.order();
  Jet e(n, std::exp(a[0]));
  for (int i = 1; i <= n; ++i) {
    cplx s = 0.0;
    for (int k = 1; k <= i; ++k) s += double(k) * a[k] * e[i - k];
    e[i] = s / double(i);
  }
  return e;
}

Jet log(const Jet& a) {
  const int n = a.order();
  Jet l(n, std::log(a[0]));
  for (int i = 1; i <= n; ++i) {
    cplx s = 0.0;
    for (int k = 1; k < i; ++k) s += double(k) * l[k] * a[i - k];
    l[i] = (a[i] - s / double(i)) / a[0];
  }
  return l;
}

Jet pow(const Jet& a, cplx alpha) {
  const int n = a.order();
  Jet p(n, std::exp(alpha * std::log(a[0])));
  for (int i = 1; i <= n; ++i) {
    cplx s = 0.0;
    for (int k = 1; k <= i; ++k) s += (alpha * double(k) - double(i - k)) * a[k] * p[i - k];
    p[i] = s / (double(i) * a[0]);
  }
  return p;
}

Jet compose(const std::vector<cplx>& outer, const Jet& inner) {
  const int n = inner.order();
  Jet d = inner;
  d[0] = 0.0;  // g(x) - g(x0)
  // Horner: sum_j outer[j] d^j
  Jet acc(n, outer.empty() ? cplx(0.0) : outer.back());
  for (int j = static_cast<int>(outer.size()) - 2; j >= 0; --j) {
    acc = acc * d;
    acc[0] += outer[j];
  }
  return acc;
}

}  // namespace ws
