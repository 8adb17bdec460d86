#include "ws/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <queue>

#include "ws/error.hpp"

namespace ws {

namespace {

// Kronrod abscissae and weights (QUADPACK qk21), and the embedded Gauss
// 10-point weights.
constexpr double kXgk[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                             0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                             0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                             0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                             0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
                             0.0};
constexpr double kWgk[11] = {0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
                             0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
                             0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                             0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
                             0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                             0.149445554002916905664936468389821};
constexpr double kWg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                           0.295524224714752870173892994651338};

struct Panel {
  double a, b;
  cplx value;
  double err;
  int order;  // insertion counter, breaks ties deterministically
  bool operator<(const Panel& o) const { return err < o.err || (err == o.err && order > o.order); }
};

Panel gk21(const RealToComplex& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = fc * kWgk[10];
  cplx gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const cplx s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h), 0};
}

double substitution_power(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::Smooth: return 1.0;
    case Endpoint::Kind::Log: return 3.0;
    case Endpoint::Kind::Power: {
      const double s1 = 1.0 + e.sigma;
      if (s1 <= 0.0) throw Error(ErrorCode::Quadrature, "endpoint exponent is not integrable");
      return std::ceil(s1 - 1e-12) / s1;
    }
  }
  return 1.0;
}

}  // namespace

QuadResult integrate(const RealToComplex& f, double a, double b, const QuadTolerance& tol) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Panel> heap;
  int counter = 0;
  Panel first = gk21(f, a, b);
  first.order = counter++;
  cplx total = first.value;
  double err = first.err;
  heap.push(first);
  int evals = 21;
  int subdivisions = 0;
  while (err > std::max(tol.abs_tol, tol.rel_tol * std::abs(total)) && subdivisions < tol.max_subdivisions) {
    Panel worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) {
      // interval exhausted at double resolution; keep it and stop
      heap.push(worst);
      break;
    }
    Panel l = gk21(f, worst.a, m), r = gk21(f, m, worst.b);
    l.order = counter++;
    r.order = counter++;
    evals += 42;
    ++subdivisions;
    total += l.value + r.value - worst.value;
    err += l.err + r.err - worst.err;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum from the panels to shed the running-update rounding.
  cplx sum = 0.0;
  double esum = 0.0;
  std::map<double, Panel> ordered;
  while (!heap.empty()) {
    ordered.emplace(heap.top().a, heap.top());
    heap.pop();
  }
  for (const auto& kv : ordered) {
    sum += kv.second.value;
    esum += kv.second.err;
  }
  out.value = sum;
  out.abs_error = esum;
  out.evaluations = evals;
  out.converged = esum <= std::max(tol.abs_tol, tol.rel_tol * std::abs(sum));
  return out;
}

QuadResult integrate_endpoints(const RealToComplex& f, double a, double b, Endpoint left, Endpoint right,
                               const QuadTolerance& tol) {
  const double m = 0.5 * (a + b);
  const double L = m - a;
  QuadTolerance half = tol;
  half.abs_tol = 0.5 * tol.abs_tol;
  const double pl = substitution_power(left), pr = substitution_power(right);
  auto gl = [&](double u) -> cplx {
    if (u <= 0.0) return 0.0;
    const double up = std::pow(u, pl);
    // Nodes that round onto the endpoint carry negligible weight.
    if (a + L * up == a) return 0.0;
    return f(a + L * up) * (L * pl * up / u);
  };
  auto gr = [&](double u) -> cplx {
    if (u <= 0.0) return 0.0;
    const double up = std::pow(u, pr);
    if (b - L * up == b) return 0.0;
    return f(b - L * up) * (L * pr * up / u);
  };
  const QuadResult r1 = pl == 1.0 ? integrate(f, a, m, half) : integrate(gl, 0.0, 1.0, half);
  const QuadResult r2 = pr == 1.0 ? integrate(f, m, b, half) : integrate(gr, 0.0, 1.0, half);
  QuadResult out;
  out.value = r1.value + r2.value;
  out.abs_error = r1.abs_error + r2.abs_error;
  out.evaluations = r1.evaluations + r2.evaluations;
  out.converged = r1.converged && r2.converged;
  return out;
}

QuadResult integrate_to_infinity(const RealToComplex& f, double a, double first_width, const QuadTolerance& tol) {
  QuadResult out;
  double lo = a, width = first_width;
  int negligible = 0;
  out.converged = true;
  for (int panel = 0; panel < 200; ++panel) {
    QuadTolerance t = tol;
    t.abs_tol = 0.25 * tol.abs_tol;
    const QuadResult r = integrate(f, lo, lo + width, t);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
    if (std::abs(r.value) <= 1e-3 * std::max(tol.abs_tol, tol.rel_tol * std::abs(out.value))) {
      if (++negligible >= 3) return out;
    } else {
      negligible = 0;
    }
    lo += width;
    width *= 2.0;
  }
  out.converged = false;
  return out;
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // final derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

cplx gauss_panels(const RealToComplex& f, double a, double b, int n, int panels) {
  const GaussRule& g = gauss_legendre(n);
  const double w = (b - a) / panels;
  cplx sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * w, h = 0.5 * w;
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += g.weights[i] * f(c + h * g.nodes[i]);
    sum += s * h;
  }
  return sum;
}

}  // namespace ws
