#include "ws/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "ws/error.hpp"
#include "ws/quadrature.hpp"
#include "ws/specfun.hpp"

namespace ws {

void validate(const QuadConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "oracle tolerances must be positive");
  }
  if (cfg.abel_eps_ladder.empty()) throw Error(ErrorCode::InvalidArgument, "eps ladder is empty");
  for (size_t i = 0; i < cfg.abel_eps_ladder.size(); ++i) {
    if (!(cfg.abel_eps_ladder[i] > 0.0) || (i > 0 && !(cfg.abel_eps_ladder[i] < cfg.abel_eps_ladder[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "eps ladder must be strictly decreasing and positive");
    }
  }
  if (cfg.extrapolation_order < 0 || cfg.extrapolation_order >= int(cfg.abel_eps_ladder.size())) {
    throw Error(ErrorCode::InvalidArgument, "extrapolation order must be below the ladder length");
  }
  if (cfg.max_panels < 1) throw Error(ErrorCode::InvalidArgument, "max_panels must be positive");
}

namespace {

// J_nu'(x) = (J_{nu-1} - J_{nu+1}) / 2.
double bessel_j_prime(double nu, double x) {
  return 0.5 * (bessel_j(nu - 1.0, x) - bessel_j(nu + 1.0, x)).real();
}

double mcmahon(double nu, int k) {
  const double m = 4.0 * nu * nu;
  const double b = (k + 0.5 * nu - 0.25) * kPi;
  const double e = 8.0 * b;
  return b - (m - 1.0) / e - 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * e * e * e);
}

int worker_count(const QuadConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n) on up to `threads` workers; each index is
// handled by exactly one worker and results go to caller-owned slots.
template <class F>
void parallel_for(int n, int threads, F body) {
  if (threads <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  const int t = std::min(threads, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(t);
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += t) body(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
}

QuadTolerance tolerance(const QuadConfig& cfg) {
  QuadTolerance t;
  t.abs_tol = cfg.abs_tol;
  t.rel_tol = cfg.rel_tol;
  t.max_subdivisions = 4000;
  return t;
}

void require_converged(const QuadResult& r, const char* where, int panels) {
  if (!r.converged) {
    std::ostringstream os;
    os << where << ": panel quadrature did not converge (panel " << panels << ", error estimate " << r.abs_error
       << ")";
    throw Error(ErrorCode::Quadrature, os.str());
  }
}

// Breakpoints 0 < k_1 < k_2 < ... covering (0, cutoff] and ending past it.
std::vector<double> partition(cplx nu, double cutoff) {
  std::vector<double> z;
  if (nu.imag() == 0.0 && nu.real() > -1.0) {
    int count = int(cutoff / kPi) + 4;
    z = bessel_zeros(nu.real(), count);
    while (z.back() < cutoff) {
      count *= 2;
      z = bessel_zeros(nu.real(), count);
    }
    auto it = std::lower_bound(z.begin(), z.end(), cutoff);
    z.erase(it + 1, z.end());
  } else {
    for (double k = kPi; ; k += kPi) {
      z.push_back(k);
      if (k >= cutoff) break;
    }
  }
  return z;
}

// The Bessel factor A_mu: J (both Hankel halves), or a single Hankel function.
struct Component {
  double weight;
  Side side;
};

std::vector<Component> components(IntegralKind k) {
  if (k == IntegralKind::HplusJ) return {{1.0, Side::Plus}};
  if (k == IntegralKind::HminusJ) return {{1.0, Side::Minus}};
  return {{0.5, Side::Plus}, {0.5, Side::Minus}};
}

cplx first_factor(IntegralKind k, cplx mu, double t) {
  if (k == IntegralKind::HplusJ) return hankel(Side::Plus, mu, t);
  if (k == IntegralKind::HminusJ) return hankel(Side::Minus, mu, t);
  return bessel_j(mu, t);
}

// Behaviour of  k^rho A_mu(x k) J_nu(k)  at k = 0.
Endpoint origin_behaviour(const WSParams& p) {
  if (p.kind == IntegralKind::JJ) return Endpoint::power((p.rho + p.mu + p.nu).real());
  if (std::abs(p.mu) < 1e-14) return Endpoint::log();
  return Endpoint::power((p.rho + p.nu).real() - std::abs(p.mu.real()));
}

void require_oscillatory_kind(const WSParams& p) {
  if (p.kind != IntegralKind::JJ && p.kind != IntegralKind::HplusJ && p.kind != IntegralKind::HminusJ) {
    throw Error(ErrorCode::InvalidArgument, "oracle: expected kind jj, hplus_j or hminus_j");
  }
}

}  // namespace

std::vector<double> bessel_zeros(double nu, int count) {
  if (!(nu > -1.0)) throw Error(ErrorCode::Domain, "bessel_zeros: need nu > -1");
  std::vector<double> z;
  z.reserve(count);
  for (int k = 1; k <= count; ++k) {
    double r = mcmahon(nu, k);
    if (k == 1 && nu > 3.0) r = nu + 1.8557571 * std::cbrt(nu);  // McMahon is poor for the first zero
    if (!z.empty() && r <= z.back()) r = z.back() + 0.5 * kPi;
    for (int it = 0; it < 30; ++it) {
      const double step = bessel_j(nu, r).real() / bessel_j_prime(nu, r);
      r -= step;
      if (std::abs(step) < 1e-15 * r) break;
    }
    z.push_back(r);
  }
  return z;
}

cplx richardson(const std::vector<double>& eps, const std::vector<cplx>& v, int order, double* err) {
  const int m = order + 1;
  if (int(eps.size()) < m || int(v.size()) < m) throw Error(ErrorCode::InvalidArgument, "richardson: too few points");
  // Neville tableau at 0; diag[k] uses points 0..k.
  std::vector<cplx> t(v.begin(), v.begin() + m);
  std::vector<cplx> diag{t[0]};
  for (int k = 1; k < m; ++k) {
    for (int i = m - 1; i >= k; --i) {
      t[i] = (eps[i - k] * t[i] - eps[i] * t[i - 1]) / (eps[i - k] - eps[i]);
    }
    diag.push_back(t[k]);
  }
  double e = 0.0;
  if (m >= 2) e = std::abs(diag[m - 1] - diag[m - 2]);
  if (m >= 3) {
    const double prev = std::abs(diag[m - 2] - diag[m - 3]);
    const double floor = 1e-9 * (1.0 + std::abs(diag[m - 1]));
    if (e > floor && e > 4.0 * prev) {
      std::ostringstream os;
      os << "extrapolation unstable: last correction " << e << " exceeds previous " << prev;
      throw Error(ErrorCode::Extrapolation, os.str());
    }
  }
  if (err) *err = e;
  return diag[m - 1];
}

OracleValue quad_ws(const WSParams& p, double x, const QuadConfig& cfg) {
  validate(cfg);
  require_oscillatory_kind(p);
  WSParams q = p;
  q.symbolic = false;
  const std::string v = validity_violation(q);
  if (!v.empty()) throw Error(ErrorCode::Validity, v);
  if (!(p.rho.real() < 1.0)) throw Error(ErrorCode::Validity, "quad_ws requires Re rho < 1");
  if (!(x > 0.0) || x == 1.0) throw Error(ErrorCode::InvalidArgument, "quad_ws requires x > 0, x != 1");

  const cplx mu = p.mu, nu = p.nu, rho = p.rho;
  auto f = [&](double k) -> cplx {
    if (k == 0.0) return 0.0;
    return std::exp(rho * std::log(k)) * first_factor(p.kind, mu, x * k) * bessel_j(nu, k);
  };

  const double order_scale = 4.0 * (std::abs(mu) + std::abs(nu)) + 60.0;
  const double cutoff = std::max(order_scale, order_scale / x);
  const std::vector<double> z = partition(nu, cutoff);
  const QuadTolerance tol = tolerance(cfg);

  const int n = int(z.size());
  if (n > cfg.max_panels) throw Error(ErrorCode::Quadrature, "quad_ws: panel budget exceeded");
  std::vector<QuadResult> head(n);
  parallel_for(n, worker_count(cfg), [&](int i) {
    head[i] = i == 0 ? integrate_endpoints(f, 0.0, z[0], origin_behaviour(p), Endpoint::smooth(), tol)
                     : integrate(f, z[i - 1], z[i], tol);
  });
  OracleValue out;
  for (int i = 0; i < n; ++i) {
    require_converged(head[i], "quad_ws", i);
    out.value += head[i].value;
    out.abs_error += head[i].abs_error;
  }
  out.panels = n;

  // Tail: A_mu(x k) J_nu(k) = sum of w * H^s_mu(x k) * H^t_nu(k) / 2.
  const double k0 = z.back();
  const cplx i1(0.0, 1.0);
  cplx tail = 0.0;
  for (const Component& a : components(p.kind)) {
    for (Side t : {Side::Plus, Side::Minus}) {
      const double sa = a.side == Side::Plus ? 1.0 : -1.0, st = t == Side::Plus ? 1.0 : -1.0;
      const double omega = sa * x + st;
      const double dir = omega > 0.0 ? 1.0 : -1.0;
      const cplx phase0 = -sa * (0.5 * mu + 0.25) * kPi - st * (0.5 * nu + 0.25) * kPi;
      auto g = [&, omega, dir, phase0](double y) -> cplx {
        const cplx k(k0, dir * y);
        const cplx e = std::exp(i1 * (omega * k + phase0));
        const cplx amp = 2.0 / (kPi * k * std::sqrt(x)) * hankel_modulation(a.side, mu, x * k) * hankel_modulation(t, nu, k);
        return 0.5 * a.weight * std::exp(rho * std::log(k)) * amp * e * cplx(0.0, dir);
      };
      const QuadResult r = integrate_to_infinity(g, 0.0, 1.0 / std::abs(omega), tol);
      require_converged(r, "quad_ws tail", n);
      tail += r.value;
      out.abs_error += r.abs_error;
    }
  }
  out.value += tail;
  out.tail_estimate = std::abs(tail);
  return out;
}

OracleValue quad_pairing(const WSParams& p, const TestFunction& phi, const QuadConfig& cfg) {
  validate(cfg);
  require_oscillatory_kind(p);
  const double lo = phi.support_lo(), hi = phi.support_hi();
  if (!(lo > 0.0) || !(hi > lo)) throw Error(ErrorCode::InvalidArgument, "test function must be supported in (0, inf)");
  const cplx mu = p.mu, nu = p.nu, rho = p.rho;

  // Phi(k) = int A_mu(x k) phi(x) dx with Gauss panels of about one wavelength.
  // The L1 norm of the integrand is returned alongside so that the outer loop
  // can tell when Phi has decayed into rounding noise.
  const GaussRule& gi = gauss_legendre(16);
  auto inner = [&](double k, double& l1) -> cplx {
    const int panels = 8 + int((hi - lo) * k / (2.0 * kPi));
    const double h = 0.5 * (hi - lo) / panels;
    cplx sum = 0.0;
    l1 = 0.0;
    for (int j = 0; j < panels; ++j) {
      const double c = lo + (2 * j + 1) * h;
      for (size_t i = 0; i < gi.nodes.size(); ++i) {
        const double x = c + h * gi.nodes[i];
        const cplx t = h * gi.weights[i] * first_factor(p.kind, mu, x * k) * phi.value(x);
        sum += t;
        l1 += std::abs(t);
      }
    }
    return sum;
  };
  auto g = [&](double k, double& ratio) -> cplx {
    if (k == 0.0) return 0.0;
    double l1 = 0.0;
    const cplx in = inner(k, l1);
    ratio = l1 > 0.0 ? std::abs(in) / l1 : 0.0;
    return std::exp(rho * std::log(k)) * bessel_j(nu, k) * in;
  };

  const std::vector<double>& eps = cfg.abel_eps_ladder;
  const int m = int(eps.size());
  auto damp = [&](Damping d, int j, double k) {
    const double t = eps[j] * k;
    return d == Damping::Exponential ? std::exp(-t) : std::exp(-t * t);
  };
  const Damping alt = cfg.damping == Damping::Exponential ? Damping::Gaussian : Damping::Exponential;
  // Accumulators: [0, m) chosen damping, [m, 2m) the other one, [2m] none.
  const int slots = 2 * m + 1;
  auto accumulate = [&](std::vector<cplx>& acc, double k, cplx val) {
    for (int j = 0; j < m; ++j) {
      acc[j] += damp(cfg.damping, j, k) * val;
      acc[m + j] += damp(alt, j, k) * val;
    }
    acc[2 * m] += val;
  };
  std::vector<cplx> sums(slots, 0.0);
  const QuadTolerance tol = tolerance(cfg);

  std::vector<double> zeros = nu.imag() == 0.0 && nu.real() > -1.0 ? bessel_zeros(nu.real(), 64)
                                                                   : std::vector<double>{};
  auto zero_at = [&](int i) -> double {
    if (zeros.empty()) return kPi * (i + 1);
    while (i >= int(zeros.size())) zeros = bessel_zeros(nu.real(), 2 * int(zeros.size()));
    return zeros[i];
  };

  // First panel: power behaviour at the origin, adaptive for every slot.
  const double k1 = zero_at(0);
  for (int j = 0; j < slots; ++j) {
    auto f = [&](double k) -> cplx {
      double r;
      const cplx v = g(k, r);
      if (j < m) return damp(cfg.damping, j, k) * v;
      if (j < 2 * m) return damp(alt, j - m, k) * v;
      return v;
    };
    const QuadResult r = integrate_endpoints(f, 0.0, k1, origin_behaviour(p), Endpoint::smooth(), tol);
    require_converged(r, "quad_pairing", 0);
    sums[j] += r.value;
  }

  // Remaining panels between zeros with a fixed Gauss rule; batches run in
  // parallel, reduction in panel order.  Stop once Phi has sunk to 1e-12 of
  // its integrand's L1 norm on 20 consecutive panels.
  const GaussRule& gr = gauss_legendre(16);
  const int batch = 16;
  int panel = 1;
  int quiet = 0;
  bool done = false;
  while (!done) {
    if (panel + batch > cfg.max_panels) {
      std::ostringstream os;
      os << "quad_pairing: no decay after " << panel << " panels (k = " << zero_at(panel) << ")";
      throw Error(ErrorCode::Convergence, os.str());
    }
    std::vector<std::vector<cplx>> part(batch, std::vector<cplx>(slots, 0.0));
    std::vector<double> worst(batch, 0.0);
    std::vector<double> a(batch + 1);
    for (int b = 0; b <= batch; ++b) a[b] = zero_at(panel + b - 1);
    parallel_for(batch, worker_count(cfg), [&](int b) {
      const double c = 0.5 * (a[b] + a[b + 1]), h = 0.5 * (a[b + 1] - a[b]);
      for (size_t i = 0; i < gr.nodes.size(); ++i) {
        const double k = c + h * gr.nodes[i];
        double r = 0.0;
        accumulate(part[b], k, h * gr.weights[i] * g(k, r));
        worst[b] = std::max(worst[b], r);
      }
    });
    for (int b = 0; b < batch && !done; ++b) {
      for (int j = 0; j < slots; ++j) sums[j] += part[b][j];
      quiet = worst[b] < 1e-12 ? quiet + 1 : 0;
      if (quiet >= 20) done = true;
      ++panel;
    }
  }

  OracleValue out;
  out.panels = panel;
  out.ladder.assign(sums.begin(), sums.begin() + m);
  out.undamped = sums[2 * m];
  out.value = richardson(eps, out.ladder, cfg.extrapolation_order, &out.abs_error);
  std::vector<cplx> other(sums.begin() + m, sums.begin() + 2 * m);
  out.alternate = richardson(eps, other, cfg.extrapolation_order);
  return out;
}

OracleValue quad_kexp(const WSParams& p, const QuadConfig& cfg) {
  validate(cfg);
  if (p.kind != IntegralKind::KI && p.kind != IntegralKind::KJ) {
    throw Error(ErrorCode::InvalidArgument, "quad_kexp: expected kind ki or kj");
  }
  const std::string v = validity_violation(p);
  if (!v.empty()) throw Error(ErrorCode::Validity, v);
  const cplx z = p.arg, mu = p.mu, nu = p.nu, rho = p.rho;
  const bool ki = p.kind == IntegralKind::KI;
  const double decay = ki ? z.real() - 1.0 : z.real();
  if (!(decay > 0.0)) {
    throw Error(ErrorCode::Validity, ki ? "quad_kexp: K.I needs Re z > 1" : "quad_kexp: K.J needs Re z > 0");
  }
  auto f = [&](double k) -> cplx {
    if (k == 0.0) return 0.0;
    if (ki && (1.0 + z.real()) * k > 650.0) {
      // I and K would over/underflow separately; the product is below e^{-40} here.
      if (decay * k < 40.0) throw Error(ErrorCode::Overflow, "quad_kexp: K.I integrand leaves double range");
      return 0.0;
    }
    const cplx c = ki ? bessel_i(nu, k) : bessel_j(nu, k);
    return std::exp(rho * std::log(k)) * bessel_k(mu, z * k) * c;
  };
  const QuadTolerance tol = tolerance(cfg);
  const double split = 1.0;
  const QuadResult a = integrate_endpoints(
      f, 0.0, split, Endpoint::power((rho + nu).real() - std::abs(mu.real())), Endpoint::smooth(), tol);
  require_converged(a, "quad_kexp", 0);
  const QuadResult b = integrate_to_infinity(f, split, std::max(1.0, 1.0 / decay), tol);
  require_converged(b, "quad_kexp tail", 1);
  OracleValue out;
  out.value = a.value + b.value;
  out.abs_error = a.abs_error + b.abs_error;
  out.panels = 2;
  out.tail_estimate = std::abs(b.value);
  return out;
}

}  // namespace ws
