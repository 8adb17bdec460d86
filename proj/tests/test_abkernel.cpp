#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ws/abkernel.hpp"
#include "ws/error.hpp"
#include "ws/specfun.hpp"

using namespace ws;

namespace {

KernelSpec spec(double mu, cplx gamma = 0.0) {
  KernelSpec s;
  s.mu = mu;
  s.gamma = gamma;
  return s;
}

KernelSpec window(double mu, double a, double b) {
  KernelSpec s = spec(mu);
  s.window = std::make_pair(a, b);
  return s;
}

}  // namespace

TEST_CASE("projection kernel at mu = 1/2 is elementary") {
  // (2/pi) int sin(xk) sin(yk) dk over [sqrt a, sqrt b]
  const double a = 0.5, b = 9.0;
  auto prim = [](double x, double y, double k) {
    const double d = x - y, s = x + y;
    const double first = d == 0.0 ? k : std::sin(d * k) / d;
    return (first - std::sin(s * k) / s) / kPi;
  };
  for (auto [x, y] : {std::pair{0.3, 1.7}, std::pair{2.0, 2.0}, std::pair{5.0, 0.8}}) {
    const double ref = prim(x, y, std::sqrt(b)) - prim(x, y, std::sqrt(a));
    CHECK(std::abs(projection_kernel(window(0.5, a, b), x, y) - ref) < 1e-12);
  }
}

TEST_CASE("projection kernel: symmetry and additivity in the window") {
  for (double mu : {0.0, 1.3}) {
    for (auto [x, y] : {std::pair{0.4, 2.2}, std::pair{3.0, 1.1}}) {
      const double p = projection_kernel(window(mu, 0.2, 3.0), x, y);
      CHECK(std::abs(p - projection_kernel(window(mu, 0.2, 3.0), y, x)) < 1e-14);
      const double split = projection_kernel(window(mu, 0.2, 1.4), x, y) + projection_kernel(window(mu, 1.4, 3.0), x, y);
      CHECK(std::abs(p - split) < 1e-12);
    }
  }
  CHECK_THROWS_AS(projection_kernel(spec(0.5), 1.0, 2.0), Error);
  CHECK_THROWS_AS(projection_kernel(window(0.5, 2.0, 1.0), 1.0, 2.0), Error);
}

TEST_CASE("Dirichlet Laplacian powers at mu = 1/2") {
  // H^{-1}: Green's function min(x, y)
  for (auto [x, y] : {std::pair{0.3, 1.9}, std::pair{4.0, 2.5}}) {
    const KernelValue k = power_kernel(spec(0.5, -1.0), x, y);
    REQUIRE(k.is_scalar);
    CHECK(std::abs(k.value - std::min(x, y)) < 1e-13);
  }
  // H^{-1/2}: (1/pi) log|(x + y)/(x - y)|
  for (auto [x, y] : {std::pair{0.3, 1.9}, std::pair{4.0, 2.5}}) {
    const KernelValue k = power_kernel(spec(0.5, -0.5), x, y);
    CHECK(std::abs(k.value - std::log(std::abs((x + y) / (x - y))) / kPi) < 1e-13);
  }
}

TEST_CASE("gamma = 0 is the identity") {
  const Bump phi(1.1, 0.3);
  for (double mu : {0.0, 0.5, 2.0}) {
    for (double y : {0.5, 3.0}) {
      const KernelValue k = power_kernel(spec(mu), 1.3, y);
      REQUIRE_FALSE(k.is_scalar);
      CHECK(std::abs(pair_in_ratio(k, phi) - phi.value(1.0)) < 1e-8);
    }
  }
  CHECK_THROWS_AS(pair_in_ratio(power_kernel(spec(0.5, -1.0), 1.0, 2.0), phi), Error);
}

TEST_CASE("wave-operator kernel") {
  KernelSpec s = spec(1.5, -0.35);
  s.nu = 1.5;
  for (auto [x, y] : {std::pair{0.6, 1.4}, std::pair{2.5, 0.9}}) {
    CHECK(std::abs(wave_operator_kernel(s, x, y).value - power_kernel(s, x, y).value) < 1e-15);
  }
  // The two signs differ by the phase e^{i (mu - nu) pi}.
  s.nu = 1.2;
  s.sign = Side::Plus;
  const cplx p = wave_operator_kernel(s, 0.6, 1.4).value;
  s.sign = Side::Minus;
  const cplx m = wave_operator_kernel(s, 0.6, 1.4).value;
  CHECK(std::abs(p - std::exp(cplx(0.0, (1.5 - 1.2) * kPi)) * m) < 1e-14 * std::abs(p));

  KernelSpec low = spec(0.8, -0.35);
  low.nu = 1.5;
  CHECK_THROWS_AS(wave_operator_kernel(low, 0.6, 1.4), Error);
  low.allow_outside_hypothesis = true;
  const KernelValue k = wave_operator_kernel(low, 0.6, 1.4);
  CHECK(std::find(k.notes.begin(), k.notes.end(), "outside hypothesis mu, nu > 1") != k.notes.end());
}

TEST_CASE("kernel argument checks") {
  CHECK_THROWS_AS(power_kernel(spec(-1.5), 1.0, 2.0), Error);
  CHECK_THROWS_AS(power_kernel(spec(0.5), -1.0, 2.0), Error);
  // Re(2 gamma + 1) <= 0: no meaning on the diagonal
  CHECK_THROWS_AS(power_kernel(spec(0.5, -0.75), 2.0, 2.0), Error);
}

TEST_CASE("Hankel transform is an involution on the log grid") {
  const Bump phi(1.2, 0.6);
  CHECK(involution_residual(0.5, phi) < 1e-3);
  InvolutionGrid bad;
  bad.points = 1;
  CHECK_THROWS_AS(involution_residual(0.5, phi, bad), Error);
}
