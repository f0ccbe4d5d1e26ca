#include <doctest.h>

#include <cmath>
#include <numbers>

#include "altxy/quadrature.hpp"

using namespace altxy;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto& r = gauss_legendre(8);
  double s = 0, s14 = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    s += r.weights[i];
    s14 += r.weights[i] * std::pow(r.nodes[i], 14);
  }
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s14 == doctest::Approx(2.0 / 15).epsilon(1e-13));
}

TEST_CASE("adaptive rule converges on smooth and kinked integrands") {
  QuadratureResult rep;
  const double v = integrate_scalar([](double x) { return std::cos(x); }, 0, std::numbers::pi / 2, {}, &rep);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.converged);

  QuadratureOptions o;
  o.breakpoints = {0.3};
  const double k = integrate_scalar([](double x) { return std::abs(x - 0.3); }, 0, 1, o);
  CHECK(k == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-12));
}

TEST_CASE("serial and parallel fixed rules agree bitwise") {
  auto f = [](double x, double* out) {
    out[0] = std::exp(-x) * std::sin(7 * x);
    out[1] = x * x;
  };
  const auto a = fixed_rule(f, 2, 0, 2, 512, {0.5}, false);
  const auto b = fixed_rule(f, 2, 0, 2, 512, {0.5}, true);
  CHECK(a == b);
}

TEST_CASE("pairwise sum") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
}
