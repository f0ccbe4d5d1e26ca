#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "altxy/ed.hpp"
#include "altxy/factorization.hpp"
#include "altxy/finite_chain.hpp"
#include "helpers.hpp"

using namespace altxy;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("spin Hamiltonian is symmetric and parity conserving") {
  const SpinHamiltonian h({1.0, 0.8, 0.4, -0.7}, 10);
  std::mt19937_64 rng(51);
  for (int k = 0; k < 10; ++k) {
    const auto u = random_vector(rng, h.dim()), v = random_vector(rng, h.dim());
    std::vector<double> hu(h.dim()), hv(h.dim());
    h.apply(u.data(), hu.data());
    h.apply(v.data(), hv.data());
    CHECK(std::abs(dot(u, hv) - dot(v, hu)) < 1e-10);
    // parity: P H v == H P v
    std::vector<double> pv(v), hpv(h.dim());
    for (std::size_t s = 0; s < h.dim(); ++s)
      if (std::popcount(s) % 2) pv[s] = -pv[s];
    h.apply(pv.data(), hpv.data());
    double r = 0;
    for (std::size_t s = 0; s < h.dim(); ++s) r = std::max(r, std::abs(hpv[s] - (std::popcount(s) % 2 ? -hv[s] : hv[s])));
    CHECK(r < 1e-10);
  }
}

TEST_CASE("serial and parallel application agree") {
  const SpinHamiltonian h({1.0, 0.8, 0.4, -0.7}, 14);
  std::mt19937_64 rng(52);
  const auto v = random_vector(rng, h.dim());
  std::vector<double> a(h.dim()), b(h.dim());
  h.apply(v.data(), a.data(), false);
  h.apply(v.data(), b.data(), true);
  CHECK(a == b);
}

TEST_CASE("two-site periodic chain is twice the bond Hamiltonian") {
  const SystemParams p{1.0, 0.8, 0.3, 0.9};
  const auto s = dense_spectrum(SpinHamiltonian(p, 2));
  CHECK(s.min_energy() == doctest::Approx(2 * pair_ground_energy(p)).epsilon(1e-12));
}

TEST_CASE("isotropic-gamma chain energy") {
  const SystemParams p{1.0, 1.0, 0.0, 0.0};
  CHECK(dense_spectrum(SpinHamiltonian(p, 8)).min_energy() / 8 == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("Lanczos against dense diagonalization") {
  const SpinHamiltonian h({1.0, 0.8, 1.5, 0.5}, 8);
  const auto l = lanczos_ground_state(h);
  CHECK(l.energy == doctest::Approx(dense_spectrum(h).min_energy()).epsilon(1e-10));
  CHECK(l.residual < 1e-10 * h.scale());
  CHECK_FALSE(l.degenerate);
}

TEST_CASE("Lanczos flags a degenerate ground level") {
  // couplings negligible, fields zero
  const SpinHamiltonian h({1e-300, 1.0, 0.0, 0.0}, 4);
  const auto l = lanczos_ground_state(h);
  CHECK(std::abs(l.energy) < 1e-12);
  CHECK(l.degenerate);
}

TEST_CASE("Lanczos energy against momentum space at N = 16") {
  const SystemParams p{1.0, 0.8, 1.5, 0.5};
  const double lz = lanczos_ground_state(SpinHamiltonian(p, 16)).energy / 16;
  CHECK(lz == doctest::Approx(exact_chain_ground_energy(p, 16) / 16).epsilon(1e-8));
  CHECK(std::abs(lz - ground_energy_per_site_value(p)) < 2e-3);
}

TEST_CASE("dense thermal states") {
  const SystemParams p{1.0, 0.8, 0.5, 0.3};
  const auto s = dense_spectrum(SpinHamiltonian(p, 6));
  const auto inf = dense_thermal_state(s, Temperature::inverse(0.0));
  CHECK(max_abs_diff(inf, (1.0 / 64) * ComplexMatrix::identity(64)) < 1e-15);
  // gapped paramagnet for the low-temperature limit
  const auto pm = dense_spectrum(SpinHamiltonian({1.0, 0.8, 2.5, 0.3}, 6));
  const auto cold = dense_thermal_state(pm, Temperature::inverse(1e4));
  const auto zero = dense_thermal_state(pm, Temperature::zero_temperature());
  CHECK(trace_norm(cold - zero) / 2 < 1e-6);
  CHECK(std::abs(dense_thermal_state(s, Temperature::inverse(2.0)).trace() - 1.0) < 1e-12);
  CHECK(max_abs_diff(thermal_two_site(s, Temperature::inverse(2.0), 0, 1).rho,
                     reduce_two_site(dense_thermal_state(s, Temperature::inverse(2.0)), 6, 0, 1).rho) < 1e-13);
}

TEST_CASE("reduced states") {
  // GHZ(4)
  std::vector<double> ghz(16, 0.0);
  ghz[0] = ghz[15] = 1 / std::sqrt(2.0);
  const auto r = reduce_two_site(ghz, 4, 1, 2);
  CHECK(max_abs_diff(r.rho, ComplexMatrix::diagonal({0.5, 0, 0, 0.5})) < 1e-15);
  // product |0101>
  std::vector<double> prod(16, 0.0);
  prod[0b0101] = 1;
  CHECK(max_abs_diff(reduce_two_site(prod, 4, 0, 1).rho, ComplexMatrix::diagonal({0, 1, 0, 0})) < 1e-15);
  // translation by two
  const auto s = dense_spectrum(SpinHamiltonian({1.0, 0.8, 0.5, 0.3}, 8));
  const auto T = Temperature::inverse(2.0);
  CHECK(max_abs_diff(thermal_two_site(s, T, 0, 1).rho, thermal_two_site(s, T, 2, 3).rho) < 1e-10);
  const auto bonds = bond_states(s, T, Boundary::Periodic);
  CHECK(bonds.size() == 8);
}

TEST_CASE("momentum-resolved spectrum agrees with the parity blocks") {
  const SystemParams p{1.0, 0.8, 1.2, -1.4};
  for (int N : {4, 6, 8, 10}) {
    const SpinHamiltonian h(p, N);
    const auto dense = dense_spectrum(h);
    const auto sym = symmetric_spectrum(h);
    std::vector<double> a, b;
    for (const auto& blk : dense.blocks) a.insert(a.end(), blk.values.begin(), blk.values.end());
    for (const auto& blk : sym.blocks) b.insert(b.end(), blk.values.begin(), blk.values.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    REQUIRE(a.size() == b.size());
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    CHECK(d < 1e-11);
    for (auto T : {Temperature::inverse(0.5), Temperature::inverse(10.0), Temperature::zero_temperature()})
      CHECK(max_abs_diff(thermal_two_site(sym, T).rho, thermal_two_site(dense, T, 0, 1).rho) < 1e-12);
  }
  CHECK_THROWS(symmetric_spectrum(SpinHamiltonian(p, 8, Boundary::Open)));
}

TEST_CASE("ED input validation") {
  CHECK_THROWS(SpinHamiltonian({1.0, 0.8, 0, 0}, 3));
  CHECK_THROWS(SpinHamiltonian({1.0, 0.8, 0, 0}, 24));
  CHECK_THROWS(dense_spectrum(SpinHamiltonian({1.0, 0.8, 0, 0}, 14)));
}
