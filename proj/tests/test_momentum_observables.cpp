#include <doctest.h>

#include <cmath>
#include <random>

#include "altxy/ed.hpp"
#include "altxy/finite_chain.hpp"
#include "altxy/measures.hpp"
#include "altxy/momentum_observables.hpp"
#include "altxy/two_site_state.hpp"

using namespace altxy;

namespace {

ObservableSet ed_observables(const SystemParams& p, int N, Temperature T) {
  const SpinHamiltonian h(p, N);
  if (N <= 8) return read_back(thermal_two_site(dense_spectrum(h), T, 0, 1));
  return read_back(thermal_two_site(symmetric_spectrum(h), T));
}

}  // namespace

TEST_CASE("infinite temperature block state is maximally mixed") {
  const SystemParams p{1.0, 0.8, 0.4, -0.3};
  const auto rho = ces_block_state(p, Temperature::inverse(0.0), 0.7);
  CHECK(max_abs_diff(rho, [] {
          auto id = BlockMatrix::identity(kPairBlockSizes);
          id *= 1.0 / 16;
          return id;
        }()) < 1e-15);
}

TEST_CASE("large beta approaches the zero-temperature tag") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 10; ++k) {
    const SystemParams p{1.0, 0.8, u(rng), u(rng)};
    const double phi = 0.2 + 0.1 * k;
    if (pair_gap(p, phi) < 1e-3) continue;
    const auto a = ces_block_state(p, Temperature::inverse(1e6), phi);
    const auto b = ces_block_state(p, Temperature::zero_temperature(), phi);
    CHECK(trace_norm((a.to_dense() - b.to_dense())) / 2 < 1e-6);
  }
}

TEST_CASE("beta = 0 gives zero observables") {
  const SystemParams p{1.0, 0.8, 0.7, 0.2};
  for (SystemSize s : {SystemSize::infinite(), SystemSize::pair_sum(64), SystemSize::exact(16)}) {
    const auto o = ces_observables(p, Temperature::inverse(0.0), s);
    for (double v : {o.m_e, o.m_o, o.c_xx, o.c_yy, o.c_zz, o.c_xy, o.c_yx}) CHECK(std::abs(v) < 1e-14);
  }
  for (auto kind : {CorrelatorKind::XX, CorrelatorKind::YY, CorrelatorKind::XY, CorrelatorKind::YX}) {
    const double v = thermal_expectation([kind](double phi) { return correlator_operator(kind, phi); }, p,
                                         Temperature::inverse(0.0), SystemSize::infinite());
    CHECK(std::abs(v) < 1e-14);
  }
}

TEST_CASE("exact chain equals spin ED") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int N : {4, 8, 12}) {
    for (int k = 0; k < 3; ++k) {
      const SystemParams p{1.0, 0.8, u(rng), u(rng)};
      for (double beta : {0.5, 2.0, 10.0}) {
        const auto T = Temperature::inverse(beta);
        CHECK(exact_chain_observables(p, T, N).max_abs_diff(ed_observables(p, N, T)) < 1e-8);
      }
    }
  }
}

TEST_CASE("strong uniform field polarizes against the field") {
  const SystemParams p{1.0, 0.8, 50.0, 0.0};
  const auto T = Temperature::inverse(100.0);
  const auto o = ces_observables(p, T, SystemSize::infinite());
  CHECK(o.m_e == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(o.m_o == doctest::Approx(-1.0).epsilon(1e-3));
  const auto ed = ed_observables(p, 8, T);
  CHECK(ed.m_e == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("factorization point has vanishing entanglement in the ground state") {
  const SystemParams p{1.0, 0.8, 0.6, 0.0};
  const auto o = ces_observables(p, Temperature::zero_temperature(), SystemSize::infinite());
  CHECK(log_negativity(assemble_rho(o)) < 1e-8);
}

TEST_CASE("global spin flip relates opposite fields") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 5; ++k) {
    const SystemParams p{1.0, 0.8, u(rng), u(rng)};
    const SystemParams q{1.0, 0.8, -p.lambda1, -p.lambda2};
    const auto T = Temperature::inverse(3.0);
    const auto a = ces_observables(p, T, SystemSize::infinite());
    const auto b = ces_observables(q, T, SystemSize::infinite());
    CHECK(a.m_e == doctest::Approx(-b.m_e).epsilon(1e-9));
    CHECK(a.m_o == doctest::Approx(-b.m_o).epsilon(1e-9));
    CHECK(a.c_xx == doctest::Approx(b.c_xx).epsilon(1e-9));
    CHECK(a.c_yy == doctest::Approx(b.c_yy).epsilon(1e-9));
    CHECK(a.c_zz == doctest::Approx(b.c_zz).epsilon(1e-9));
  }
}

TEST_CASE("pair sum converges to the thermodynamic limit") {
  const SystemParams p{1.0, 0.8, 0.5, 0.3};
  const auto T = Temperature::inverse(2.0);
  const auto inf = ces_observables(p, T, SystemSize::infinite());
  const double d1 = ces_observables(p, T, SystemSize::pair_sum(256)).max_abs_diff(inf);
  const double d2 = ces_observables(p, T, SystemSize::pair_sum(4096)).max_abs_diff(inf);
  // the pair sum is a one-sided rectangle rule, so the error falls like 1/N
  CHECK(d2 < d1 / 10);
  CHECK(d2 < 1e-3);
}

TEST_CASE("temperature scan matches single evaluations") {
  const SystemParams p{1.0, 0.8, -0.4, 0.7};
  const std::vector<Temperature> temps{Temperature::inverse(0.5), Temperature::inverse(5.0),
                                       Temperature::zero_temperature()};
  for (SystemSize s : {SystemSize::infinite(), SystemSize::pair_sum(128)}) {
    const auto scan = ces_observables_scan(p, temps, s);
    for (std::size_t i = 0; i < temps.size(); ++i)
      CHECK(scan[i].max_abs_diff(ces_observables(p, temps[i], s)) < 1e-9);
  }
}

TEST_CASE("equilibrium sets satisfy the zz closure") {
  const SystemParams p{1.0, 0.8, 0.9, -0.6};
  const auto o = ces_observables(p, Temperature::inverse(1.5), SystemSize::infinite());
  CHECK(o.c_zz == doctest::Approx(czz_closure(o)).epsilon(1e-10));
  CHECK(o.c_xy == 0.0);
  CHECK(o.c_yx == 0.0);
}

TEST_CASE("input validation") {
  CHECK_THROWS(SystemSize::exact(6).validate());
  CHECK_THROWS(SystemSize::pair_sum(0).validate());
  CHECK_THROWS(Temperature::inverse(-1.0));
  ObservableSet bad;
  bad.m_e = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
