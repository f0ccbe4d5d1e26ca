#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "altxy/measures.hpp"
#include "helpers.hpp"

using namespace altxy;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

TwoSiteState bell() { return TwoSiteState::validated(testing::pure({kS, 0, 0, kS}), StateSource::CES); }

TwoSiteState product() {
  const ComplexMatrix a = testing::pure({std::cos(0.3), std::sin(0.3)});
  const ComplexMatrix b = testing::pure({std::cos(1.1), cplx(0, std::sin(1.1))});
  return TwoSiteState::validated(kron(a, b), StateSource::CES);
}

TwoSiteState werner(double p) {
  ComplexMatrix r = p * bell().rho;
  r += (1 - p) / 4 * ComplexMatrix::identity(4);
  return TwoSiteState::validated(r, StateSource::CES);
}

// Conditional entropy of a real X state measured on the even qubit along an axis in the x-z
// plane (y_plane = false) or the y-z plane, written out from the post-measurement states.
double x_state_conditional(const ComplexMatrix& r, double theta, bool y_plane) {
  const double c = std::cos(theta);
  const cplx s = y_plane ? cplx(0, -std::sin(theta)) : cplx(std::sin(theta), 0);
  double total = 0;
  for (int k = 0; k < 2; ++k) {
    const double sign = k == 0 ? 1 : -1;
    // projector (I + sign n.sigma)/2 on A, n = (s, 0, c)
    ComplexMatrix pa(2, 2);
    pa(0, 0) = (1 + sign * c) / 2;
    pa(1, 1) = (1 - sign * c) / 2;
    pa(0, 1) = sign * s / 2.0;
    pa(1, 0) = std::conj(pa(0, 1));
    const ComplexMatrix P = kron(pa, ComplexMatrix::identity(2));
    const ComplexMatrix post = P * r * P;
    const ComplexMatrix rb = partial_trace(post, 2, {1});
    const double pk = rb.trace().real();
    if (pk < 1e-15) continue;
    const auto ev = hermitian_eig((1.0 / pk) * rb).values;
    double h = 0;
    for (double x : ev)
      if (x > 1e-15) h -= x * std::log2(x);
    total += pk * h;
  }
  return total;
}

}  // namespace

TEST_CASE("negativity and log negativity") {
  CHECK(negativity(bell()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(negativity(product()) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(negativity(werner(2.0 / 3)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(log_negativity(bell()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_negativity(product()) == doctest::Approx(0.0));
  CHECK(log_negativity(werner(2.0 / 3)) == doctest::Approx(std::log2(1.5)).epsilon(1e-12));
  CHECK(log_negativity_from_negativity(0.25) == doctest::Approx(std::log2(1.5)));
}

TEST_CASE("mutual information") {
  CHECK(std::abs(mutual_information(product())) < 1e-12);
  CHECK(mutual_information(bell()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(mutual_information(werner(0.0))) < 1e-12);
}

TEST_CASE("discord of reference states") {
  CHECK(std::abs(quantum_discord(product()).discord) < 1e-8);
  CHECK(quantum_discord(bell()).discord == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(quantum_discord(werner(0.0)).discord) < 1e-10);
}

TEST_CASE("discord on X states against an independent angle scan") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix r = testing::random_x_state(rng);
    const auto s = TwoSiteState::validated(r, StateSource::CES);
    double best = 1e9;
    for (int i = 0; i <= 20000; ++i)
      for (bool y : {false, true}) best = std::min(best, x_state_conditional(r, std::numbers::pi * i / 20000, y));
    const auto res = quantum_discord(s);
    CHECK(res.conditional_entropy == doctest::Approx(best).epsilon(1e-7));
    CHECK(res.conditional_entropy <= best + 1e-10);
  }
}

TEST_CASE("discord against the library brute-force grid") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 3; ++k) {
    const auto s = TwoSiteState::validated(testing::random_density(rng, 4), StateSource::CES);
    const double brute = brute_force_conditional_entropy(s, 200);
    const auto res = quantum_discord(s);
    CHECK(res.conditional_entropy <= brute + 1e-10);
    CHECK(res.conditional_entropy > brute - 1e-3);
  }
}

TEST_CASE("discord bounds and party choice") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 10; ++k) {
    const auto s = TwoSiteState::validated(testing::random_density(rng, 4), StateSource::CES);
    const auto res = measures(s);
    CHECK(res.discord >= -1e-12);
    CHECK(res.discord <= res.mutual_info + 1e-10);
    CHECK(res.classical_corr == doctest::Approx(res.mutual_info - res.discord).epsilon(1e-10));
    DiscordOptions odd;
    odd.measured = Party::Odd;
    CHECK(quantum_discord(s, odd).discord >= -1e-12);
  }
}

TEST_CASE("negativity responds continuously") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix r = testing::random_density(rng, 4);
    ComplexMatrix q = r + 1e-6 * testing::random_hermitian(rng, 4);
    q *= 1.0 / q.trace().real();
    const double a = negativity(TwoSiteState::validated(r, StateSource::CES));
    const double b = negativity(TwoSiteState::validated(q, StateSource::CES));
    CHECK(std::abs(a - b) < 1e-4);
  }
}
