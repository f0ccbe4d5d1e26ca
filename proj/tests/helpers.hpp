#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "altxy/matrix.hpp"

namespace testing {

using altxy::ComplexMatrix;
using altxy::cplx;

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = cplx(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

// G G^dagger / Tr, a full-rank density matrix
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n * n; ++i) a.data()[i] = cplx(g(rng), g(rng));
  ComplexMatrix r = a * a.adjoint();
  r *= 1.0 / r.trace().real();
  return r;
}

inline ComplexMatrix pure(const std::vector<cplx>& v) {
  ComplexMatrix r(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = v[i] * std::conj(v[j]);
  return r;
}

// Real X-state from its populations and coherences, renormalized; positivity enforced by
// shrinking the coherences.
inline ComplexMatrix random_x_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double p[4];
  double s = 0;
  for (double& x : p) s += (x = u(rng) + 1e-3);
  for (double& x : p) x /= s;
  ComplexMatrix r(4, 4);
  for (int i = 0; i < 4; ++i) r(i, i) = p[i];
  const double a = (2 * u(rng) - 1) * std::sqrt(p[0] * p[3]), b = (2 * u(rng) - 1) * std::sqrt(p[1] * p[2]);
  r(0, 3) = r(3, 0) = a;
  r(1, 2) = r(2, 1) = b;
  return r;
}

}  // namespace testing
