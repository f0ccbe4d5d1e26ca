#include "altxy/two_site_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace altxy {

namespace {

constexpr double kTraceTolerance = 1e-12;

ComplexMatrix sigma(int k) {
  switch (k) {
    case 0: return ComplexMatrix::identity(2);
    case 1: return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
    case 2: return ComplexMatrix(2, 2, {0.0, cplx(0, -1), cplx(0, 1), 0.0});
    default: return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
  }
}

const ComplexMatrix& product(int a, int b) {
  static const auto table = [] {
    std::array<ComplexMatrix, 16> t;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[4 * i + j] = kron(sigma(i), sigma(j));
    return t;
  }();
  return table[4 * a + b];
}

}  // namespace

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = sigma(1);
  return m;
}
const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = sigma(2);
  return m;
}
const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = sigma(3);
  return m;
}

TwoSiteState TwoSiteState::validated(ComplexMatrix rho, StateSource source) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("TwoSiteState: rho must be 4x4");
  if (!rho.is_hermitian(kTraceTolerance)) throw NumericalError("TwoSiteState: rho is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kTraceTolerance) throw NumericalError("TwoSiteState: trace differs from 1: " + std::to_string(rho.trace().real() - 1.0));
  rho.hermitize();
  auto e = hermitian_eig(rho);
  if (e.values.front() < -kNegativeTolerance)
    throw NumericalError("TwoSiteState: eigenvalue " + std::to_string(e.values.front()) + " below tolerance");
  if (e.values.front() < 0.0) {
    double total = 0.0;
    for (auto& v : e.values) total += (v = std::max(v, 0.0));
    rho = hermitian_matrix_function(e, [total](double x) { return x / total; });
  }
  return {std::move(rho), source};
}

TwoSiteState assemble_rho(const ObservableSet& obs, StateSource source) {
  obs.validate();
  ComplexMatrix r = product(0, 0);
  r += obs.m_e * product(3, 0);
  r += obs.m_o * product(0, 3);
  r += obs.c_xx * product(1, 1);
  r += obs.c_yy * product(2, 2);
  r += obs.c_zz * product(3, 3);
  r += obs.c_xy * product(1, 2);
  r += obs.c_yx * product(2, 1);
  r *= 0.25;
  return TwoSiteState::validated(std::move(r), source);
}

ObservableSet read_back(const TwoSiteState& s) {
  auto ex = [&](int a, int b) { return trace_product(s.rho, product(a, b)).real(); };
  ObservableSet o;
  o.m_e = ex(3, 0);
  o.m_o = ex(0, 3);
  o.c_xx = ex(1, 1);
  o.c_yy = ex(2, 2);
  o.c_zz = ex(3, 3);
  o.c_xy = ex(1, 2);
  o.c_yx = ex(2, 1);
  o.equilibrium = false;
  return o;
}

TwoSiteState fermionic_image(const TwoSiteState& s) {
  const ComplexMatrix& xx = product(1, 1);
  ComplexMatrix r = xx * s.rho * xx;
  return {std::move(r), s.source};
}

bool is_x_state(const ComplexMatrix& rho, double tol) {
  static constexpr std::array<std::pair<int, int>, 8> kOff{
      {{0, 1}, {0, 2}, {3, 1}, {3, 2}, {1, 0}, {2, 0}, {1, 3}, {2, 3}}};
  return std::all_of(kOff.begin(), kOff.end(), [&](auto p) { return std::abs(rho(p.first, p.second)) <= tol; });
}

}  // namespace altxy
