#include "altxy/momentum_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace altxy {

void SystemParams::validate() const {
  if (!(J > 0.0) || !std::isfinite(J)) throw std::invalid_argument("SystemParams: J must be positive");
  if (gamma == 0.0 || !std::isfinite(gamma)) throw std::invalid_argument("SystemParams: gamma must be nonzero");
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2)) throw std::invalid_argument("SystemParams: fields must be finite");
}

BlockHamiltonian build_blocks(const SystemParams& params, FieldValues f, double phi) {
  params.validate();
  const double J = params.J, c = J * std::cos(phi);
  const cplx s(0.0, J * params.gamma * std::sin(phi));  // i J gamma sin(phi)
  const double h1 = f.h1, h2 = f.h2;

  BlockHamiltonian b;
  b.phi = phi;
  b.fields = f;
  b.h = BlockMatrix::zeros(kPairBlockSizes);

  ComplexMatrix h2m(4, 4, {
      -h1 - h2, c,        -s,      0.0,
      c,        -h1 + h2, 0.0,     -s,
      s,        0.0,      h1 - h2, -c,
      0.0,      s,        -c,      h1 + h2,
  });
  b.h.blocks[1] = h2m;
  b.h.blocks[2] = h2m;
  // basis (vacuum, a_p b_-p, a_-p b_p, a_p a_-p, b_p b_-p, all four)
  b.h.blocks[3] = ComplexMatrix(6, 6, {
      -2 * h1, s,   -s,  0.0,     0.0,    0.0,
      -s,      0.0, 0.0, c,       c,      -s,
      s,       0.0, 0.0, -c,      -c,     s,
      0.0,     c,   -c,  -2 * h2, 0.0,    0.0,
      0.0,     c,   -c,  0.0,     2 * h2, 0.0,
      0.0,     s,   -s,  0.0,     0.0,    2 * h1,
  });
  return b;
}

ClosedFormEnergies closed_form_energies(const SystemParams& params, double phi) {
  params.validate();
  const double l1 = params.lambda1, l2 = params.lambda2, g = params.gamma;
  const double c2 = std::cos(phi) * std::cos(phi), s2 = std::sin(phi) * std::sin(phi);
  ClosedFormEnergies e;
  e.x = l1 * l1 + l2 * l2 + c2 + g * g * s2;
  e.y = l1 * l1 * (l2 * l2 + c2) + g * g * l2 * l2 * s2;
  // cancellation-free forms: x^2 - 4y = (A - B - C + D)^2 + 4CD, and the minus roots via products
  const double A = l1 * l1, B = l2 * l2, C = c2, D = g * g * s2;
  const double disc = std::hypot(A - B - C + D, 2 * std::sqrt(C * D));
  const double sy = std::sqrt(std::max(e.y, 0.0));
  e.omega2_plus = std::sqrt(e.x + 2 * sy);
  e.omega2_minus = e.omega2_plus > 0 ? disc / e.omega2_plus : 0.0;
  e.omega4_plus = std::sqrt(2 * (e.x + disc));
  e.omega4_minus = e.x + disc > 0 ? std::sqrt(8 * std::max(e.y, 0.0) / (e.x + disc)) : 0.0;
  return e;
}

std::array<double, 16> spectrum(const SystemParams& params, FieldValues fields, double phi) {
  auto b = build_blocks(params, fields, phi);
  auto v = block_eig(b.h).values();
  std::array<double, 16> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

GroundEnergyResult ground_energy_per_site(const SystemParams& params) {
  params.validate();
  QuadratureOptions opt;
  opt.breakpoints = kink_breakpoints(params);
  QuadratureResult q;
  // lowest pair level is -omega4+ (numeric diagonalization of the printed blocks)
  auto f = [&](double phi) { return spectrum(params, phi)[0]; };
  double v = integrate_scalar(f, 0.0, std::numbers::pi / 2, opt, &q) / (2 * std::numbers::pi);
  GroundEnergyResult r{v, q.error / (2 * std::numbers::pi), q.nodes, q.converged};
  if (!q.converged) {
    std::ostringstream os;
    os.precision(12);
    os << "ground_energy_per_site: quadrature did not converge; estimate " << r.value << " error bound " << r.error;
    throw NumericalError(os.str());
  }
  return r;
}

double ground_energy_per_site_value(const SystemParams& params) { return ground_energy_per_site(params).value; }

double pair_gap(const SystemParams& params, double phi) {
  auto s = spectrum(params, phi);
  return s[1] - s[0];
}

GapProfile gap_profile(const SystemParams& params, int grid) {
  const double a = 0.0, b = std::numbers::pi / 2;
  int best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double phi = a + (b - a) * i / (grid - 1);
    const double g = pair_gap(params, phi);
    if (g < best_gap) {
      best_gap = g;
      best = i;
    }
  }
  const double step = (b - a) / (grid - 1);
  double lo = std::max(a, a + (best - 1) * step), hi = std::min(b, a + (best + 1) * step);
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = pair_gap(params, x1), f2 = pair_gap(params, x2);
  while (hi - lo > 1e-7) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = pair_gap(params, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = pair_gap(params, x2);
    }
  }
  GapProfile g{best_gap, a + best * step};
  const double mid = 0.5 * (lo + hi), fm = pair_gap(params, mid);
  if (fm < g.min_gap) g = {fm, mid};
  // the endpoints are where the gap closes on the critical lines
  for (double e : {a, b}) {
    const double fe = pair_gap(params, e);
    if (fe <= g.min_gap) g = {fe, e};
  }
  return g;
}

std::vector<double> kink_breakpoints(const SystemParams& params) {
  auto g = gap_profile(params, 256);
  if (g.min_gap < 1e-6 && g.phi_star > 1e-9 && g.phi_star < std::numbers::pi / 2 - 1e-9) return {g.phi_star};
  return {};
}

SystemParams duality_image(const SystemParams& p) {
  SystemParams d;
  d.J = std::abs(p.gamma) * p.J;
  d.gamma = p.gamma > 0 ? 1.0 / p.gamma : -1.0 / p.gamma;
  d.lambda1 = p.h2() / d.J;
  d.lambda2 = p.h1() / d.J;
  return d;
}

}  // namespace altxy
