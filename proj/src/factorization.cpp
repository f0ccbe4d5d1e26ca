#include "altxy/factorization.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace altxy {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Interior stationary angles; printed (swapped, 1/h_+ in both) and corrected variants.
std::vector<double> candidate_angles(const SystemParams& p, bool even) {
  const double J = p.J, g = std::abs(p.gamma);
  const double hp = p.h1() + p.h2(), hm = p.h1() - p.h2();
  const double a = J * (1 + g);
  const double num = std::pow(a, 4) - hp * hp * hm * hm;
  std::vector<double> tan2;
  if (num >= 0) {
    const double own = even ? hp : hm, other = even ? hm : hp;
    tan2.push_back(num / (own * own * (a * a + other * other)));
    tan2.push_back(num / (hp * hp * (a * a + (even ? hp * hp : hm * hm))));
  }
  std::vector<double> out{0.0, std::numbers::pi};
  for (double t2 : tan2) {
    const double t = std::isfinite(t2) ? std::atan(std::sqrt(t2)) : std::numbers::pi / 2;
    for (double c : {t, std::numbers::pi - t, std::numbers::pi + t, kTwoPi - t}) out.push_back(c);
  }
  return out;
}

struct Best {
  double value, te, to;
};

Best closed_route(const SystemParams& p) {
  Best b{std::numeric_limits<double>::infinity(), 0, 0};
  for (double te : candidate_angles(p, true))
    for (double to : candidate_angles(p, false)) {
      const double e = separable_energy_at(p, te, to);
      if (e < b.value) b = {e, te, to};
    }
  return b;
}

// Profile over theta_o: for fixed theta_e the minimum over theta_o is -sqrt(a^2 sin^2 te + h_-^2),
// leaving a smooth 1D problem on [0, pi] solved by grid + Brent.
struct Profile {
  double a, hp, hm;
  double value(double te) const { return 0.25 * (hp * std::cos(te) - std::hypot(a * std::sin(te), hm)); }
  double best_to(double te) const { return std::atan2(a * std::abs(std::sin(te)), -hm); }
};

Best numeric_route(const SystemParams& p) {
  const Profile prof{p.J * (1 + std::abs(p.gamma)), p.h1() + p.h2(), p.h1() - p.h2()};
  constexpr int n = 4096;
  const double h = std::numbers::pi / n;
  int k = 0;
  double fk = prof.value(0);
  for (int i = 1; i <= n; ++i)
    if (const double f = prof.value(i * h); f < fk) { k = i; fk = f; }
  double te = k * h;
  if (k > 0 && k < n) {
    gsl_function fn;
    fn.params = const_cast<Profile*>(&prof);
    fn.function = [](double x, void* q) { return static_cast<const Profile*>(q)->value(x); };
    gsl_min_fminimizer* m = gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent);
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    if (gsl_min_fminimizer_set(m, &fn, te, te - h, te + h) == GSL_SUCCESS) {
      for (int it = 0; it < 200; ++it) {
        if (gsl_min_fminimizer_iterate(m) != GSL_SUCCESS) break;
        if (gsl_min_test_interval(gsl_min_fminimizer_x_lower(m), gsl_min_fminimizer_x_upper(m), 1e-14, 0) ==
            GSL_SUCCESS)
          break;
      }
      if (gsl_min_fminimizer_f_minimum(m) < fk) te = gsl_min_fminimizer_x_minimum(m);
    }
    gsl_set_error_handler(old);
    gsl_min_fminimizer_free(m);
  }
  const double to = prof.best_to(te);
  return {separable_energy_at(p, te, to), te, to};
}

}  // namespace

ComplexMatrix pair_hamiltonian(const SystemParams& p) {
  const double J = p.J, g = p.gamma;
  const ComplexMatrix& X = pauli_x();
  const ComplexMatrix& Y = pauli_y();
  const ComplexMatrix& Z = pauli_z();
  const ComplexMatrix I = ComplexMatrix::identity(2);
  ComplexMatrix h = (J * (1 + g) / 4) * kron(X, X);
  h += (J * (1 - g) / 4) * kron(Y, Y);
  h += ((p.h1() + p.h2()) / 4) * kron(Z, I);
  h += ((p.h1() - p.h2()) / 4) * kron(I, Z);
  return h;
}

double pair_ground_energy(const SystemParams& p) { return hermitian_eig(pair_hamiltonian(p)).values.front(); }

double pair_ground_energy_closed_form(const SystemParams& p) {
  return -0.5 * std::max(std::hypot(p.J, p.h2()), std::hypot(p.h1(), p.gamma * p.J));
}

double separable_energy_at(const SystemParams& p, double te, double to) {
  return 0.25 * (-p.J * (1 + std::abs(p.gamma)) * std::abs(std::sin(te) * std::sin(to)) +
                 (p.h1() + p.h2()) * std::cos(te) + (p.h1() - p.h2()) * std::cos(to));
}

SeparableAnsatz separable_energy(const SystemParams& p) {
  p.validate();
  const Best c = closed_route(p), n = numeric_route(p);
  SeparableAnsatz s;
  s.epsilon_closed = c.value;
  s.epsilon_numeric = n.value;
  const Best& b = c.value <= n.value ? c : n;
  s.epsilon = b.value;
  s.theta_e = b.te;
  s.theta_o = b.to;
  s.epsilon0 = pair_ground_energy(p);
  if (std::abs(c.value - n.value) > 1e-6)
    throw NumericalError("separable_energy: routes disagree, closed " + std::to_string(c.value) + ", numeric " +
                         std::to_string(n.value));
  return s;
}

double factorization_residual(const SystemParams& p) {
  return p.lambda1 * p.lambda1 - p.lambda2 * p.lambda2 - (1 - p.gamma * p.gamma);
}

bool on_factorization_line(const SystemParams& p, double tol) { return std::abs(factorization_residual(p)) < tol; }

std::vector<SystemParams> factorization_locus(double gamma, const std::vector<double>& lambda2, double J) {
  std::vector<SystemParams> out;
  for (double l2 : lambda2) {
    const double r = l2 * l2 + 1 - gamma * gamma;
    if (r < 0) throw std::invalid_argument("factorization_locus: no real point at this lambda2");
    out.push_back({J, gamma, std::sqrt(r), l2});
  }
  return out;
}

NeelProductState neel_product_state(const SystemParams& p) {
  if (!on_factorization_line(p)) throw std::invalid_argument("neel_product_state: parameters off the factorization line");
  const Best b = closed_route(p);
  // sign of sin(theta) on each site is absorbed in the azimuth; here it is chosen so that the
  // coupling term (x x for gamma >= 0, y y otherwise) is negative
  auto spin = [](double theta, bool flip, bool imag) {
    ComplexMatrix v(2, 1);
    v(0, 0) = std::cos(theta / 2);
    const double s = std::abs(std::sin(theta / 2)) * (flip ? -1.0 : 1.0);
    v(1, 0) = imag ? cplx(0, s) : cplx(s, 0);
    return v;
  };
  const bool yy = p.gamma < 0;
  auto te = [](double t) { return std::acos(std::cos(t)); };  // fold into [0, pi]
  const ComplexMatrix ve = spin(te(b.te), false, yy), vo = spin(te(b.to), true, yy);
  const ComplexMatrix psi = kron(ve, vo);
  ComplexMatrix rho = psi * psi.adjoint();
  NeelProductState out;
  out.theta_e = te(b.te);
  out.theta_o = te(b.to);
  out.energy_per_site = trace_product(rho, pair_hamiltonian(p)).real();
  out.pair = TwoSiteState::validated(std::move(rho), StateSource::CES);
  return out;
}

}  // namespace altxy
