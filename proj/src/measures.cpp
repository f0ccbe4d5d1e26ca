#include "altxy/measures.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace altxy {

namespace {

constexpr double kNegativityFloor = 1e-14;

double binary_entropy_of_bloch(double r) {
  r = std::min(std::abs(r), 1.0);
  return entropy_from_eigenvalues({0.5 * (1 + r), 0.5 * (1 - r)});
}

// rho = 1/4 sum_ij T_ij sigma_i (x) sigma_j, measured party first.
struct BlochForm {
  std::array<double, 3> a{}, b{};
  std::array<std::array<double, 3>, 3> t{};

  BlochForm(const TwoSiteState& s, Party measured) {
    const std::array<const ComplexMatrix*, 4> p{nullptr, &pauli_x(), &pauli_y(), &pauli_z()};
    const ComplexMatrix id = ComplexMatrix::identity(2);
    auto ex = [&](int i, int j) {
      const ComplexMatrix& l = i ? *p[i] : id;
      const ComplexMatrix& r = j ? *p[j] : id;
      return measured == Party::Even ? trace_product(s.rho, kron(l, r)).real()
                                     : trace_product(s.rho, kron(r, l)).real();
    };
    for (int i = 0; i < 3; ++i) {
      a[i] = ex(i + 1, 0);
      b[i] = ex(0, i + 1);
      for (int j = 0; j < 3; ++j) t[i][j] = ex(i + 1, j + 1);
    }
  }

  double conditional_entropy(double theta, double phi) const {
    const std::array<double, 3> n{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    double na = 0.0;
    std::array<double, 3> tn{};
    for (int i = 0; i < 3; ++i) {
      na += n[i] * a[i];
      for (int j = 0; j < 3; ++j) tn[j] += n[i] * t[i][j];
    }
    double h = 0.0;
    for (double sg : {1.0, -1.0}) {
      const double p2 = 1 + sg * na;  // twice the outcome probability
      if (p2 <= 2 * kEigenvalueFloor) continue;
      double r2 = 0.0;
      for (int j = 0; j < 3; ++j) r2 += std::pow((b[j] + sg * tn[j]) / p2, 2);
      h += 0.5 * p2 * binary_entropy_of_bloch(std::sqrt(r2));
    }
    return h;
  }
};

// n and -n define the same measurement; pick the representative with phi in [0, pi).
ProjectiveMeasurement canonical(double theta, double phi) {
  double x = std::sin(theta) * std::cos(phi), y = std::sin(theta) * std::sin(phi), z = std::cos(theta);
  if (y < 0 || (y == 0 && x < 0)) x = -x, y = -y, z = -z;
  double ph = std::atan2(y, x);
  if (ph >= std::numbers::pi) ph = 0.0;
  return {std::acos(std::clamp(z, -1.0, 1.0)), ph};
}

struct SimplexResult {
  double value, theta, phi;
  bool converged;
};

SimplexResult refine(const BlochForm& form, double theta0, double phi0, double step, double tol) {
  gsl_multimin_function fn;
  fn.n = 2;
  fn.params = const_cast<BlochForm*>(&form);
  fn.f = [](const gsl_vector* x, void* p) {
    return static_cast<const BlochForm*>(p)->conditional_entropy(gsl_vector_get(x, 0), gsl_vector_get(x, 1));
  };
  gsl_vector* x = gsl_vector_alloc(2);
  gsl_vector* ss = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, theta0);
  gsl_vector_set(x, 1, phi0);
  gsl_vector_set_all(ss, step);
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(m, &fn, x, ss);
  bool converged = false;
  double prev = m->fval;
  int stalled = 0;
  for (int it = 0; it < 4000; ++it) {
    if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(m);
    stalled = std::abs(prev - m->fval) <= tol ? stalled + 1 : 0;
    prev = m->fval;
    if (size < 1e-9 || (stalled >= 20 && size < 1e-5)) {
      converged = true;
      break;
    }
  }
  SimplexResult r{m->fval, gsl_vector_get(m->x, 0), gsl_vector_get(m->x, 1), converged};
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(x);
  gsl_vector_free(ss);
  return r;
}

}  // namespace

double negativity(const TwoSiteState& s) {
  const double n = 0.5 * (trace_norm(partial_transpose(s.rho, Party::Even)) - 1.0);
  return n < kNegativityFloor ? 0.0 : n;
}

double log_negativity_from_negativity(double n) { return std::log2(2 * n + 1); }

double log_negativity(const TwoSiteState& s) { return log_negativity_from_negativity(negativity(s)); }

double mutual_information(const TwoSiteState& s) {
  return von_neumann_entropy(partial_trace(s.rho, 2, {0})) + von_neumann_entropy(partial_trace(s.rho, 2, {1})) -
         von_neumann_entropy(s.rho);
}

double conditional_entropy(const TwoSiteState& s, ProjectiveMeasurement m, Party measured) {
  return BlochForm(s, measured).conditional_entropy(m.theta, m.phi);
}

MeasureResult quantum_discord(const TwoSiteState& s, const DiscordOptions& opt) {
  const BlochForm form(s, opt.measured);
  const int g = opt.grid;
  const double pi = std::numbers::pi;
  auto theta_at = [&](int i) { return pi * i / (g - 1); };
  auto phi_at = [&](int j) { return pi * j / g; };
  std::vector<double> grid(static_cast<std::size_t>(g) * g);
#pragma omp parallel for schedule(static) if (opt.parallel)
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) grid[i * g + j] = form.conditional_entropy(theta_at(i), phi_at(j));

  auto at = [&](int i, int j) { return grid[i * g + ((j % g) + g) % g]; };
  int bi = 0, bj = 0;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (at(i, j) < at(bi, bj)) bi = i, bj = j;

  const double step = pi / g;
  SimplexResult best = refine(form, theta_at(bi), phi_at(bj), step, opt.objective_tolerance);
  if (at(bi, bj) < best.value) best = {at(bi, bj), theta_at(bi), phi_at(bj), best.converged};

  // further starts at coarse local minima close to the best value
  std::vector<std::pair<int, int>> starts;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (i == bi && j == bj) continue;
      const double v = at(i, j);
      if (v > best.value + opt.multistart_window) continue;
      bool local = true;
      for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
        const int ni = i + di;
        if (ni < 0 || ni >= g) continue;
        if (at(ni, j + dj) < v) local = false;
      }
      if (local) starts.emplace_back(i, j);
    }
  std::stable_sort(starts.begin(), starts.end(), [&](auto x, auto y) { return at(x.first, x.second) < at(y.first, y.second); });
  if (static_cast<int>(starts.size()) > opt.max_starts) starts.resize(opt.max_starts);
  for (auto [i, j] : starts) {
    auto r = refine(form, theta_at(i), phi_at(j), step, opt.objective_tolerance);
    if (r.value < best.value - opt.objective_tolerance) best = r;
  }

  MeasureResult out;
  const double s_b = von_neumann_entropy(partial_trace(s.rho, 2, {opt.measured == Party::Even ? 1 : 0}));
  out.mutual_info = mutual_information(s);
  out.conditional_entropy = best.value;
  out.classical_corr = s_b - best.value;
  out.discord = out.mutual_info - out.classical_corr;
  if (out.discord < -kNegativeTolerance)
    throw NumericalError("quantum_discord: negative discord " + std::to_string(out.discord));
  if (out.discord < 0.0) {
    out.discord = 0.0;
    out.classical_corr = out.mutual_info;
  }
  out.best = canonical(best.theta, best.phi);
  out.converged = best.converged;
  return out;
}

MeasureResult measures(const TwoSiteState& s, const DiscordOptions& opt) {
  MeasureResult r = quantum_discord(s, opt);
  r.negativity = negativity(s);
  r.ln = log_negativity_from_negativity(r.negativity);
  return r;
}

double brute_force_conditional_entropy(const TwoSiteState& s, int n, Party measured) {
  const BlochForm form(s, measured);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      best = std::min(best, form.conditional_entropy(std::numbers::pi * i / (n - 1), std::numbers::pi * j / n));
  return best;
}

}  // namespace altxy
