#include "altxy/scaling.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_fit.h>
#include <gsl/gsl_min.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "altxy/ed.hpp"

namespace altxy {

std::string to_string(Axis a) { return a == Axis::Lambda1 ? "lambda1" : "lambda2"; }

double derivative(const Curve& f, double x, double step, bool richardson) {
  if (!(step > 0)) throw std::invalid_argument("derivative: step must be positive");
  auto central = [&](double h) { return (f(x + h) - f(x - h)) / (2 * h); };
  const double d1 = central(step);
  if (!std::isfinite(d1)) throw NumericalError("derivative: curve evaluation failed");
  if (!richardson) return d1;
  const double d2 = central(step / 2);
  if (!std::isfinite(d2)) throw NumericalError("derivative: curve evaluation failed");
  return (4 * d2 - d1) / 3;
}

namespace {

SystemParams point_on(Axis axis, double fixed, double gamma, double lambda) {
  SystemParams p;
  p.gamma = gamma;
  p.lambda1 = axis == Axis::Lambda1 ? lambda : fixed;
  p.lambda2 = axis == Axis::Lambda1 ? fixed : lambda;
  p.validate();
  return p;
}

}  // namespace

Curve momentum_curve(Measure m, Axis axis, double fixed, double gamma, SystemSize size, Temperature temp) {
  size.validate();
  return [=](double lambda) {
    const SystemParams p = point_on(axis, fixed, gamma, lambda);
    return measure_value(assemble_rho(ces_observables(p, temp, size)), m);
  };
}

Curve ed_curve(Measure m, Axis axis, double fixed, double gamma, int N, Temperature temp) {
  if (N > SpinHamiltonian::kMaxDenseSites && !temp.zero)
    throw std::invalid_argument("ed_curve: finite temperature needs N <= 12");
  return [=](double lambda) {
    const SystemParams p = point_on(axis, fixed, gamma, lambda);
    const SpinHamiltonian h(p, N);
    if (N <= SpinHamiltonian::kMaxDenseSites)
      return measure_value(thermal_two_site(symmetric_spectrum(h), temp), m);
    LanczosOptions lo;
    lo.probe_degeneracy = false;
    const LanczosResult g = lanczos_ground_state(h, lo);
    return measure_value(reduce_two_site(g.vector, N, 0, 1), m);
  };
}

Pseudocritical locate_pseudocritical(const Curve& f, double lo, double hi, const PeakOptions& opt) {
  if (!(hi > lo) || opt.points < 5) throw std::invalid_argument("locate_pseudocritical: bad bracket or grid");
  Pseudocritical out;
  const int n = opt.points;
  out.grid.resize(n);
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.grid[i] = lo + (hi - lo) * i / (n - 1);
  std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int i = 0; i < n; ++i) {
    try {
      out.values[i] = f(out.grid[i]);
    } catch (const std::exception& e) {
      out.values[i] = std::nan("");
      errors[i] = e.what();
    }
  }
  for (int i = 0; i < n; ++i)
    if (!errors[i].empty()) throw NumericalError("locate_pseudocritical: " + errors[i]);

  // slopes from the grid; the strongest interior local maximum of |dQ/dlambda| wins
  auto grid_peak = [](const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    std::vector<double> slope(m, 0.0);
    for (std::size_t i = 1; i + 1 < m; ++i) slope[i] = std::abs((y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]));
    int best = -1;
    for (std::size_t i = 2; i + 2 < m; ++i)
      if (slope[i] >= slope[i - 1] && slope[i] >= slope[i + 1] && (best < 0 || slope[i] > slope[best])) best = int(i);
    return best;
  };
  int best = grid_peak(out.grid, out.values);
  if (best < 0)
    throw NumericalError("locate_pseudocritical: no interior extremum of |dQ/dlambda| in [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");

  // a finite-size peak can be narrower than the coarse spacing: zoom the grid around it until the
  // spacing reaches opt.resolution, so the derivative near the peak comes from the curve's own grid
  std::vector<double> x = out.grid, y = out.values;
  while (x[best + 1] - x[best] > opt.resolution) {
    const double a = x[best - 2], b = x[best + 2];
    const int m = opt.zoom_points;
    std::vector<double> zx(m), zy(m);
    for (int i = 0; i < m; ++i) zx[i] = a + (b - a) * i / (m - 1);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (int i = 0; i < m; ++i) {
      try {
        zy[i] = f(zx[i]);
      } catch (const std::exception&) {
        zy[i] = std::nan("");
      }
    }
    for (int i = 0; i < m; ++i)
      if (std::isnan(zy[i])) throw NumericalError("locate_pseudocritical: evaluation failed while zooming");
    const int zb = grid_peak(zx, zy);
    if (zb < 0) break;
    x = std::move(zx);
    y = std::move(zy);
    best = zb;
  }

  struct Ctx {
    const Curve* f;
    double step;
  } ctx{&f, std::min(opt.step, x[best + 1] - x[best])};
  gsl_function fn;
  fn.params = &ctx;
  fn.function = [](double x, void* c) {
    const auto* k = static_cast<const Ctx*>(c);
    return -std::abs(derivative(*k->f, x, k->step));
  };
  const double a = x[best - 1], b = x[best + 1];
  double fa = fn.function(a, &ctx), fb = fn.function(b, &ctx), fm = fn.function(x[best], &ctx);
  out.lambda_c = x[best];
  out.slope = -fm;
  if (!(fm < fa && fm < fb)) {
    // the Richardson derivative peaks off the grid point; fall back to the best of the three
    if (fa < fm) out.lambda_c = a, out.slope = -fa;
    if (fb < -out.slope) out.lambda_c = b, out.slope = -fb;
    return out;
  }
  gsl_set_error_handler_off();
  gsl_min_fminimizer* s = gsl_min_fminimizer_alloc(gsl_min_fminimizer_goldensection);
  if (gsl_min_fminimizer_set_with_values(s, &fn, x[best], fm, a, fa, b, fb) == GSL_SUCCESS) {
    for (int it = 0; it < 200; ++it) {
      if (gsl_min_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_min_fminimizer_x_upper(s) - gsl_min_fminimizer_x_lower(s) < opt.tolerance) break;
    }
    out.lambda_c = gsl_min_fminimizer_x_minimum(s);
    out.slope = -gsl_min_fminimizer_f_minimum(s);
  }
  gsl_min_fminimizer_free(s);
  return out;
}

double afm_pm_boundary(double lambda2) { return std::sqrt(lambda2 * lambda2 + 1); }
double afm_dm_boundary(double lambda1, double gamma) { return std::sqrt(lambda1 * lambda1 + gamma * gamma); }

namespace {

struct LineFit {
  double slope, intercept, slope_err, intercept_err;
  std::vector<double> residuals;
};

LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  double c0, c1, cov00, cov01, cov11, sumsq;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  LineFit f{c1, c0, std::sqrt(cov11), std::sqrt(cov00), {}};
  for (std::size_t i = 0; i < x.size(); ++i) f.residuals.push_back(y[i] - (c0 + c1 * x[i]));
  return f;
}

// ln-ln regression of positive y against N; nonpositive y dropped.
LineFit log_log(const std::vector<double>& N, const std::vector<double>& y, std::vector<double>& used,
                std::vector<double>& dropped, const char* who) {
  if (N.size() != y.size()) throw std::invalid_argument(std::string(who) + ": size mismatch");
  if (N.size() < 4) throw std::invalid_argument(std::string(who) + ": needs at least 4 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < N.size(); ++i) {
    if (!(N[i] > 0)) throw std::invalid_argument(std::string(who) + ": N must be positive");
    if (y[i] > 0 && std::isfinite(y[i])) {
      used.push_back(N[i]);
      lx.push_back(std::log(N[i]));
      ly.push_back(std::log(y[i]));
    } else {
      dropped.push_back(N[i]);
    }
  }
  if (lx.size() < 3) throw NumericalError(std::string(who) + ": fewer than 3 usable points");
  return ols(lx, ly);
}

}  // namespace

ScalingFit fit_power_law(const std::vector<double>& N, const std::vector<double>& lambda_c, double lambda_c_infinity,
                         Axis axis, double fixed) {
  std::vector<double> dist;
  for (double l : lambda_c) dist.push_back(std::abs(l - lambda_c_infinity));
  ScalingFit out;
  const LineFit f = log_log(N, dist, out.N, out.dropped, "fit_power_law");
  out.nu = -f.slope;
  out.nu_error = f.slope_err;
  out.ln_alpha = f.intercept;
  out.ln_alpha_error = f.intercept_err;
  out.residuals = f.residuals;
  out.axis = axis;
  out.fixed = fixed;
  out.lambda_c_infinity = lambda_c_infinity;
  return out;
}

JumpFit fit_jump_decay(const std::vector<double>& N, const std::vector<double>& jumps) {
  JumpFit out;
  const LineFit f = log_log(N, jumps, out.N, out.dropped, "fit_jump_decay");
  for (std::size_t i = 0; i < N.size(); ++i)
    if (std::find(out.N.begin(), out.N.end(), N[i]) != out.N.end()) out.jumps.push_back(jumps[i]);
  out.nu = -f.slope;
  out.nu_error = f.slope_err;
  out.ln_alpha = f.intercept;
  out.ln_alpha_error = f.intercept_err;
  out.residuals = f.residuals;
  return out;
}

double jump_magnitude(const Curve& f, double lambda_c, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("jump_magnitude: delta must be positive");
  return std::abs(f(lambda_c + delta) - f(lambda_c - delta));
}

}  // namespace altxy
