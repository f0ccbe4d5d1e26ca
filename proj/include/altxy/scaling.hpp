#pragma once

#include <functional>
#include <string>
#include <vector>

#include "altxy/quench.hpp"

namespace altxy {

enum class Axis { Lambda1, Lambda2 };
std::string to_string(Axis a);

// A measure as a function of the tuning parameter.
using Curve = std::function<double(double)>;

// Central difference; with richardson, (4 D(h/2) - D(h)) / 3.
double derivative(const Curve& f, double x, double step = 1e-3, bool richardson = true);

// Zero-temperature (or thermal) measure along one axis, the other field held at `fixed`.
Curve momentum_curve(Measure m, Axis axis, double fixed, double gamma, SystemSize size,
                     Temperature temp = Temperature::zero_temperature());
// Same from the spin chain: dense spectrum up to 12 sites, Lanczos above (ground state only).
Curve ed_curve(Measure m, Axis axis, double fixed, double gamma, int N,
               Temperature temp = Temperature::zero_temperature());

struct PeakOptions {
  int points = 200;
  double tolerance = 1e-6;  // in lambda
  double step = 1e-3;         // derivative step, capped by the zoomed grid spacing
  double resolution = 1e-5;   // zoom until the grid spacing near the peak is this fine
  int zoom_points = 41;
  bool parallel = true;
};

struct Pseudocritical {
  double lambda_c = 0.0;
  double slope = 0.0;  // |dQ/dlambda| at lambda_c
  std::vector<double> grid, values;
};

// Coarse scan of |dQ/dlambda| from the curve's own grid (strongest interior local maximum), zoomed
// around the peak down to opt.resolution, then golden section on the Richardson derivative.
// Throws NumericalError when no interior maximum exists.
Pseudocritical locate_pseudocritical(const Curve& f, double lo, double hi, const PeakOptions& opt = {});

// Analytic phase boundary crossed when `axis` is tuned at fixed other field.
//   AFM-PM: lambda1^2 = lambda2^2 + 1,  AFM-DM: lambda2^2 = lambda1^2 + gamma^2.
double afm_pm_boundary(double lambda2);
double afm_dm_boundary(double lambda1, double gamma);

struct ScalingFit {
  double nu = 0.0, ln_alpha = 0.0;
  double nu_error = 0.0, ln_alpha_error = 0.0;
  std::vector<double> residuals;  // in ln|y|
  std::vector<double> N;          // sizes used
  std::vector<double> dropped;    // sizes dropped for a nonpositive distance
  Axis axis = Axis::Lambda1;
  double fixed = 0.0;
  double lambda_c_infinity = 0.0;
};

// |lambda_c(N) - lambda_c(inf)| = alpha N^-nu, least squares on ln-ln data. Needs >= 4 points
// and >= 3 usable after dropping.
ScalingFit fit_power_law(const std::vector<double>& N, const std::vector<double>& lambda_c, double lambda_c_infinity,
                         Axis axis = Axis::Lambda1, double fixed = 0.0);

struct JumpFit {
  double nu = 0.0, ln_alpha = 0.0;
  double nu_error = 0.0, ln_alpha_error = 0.0;
  std::vector<double> residuals;
  std::vector<double> N, jumps;
  std::vector<double> dropped;
};

JumpFit fit_jump_decay(const std::vector<double>& N, const std::vector<double>& jumps);

// |Q(lambda_c + delta) - Q(lambda_c - delta)|
double jump_magnitude(const Curve& f, double lambda_c, double delta = 1e-4);

}  // namespace altxy
