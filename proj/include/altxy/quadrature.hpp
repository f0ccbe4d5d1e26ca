#pragma once

#include <functional>
#include <span>
#include <vector>

namespace altxy {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Cached per node count; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int n);

double pairwise_sum(std::span<const double> v);

struct QuadratureOptions {
  int min_nodes = 256;
  int max_nodes = 65536;
  double tolerance = 1e-10;
  // interior points where the integrand may have a kink
  std::vector<double> breakpoints;
  bool parallel = true;
};

struct QuadratureResult {
  std::vector<double> value;
  double error = 0.0;  // max abs difference between the last two refinements
  int nodes = 0;       // per panel
  bool converged = false;
};

// Integrand writes `width` values for one abscissa.
using VectorIntegrand = std::function<void(double x, double* out)>;

// Gauss-Legendre with node doubling until successive estimates agree.
QuadratureResult integrate(const VectorIntegrand& f, int width, double a, double b, const QuadratureOptions& opt = {});
double integrate_scalar(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt = {},
                        QuadratureResult* report = nullptr);

// Fixed rule over [a, b], panels split at breakpoints. Serial and OpenMP versions give identical
// results because the reduction is a pairwise sum over a node-ordered buffer.
std::vector<double> fixed_rule(const VectorIntegrand& f, int width, double a, double b, int nodes,
                               const std::vector<double>& breakpoints, bool parallel);

// Evaluates f at every x (in parallel when asked), results in x order.
std::vector<double> evaluate_grid(const VectorIntegrand& f, int width, std::span<const double> xs, bool parallel);

}  // namespace altxy
