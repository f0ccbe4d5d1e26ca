#include "altxy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace altxy {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    // recompute derivative at the converged root
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

std::vector<double> panels(double a, double b, const std::vector<double>& breakpoints) {
  std::vector<double> p{a};
  std::vector<double> bp;
  for (double x : breakpoints)
    if (x > a && x < b) bp.push_back(x);
  std::sort(bp.begin(), bp.end());
  for (double x : bp)
    if (x - p.back() > 1e-14) p.push_back(x);
  if (b - p.back() <= 1e-14 && p.size() > 1) p.back() = b;
  else p.push_back(b);
  return p;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: node count must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<GaussLegendreRule>(build_rule(n))).first;
  return *it->second;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

std::vector<double> evaluate_grid(const VectorIntegrand& f, int width, std::span<const double> xs, bool parallel) {
  std::vector<double> out(xs.size() * width, 0.0);
  const long n = static_cast<long>(xs.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) f(xs[i], out.data() + i * width);
  } else {
    for (long i = 0; i < n; ++i) f(xs[i], out.data() + i * width);
  }
  return out;
}

std::vector<double> fixed_rule(const VectorIntegrand& f, int width, double a, double b, int nodes,
                               const std::vector<double>& breakpoints, bool parallel) {
  const auto& rule = gauss_legendre(nodes);
  const auto p = panels(a, b, breakpoints);
  std::vector<double> xs, ws;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const double c = 0.5 * (p[k] + p[k + 1]), h = 0.5 * (p[k + 1] - p[k]);
    for (int i = 0; i < nodes; ++i) {
      xs.push_back(c + h * rule.nodes[i]);
      ws.push_back(h * rule.weights[i]);
    }
  }
  auto vals = evaluate_grid(f, width, xs, parallel);
  std::vector<double> result(width), col(xs.size());
  for (int c = 0; c < width; ++c) {
    for (std::size_t i = 0; i < xs.size(); ++i) col[i] = ws[i] * vals[i * width + c];
    result[c] = pairwise_sum(col);
  }
  return result;
}

QuadratureResult integrate(const VectorIntegrand& f, int width, double a, double b, const QuadratureOptions& opt) {
  QuadratureResult r;
  int n = std::max(1, opt.min_nodes);
  auto prev = fixed_rule(f, width, a, b, n, opt.breakpoints, opt.parallel);
  while (true) {
    const int next = 2 * n;
    if (next > opt.max_nodes) {
      r.value = prev;
      r.nodes = n;
      r.converged = false;
      return r;
    }
    auto cur = fixed_rule(f, width, a, b, next, opt.breakpoints, opt.parallel);
    double err = 0.0;
    for (int c = 0; c < width; ++c) err = std::max(err, std::abs(cur[c] - prev[c]));
    r.error = err;
    prev = std::move(cur);
    n = next;
    if (err < opt.tolerance) {
      r.value = prev;
      r.nodes = n;
      r.converged = true;
      return r;
    }
  }
}

double integrate_scalar(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt,
                        QuadratureResult* report) {
  auto r = integrate([&](double x, double* out) { out[0] = f(x); }, 1, a, b, opt);
  if (report) *report = r;
  return r.value[0];
}

}  // namespace altxy
