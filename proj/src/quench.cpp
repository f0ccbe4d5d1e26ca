#include "altxy/quench.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace altxy {

namespace {

constexpr std::array<Majorana, 6> kOps{Majorana::AeBe, Majorana::AoBo, Majorana::BeAo,
                                       Majorana::AeBo, Majorana::BeBo, Majorana::AeAo};
const std::array<cplx, 6> kCoef{cplx(-1, 0), cplx(-1, 0), cplx(1, 0), cplx(-1, 0), cplx(0, -1), cplx(0, -1)};

struct Node {
  double phi, weight;
};

std::vector<Node> kernel_nodes(const QuenchSpec& spec, int nodes) {
  std::vector<Node> out;
  if (spec.size.kind == SizeKind::PairSum) {
    const int N = spec.size.N;
    for (int p = 1; p <= N / 4; ++p) out.push_back({2 * std::numbers::pi * p / N, 2.0 / N});
    return out;
  }
  std::vector<double> edges{0.0};
  for (double b : kink_breakpoints(spec.pre)) edges.push_back(b);
  edges.push_back(std::numbers::pi / 2);
  const auto& rule = gauss_legendre(nodes);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double mid = 0.5 * (edges[k] + edges[k + 1]), half = 0.5 * (edges[k + 1] - edges[k]);
    for (int i = 0; i < nodes; ++i)
      out.push_back({mid + half * rule.nodes[i], half * rule.weights[i] / std::numbers::pi});
  }
  return out;
}

ObservableSet from_values(const std::array<double, 6>& v) {
  ObservableSet o;
  o.m_e = v[0];
  o.m_o = v[1];
  o.c_xx = v[2];
  o.c_yy = v[3];
  o.c_xy = v[4];
  o.c_yx = v[5];
  o.equilibrium = false;
  o.c_zz = czz_closure(o);
  return o;
}

std::vector<double> measure_series(const std::vector<ObservableSet>& obs, Measure m, bool parallel) {
  std::vector<double> out(obs.size());
  const long n = static_cast<long>(obs.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (long k = 0; k < n; ++k) out[k] = measure_value(assemble_rho(obs[k], StateSource::TES), m);
  return out;
}

double equilibrium_measure(Measure m, const SystemParams& params, Temperature T, SystemSize size) {
  return measure_value(assemble_rho(ces_observables(params, T, size)), m);
}

}  // namespace

std::string to_string(Measure m) { return m == Measure::LN ? "LN" : "QD"; }

double measure_value(const TwoSiteState& s, Measure m, const DiscordOptions& opt) {
  return m == Measure::LN ? log_negativity(s) : quantum_discord(s, opt).discord;
}

SystemParams QuenchSpec::post_params() const {
  SystemParams p = pre;
  p.lambda1 = post.h1 / pre.J;
  p.lambda2 = post.h2 / pre.J;
  return p;
}

ObservableSet evolve_observables(const QuenchSpec& spec, double t) {
  if (t < 0) throw std::invalid_argument("evolve_observables: t must be >= 0");
  ExpectationOptions opt;
  if (t > 0) opt.evolution = Evolution{spec.post, t};
  ObservableSet o = ces_observables(spec.pre, spec.init, spec.size, opt);
  o.equilibrium = false;
  return o;
}

DephasingKernel::DephasingKernel(const QuenchSpec& spec, int nodes) {
  spec.pre.validate();
  if (spec.size.kind == SizeKind::Exact)
    throw std::invalid_argument("DephasingKernel: exact chains are evolved by evolve_observables");
  const auto grid = kernel_nodes(spec, nodes);
  struct Local {
    std::array<double, 6> constant{};
    std::vector<double> omega;
    std::vector<std::array<cplx, 6>> coef;
  };
  std::vector<Local> local(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long q = 0; q < n; ++q) {
    const double phi = grid[q].phi, w = grid[q].weight;
    const BlockMatrix rho = ces_block_state(spec.pre, spec.init, phi);
    const BlockEigen e = block_eig(build_blocks(spec.pre, spec.post, phi).h);
    std::array<BlockMatrix, 6> ops;
    for (int k = 0; k < 6; ++k) ops[k] = pair_majorana(kOps[k], phi);
    Local& L = local[q];
    for (std::size_t b = 0; b < e.blocks.size(); ++b) {
      const ComplexMatrix& V = e.blocks[b].vectors;
      const ComplexMatrix Vd = V.adjoint();
      const ComplexMatrix r = Vd * rho.blocks[b] * V;
      std::array<ComplexMatrix, 6> o;
      for (int k = 0; k < 6; ++k) o[k] = Vd * ops[k].blocks[b] * V;
      const auto& E = e.blocks[b].values;
      for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = i; j < E.size(); ++j) {
          const double om = E[i] - E[j];
          std::array<cplx, 6> c;
          for (int k = 0; k < 6; ++k) c[k] = w * kCoef[k] * r(i, j) * o[k](j, i) * (i == j ? 1.0 : 2.0);
          if (i == j || std::abs(om) < 1e-12) {
            for (int k = 0; k < 6; ++k) L.constant[k] += c[k].real();
          } else {
            L.omega.push_back(om);
            L.coef.push_back(c);
          }
        }
    }
  }
  for (const auto& L : local) {
    for (int k = 0; k < 6; ++k) constant_[k] += L.constant[k];
    omega_.insert(omega_.end(), L.omega.begin(), L.omega.end());
    coef_.insert(coef_.end(), L.coef.begin(), L.coef.end());
  }
}

ObservableSet DephasingKernel::at(double t) const {
  std::array<double, 6> v = constant_;
  for (std::size_t q = 0; q < omega_.size(); ++q) {
    const cplx ph = std::polar(1.0, -omega_[q] * t);
    for (int k = 0; k < 6; ++k) v[k] += (coef_[q][k] * ph).real();
  }
  return from_values(v);
}

TimeSeries time_series(const QuenchSpec& spec, Measure m, const std::vector<double>& times, bool parallel) {
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::adjacent_find(times.begin(), times.end()) != times.end())
    throw std::invalid_argument("time_series: times must be strictly increasing");
  TimeSeries ts;
  ts.times = times;
  ts.observables.resize(times.size());
  if (spec.size.kind == SizeKind::Exact) {
    for (std::size_t k = 0; k < times.size(); ++k) ts.observables[k] = evolve_observables(spec, times[k]);
  } else {
    double tmax = 0.0;
    for (double t : times) tmax = std::max(tmax, std::abs(t));
    const DephasingKernel kernel(spec, evolution_node_count(tmax));
    const long n = static_cast<long>(times.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (long k = 0; k < n; ++k) ts.observables[k] = kernel.at(times[k]);
  }
  ts.values = measure_series(ts.observables, m, parallel);
  return ts;
}

std::string to_string(LargeTimeBehaviour b) {
  switch (b) {
    case LargeTimeBehaviour::Saturated: return "saturated";
    case LargeTimeBehaviour::BoundedOscillation: return "bounded-oscillation";
    case LargeTimeBehaviour::PersistentOscillation: return "persistent-oscillation";
  }
  return "?";
}

LongTimeResult long_time_average(const QuenchSpec& spec, Measure m, const LongTimeOptions& opt) {
  if (opt.samples < 2 || !(opt.t_end > opt.t_begin)) throw std::invalid_argument("long_time_average: bad window");
  std::vector<double> times(opt.samples);
  for (int k = 0; k < opt.samples; ++k)
    times[k] = opt.t_begin + (opt.t_end - opt.t_begin) * k / (opt.samples - 1);
  const TimeSeries ts = time_series(spec, m, times, opt.parallel);
  LongTimeResult r;
  r.average = pairwise_sum(ts.values) / ts.values.size();
  const auto [lo, hi] = std::minmax_element(ts.values.begin(), ts.values.end());
  r.fluctuation = 0.5 * (*hi - *lo);
  if (r.fluctuation <= 1e-10)
    r.behaviour = LargeTimeBehaviour::Saturated;
  else if (r.fluctuation <= opt.delta)
    r.behaviour = LargeTimeBehaviour::BoundedOscillation;
  else
    r.behaviour = LargeTimeBehaviour::PersistentOscillation;
  return r;
}

EquilibriumMax equilibrium_max_over_T(Measure m, const SystemParams& params, Temperature T, SystemSize size,
                                      int points) {
  if (T.zero) return {equilibrium_measure(m, params, T, size), 0.0};
  if (T.beta <= 0) throw std::invalid_argument("equilibrium_max_over_T: infinite temperature");
  const double t0 = 1.0 / T.beta;
  const double x_lo = std::log(t0 / 10), x_hi = std::log(t0 * 10);
  std::vector<double> xs(points);
  std::vector<Temperature> temps;
  for (int k = 0; k < points; ++k) {
    xs[k] = x_lo + (x_hi - x_lo) * k / (points - 1);
    temps.push_back(Temperature::from_T(std::exp(xs[k])));
  }
  const auto obs = ces_observables_scan(params, temps, size);
  std::vector<double> q(points);
  for (int k = 0; k < points; ++k) q[k] = measure_value(assemble_rho(obs[k]), m);
  const int best = static_cast<int>(std::max_element(q.begin(), q.end()) - q.begin());
  EquilibriumMax out{q[best], std::exp(xs[best])};

  const int a = std::max(best - 1, 0), b = std::min(best + 1, points - 1);
  if (a == best || b == best || !(q[best] > q[a]) || !(q[best] > q[b])) return out;
  struct Ctx {
    Measure m;
    const SystemParams* p;
    SystemSize size;
  } ctx{m, &params, size};
  gsl_function fn;
  fn.params = &ctx;
  fn.function = [](double x, void* c) {
    const auto* k = static_cast<const Ctx*>(c);
    return -equilibrium_measure(k->m, *k->p, Temperature::from_T(std::exp(x)), k->size);
  };
  gsl_min_fminimizer* s = gsl_min_fminimizer_alloc(gsl_min_fminimizer_goldensection);
  gsl_set_error_handler_off();
  if (gsl_min_fminimizer_set_with_values(s, &fn, xs[best], -q[best], xs[a], -q[a], xs[b], -q[b]) == GSL_SUCCESS) {
    for (int it = 0; it < 200; ++it) {
      if (gsl_min_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_min_fminimizer_x_upper(s) - gsl_min_fminimizer_x_lower(s) < 1e-6) break;
    }
    const double v = -gsl_min_fminimizer_f_minimum(s);
    if (v > out.value) out = {v, std::exp(gsl_min_fminimizer_x_minimum(s))};
  }
  gsl_min_fminimizer_free(s);
  return out;
}

ErgodicityReport ergodicity_score(const QuenchSpec& spec, Measure m, const LongTimeOptions& opt) {
  ErgodicityReport r;
  r.long_time = long_time_average(spec, m, opt);
  r.q_time_avg = r.long_time.average;
  const EquilibriumMax eq = equilibrium_max_over_T(m, spec.post_params(), spec.init, spec.size);
  r.q_eq_max = eq.value;
  r.T_eq_max = eq.T;
  r.eta = std::max(0.0, r.q_time_avg - r.q_eq_max);
  r.ergodic = r.eta < 1e-3;
  r.inconclusive = r.eta > 0 && r.eta < 1e-3;
  return r;
}

NonmonotonicityResult nonmonotonicity_of(std::vector<double> T, std::vector<double> values, double threshold) {
  NonmonotonicityResult r;
  // largest rise Q(T_b) - Q(T_a) over T_a < T_b
  std::size_t low = 0;
  double rise = threshold;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] - values[low] > rise) {
      rise = values[k] - values[low];
      r.ng = true;
      r.T_a = T[low];
      r.T_b = T[k];
    }
    if (values[k] < values[low]) low = k;
  }
  r.T = std::move(T);
  r.values = std::move(values);
  return r;
}

NonmonotonicityResult nonmonotonicity_detect(const SystemParams& params, Measure m, const NonmonotonicityOptions& opt) {
  std::vector<double> T;
  std::vector<Temperature> temps;
  for (int k = 1; k <= opt.points; ++k) {
    T.push_back(opt.T_max * k / opt.points);
    temps.push_back(Temperature::from_T(T.back()));
  }
  const auto obs = ces_observables_scan(params, temps, opt.size);
  std::vector<double> q(obs.size());
  const long n = static_cast<long>(obs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < n; ++k) q[k] = measure_value(assemble_rho(obs[k]), m);
  return nonmonotonicity_of(std::move(T), std::move(q), opt.threshold);
}

}  // namespace altxy
