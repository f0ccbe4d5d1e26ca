#include "altxy/momentum_observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "altxy/finite_chain.hpp"

namespace altxy {

namespace {

constexpr double kRangeSlack = 1e-9;

std::array<double, 7> as_array(const ObservableSet& o) {
  return {o.m_e, o.m_o, o.c_xx, o.c_yy, o.c_zz, o.c_xy, o.c_yx};
}

// integrand width 6: (m_e, m_o, c_xx, c_yy, c_xy, c_yx)
VectorIntegrand pair_integrand(const SystemParams& params, Temperature temp, const std::optional<Evolution>& evo) {
  return [params, temp, evo](double phi, double* out) {
    BlockMatrix rho = ces_block_state(params, temp, phi);
    if (evo) rho = evolve_block_state(rho, params, *evo, phi);
    const auto e = pair_expectations(rho, phi);
    std::copy(e.begin(), e.end(), out);
  };
}

std::vector<double> pair_sum(const VectorIntegrand& f, int width, int N, bool parallel) {
  std::vector<double> xs;
  for (int p = 1; p <= N / 4; ++p) xs.push_back(2 * std::numbers::pi * p / N);
  const auto vals = evaluate_grid(f, width, xs, parallel);
  std::vector<double> out(width), col(xs.size());
  for (int k = 0; k < width; ++k) {
    for (std::size_t i = 0; i < xs.size(); ++i) col[i] = vals[i * width + k];
    out[k] = 2.0 / N * pairwise_sum(col);
  }
  return out;
}

std::vector<double> infinite_integral(const VectorIntegrand& f, int width, const SystemParams& params,
                                      const ExpectationOptions& opt) {
  QuadratureOptions q = opt.quadrature;
  if (q.breakpoints.empty()) q.breakpoints = kink_breakpoints(params);
  if (opt.evolution) q.min_nodes = std::max(q.min_nodes, evolution_node_count(opt.evolution->t));
  q.max_nodes = std::max(q.max_nodes, q.min_nodes);
  auto r = integrate(f, width, 0.0, std::numbers::pi / 2, q);
  if (!r.converged) {
    std::ostringstream s;
    s << "thermodynamic-limit quadrature did not converge: estimate " << r.value[0] / std::numbers::pi
      << ", error bound " << r.error / std::numbers::pi << " at " << r.nodes << " nodes";
    throw NumericalError(s.str());
  }
  for (auto& v : r.value) v /= std::numbers::pi;
  return r.value;
}

ObservableSet from_pair_values(const std::vector<double>& v, bool equilibrium) {
  ObservableSet o;
  o.m_e = v[0];
  o.m_o = v[1];
  o.c_xx = v[2];
  o.c_yy = v[3];
  o.c_xy = equilibrium ? 0.0 : v[4];
  o.c_yx = equilibrium ? 0.0 : v[5];
  o.equilibrium = equilibrium;
  o.c_zz = czz_closure(o);
  return o;
}

// Diagonal elements <n|O|n> of the six pair observables in the eigenbasis of H_p.
struct EigenDiagonal {
  std::vector<double> energies;
  std::vector<std::array<double, 6>> diag;
};

EigenDiagonal eigen_diagonal(const SystemParams& params, double phi) {
  const BlockEigen e = block_eig(build_blocks(params, phi).h);
  static constexpr std::array<Majorana, 6> kOps{Majorana::AeBe, Majorana::AoBo, Majorana::BeAo,
                                                Majorana::AeBo, Majorana::BeBo, Majorana::AeAo};
  static constexpr std::array<cplx, 6> kCoef{cplx(-1, 0), cplx(-1, 0), cplx(1, 0), cplx(-1, 0), cplx(0, -1), cplx(0, -1)};
  std::array<BlockMatrix, 6> ops;
  for (int k = 0; k < 6; ++k) ops[k] = pair_majorana(kOps[k], phi);
  EigenDiagonal d;
  for (std::size_t b = 0; b < e.blocks.size(); ++b) {
    const auto& eb = e.blocks[b];
    const std::size_t n = eb.values.size();
    for (std::size_t c = 0; c < n; ++c) {
      std::array<double, 6> row{};
      for (int k = 0; k < 6; ++k) {
        const ComplexMatrix& o = ops[k].blocks[b];
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) s += std::conj(eb.vectors(i, c)) * o(i, j) * eb.vectors(j, c);
        row[k] = (kCoef[k] * s).real();
      }
      d.energies.push_back(eb.values[c]);
      d.diag.push_back(row);
    }
  }
  return d;
}

void thermal_average(const EigenDiagonal& d, Temperature temp, double* out) {
  const double e0 = *std::min_element(d.energies.begin(), d.energies.end());
  const double tol = 1e-10 * std::max(1.0, std::abs(e0));
  double z = 0.0;
  std::array<double, 6> acc{};
  for (std::size_t n = 0; n < d.energies.size(); ++n) {
    const double de = d.energies[n] - e0;
    const double w = temp.zero ? (de <= tol ? 1.0 : 0.0) : std::exp(-temp.beta * de);
    z += w;
    for (int k = 0; k < 6; ++k) acc[k] += w * d.diag[n][k];
  }
  for (int k = 0; k < 6; ++k) out[k] = acc[k] / z;
}

}  // namespace

void ObservableSet::validate() const {
  for (double v : as_array(*this))
    if (!std::isfinite(v) || std::abs(v) > 1.0 + kRangeSlack)
      throw std::domain_error("ObservableSet: entry outside [-1, 1]: " + std::to_string(v));
  if (equilibrium && (c_xy != 0.0 || c_yx != 0.0))
    throw std::domain_error("ObservableSet: equilibrium set with nonzero off-diagonal correlators");
}

double ObservableSet::max_abs_diff(const ObservableSet& o) const {
  const auto a = as_array(*this), b = as_array(o);
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

Temperature Temperature::inverse(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("Temperature: beta must be finite and >= 0");
  return {false, beta};
}

std::string Temperature::describe() const {
  if (zero) return "T=0";
  std::ostringstream s;
  s << "beta=" << beta;
  return s.str();
}

void SystemSize::validate() const {
  if (kind == SizeKind::Infinite) return;
  if (N < 4 || N % 4 != 0) throw std::invalid_argument("SystemSize: N must be a positive multiple of 4");
}

std::string SystemSize::describe() const {
  switch (kind) {
    case SizeKind::Infinite: return "N=inf";
    case SizeKind::Exact: return "N=" + std::to_string(N) + " (exact)";
    case SizeKind::PairSum: return "N=" + std::to_string(N) + " (pair sum)";
  }
  return "?";
}

BlockMatrix ces_block_state(const SystemParams& params, Temperature temp, double phi) {
  return ces_block_state(params, fields_of(params), temp, phi);
}

BlockMatrix ces_block_state(const SystemParams& params, FieldValues fields, Temperature temp, double phi) {
  const BlockEigen e = block_eig(build_blocks(params, fields, phi).h);
  const double e0 = e.min_value();
  BlockMatrix rho = temp.zero ? block_level_projector(e, e0, 1e-10 * std::max(1.0, std::abs(e0)))
                              : block_shifted_exponential(e, temp.beta, e0);
  rho *= 1.0 / rho.trace().real();
  return rho;
}

BlockMatrix evolve_block_state(const BlockMatrix& rho, const SystemParams& params, const Evolution& evo, double phi) {
  if (evo.t == 0.0) return rho;
  return conjugate(block_unitary(block_eig(build_blocks(params, evo.post, phi).h), evo.t), rho);
}

std::array<double, 6> pair_expectations(const BlockMatrix& rho, double phi) {
  const auto ex = [&](Majorana m) { return trace_product(rho, pair_majorana(m, phi)); };
  return {
      -ex(Majorana::AeBe).real(),
      -ex(Majorana::AoBo).real(),
      ex(Majorana::BeAo).real(),
      -ex(Majorana::AeBo).real(),
      (cplx(0, -1) * ex(Majorana::BeBo)).real(),
      (cplx(0, -1) * ex(Majorana::AeAo)).real(),
  };
}

double czz_closure(const ObservableSet& o) { return o.m_e * o.m_o - o.c_xx * o.c_yy + o.c_xy * o.c_yx; }

int evolution_node_count(double t) {
  const double n = 16.0 * (std::abs(t) + 16.0);
  int k = 256;
  while (k < n) k *= 2;
  return k;
}

double thermal_expectation(const PairOperatorFamily& op, const SystemParams& params, Temperature temp,
                           SystemSize size, const ExpectationOptions& opt) {
  params.validate();
  size.validate();
  VectorIntegrand f = [&](double phi, double* out) {
    BlockMatrix rho = ces_block_state(params, temp, phi);
    if (opt.evolution) rho = evolve_block_state(rho, params, *opt.evolution, phi);
    out[0] = trace_product(rho, op(phi)).real();
  };
  switch (size.kind) {
    case SizeKind::PairSum: return pair_sum(f, 1, size.N, opt.quadrature.parallel)[0];
    case SizeKind::Infinite: return infinite_integral(f, 1, params, opt)[0];
    case SizeKind::Exact: break;
  }
  throw std::invalid_argument("thermal_expectation: a generic operator family needs a pair-sum or infinite size");
}

double thermal_expectation(Observable which, const SystemParams& params, Temperature temp, SystemSize size,
                           const ExpectationOptions& opt) {
  const ObservableSet o = ces_observables(params, temp, size, opt);
  switch (which) {
    case Observable::Me: return o.m_e;
    case Observable::Mo: return o.m_o;
    case Observable::Cxx: return o.c_xx;
    case Observable::Cyy: return o.c_yy;
    case Observable::Czz: return o.c_zz;
    case Observable::Cxy: return o.c_xy;
    case Observable::Cyx: return o.c_yx;
  }
  throw std::invalid_argument("thermal_expectation: bad observable");
}

std::vector<ObservableSet> ces_observables_scan(const SystemParams& params, const std::vector<Temperature>& temps,
                                                SystemSize size, const QuadratureOptions& quadrature) {
  params.validate();
  size.validate();
  std::vector<ObservableSet> out;
  if (temps.empty()) return out;
  if (size.kind == SizeKind::Exact) {
    ExpectationOptions opt;
    opt.quadrature = quadrature;
    for (const auto& t : temps) out.push_back(ces_observables(params, t, size, opt));
    return out;
  }
  const int width = 6 * static_cast<int>(temps.size());
  VectorIntegrand f = [&](double phi, double* o) {
    const EigenDiagonal d = eigen_diagonal(params, phi);
    for (std::size_t k = 0; k < temps.size(); ++k) thermal_average(d, temps[k], o + 6 * k);
  };
  ExpectationOptions opt;
  opt.quadrature = quadrature;
  const std::vector<double> v = size.kind == SizeKind::PairSum ? pair_sum(f, width, size.N, quadrature.parallel)
                                                                : infinite_integral(f, width, params, opt);
  for (std::size_t k = 0; k < temps.size(); ++k) {
    out.push_back(from_pair_values(std::vector<double>(v.begin() + 6 * k, v.begin() + 6 * k + 6), true));
    out.back().validate();
  }
  return out;
}

ObservableSet ces_observables(const SystemParams& params, Temperature temp, SystemSize size,
                              const ExpectationOptions& opt) {
  params.validate();
  size.validate();
  const bool equilibrium = !opt.evolution.has_value();
  ObservableSet o;
  switch (size.kind) {
    case SizeKind::Exact:
      o = exact_chain_observables(params, temp, size.N, opt.evolution, opt.quadrature.parallel);
      break;
    case SizeKind::PairSum:
      o = from_pair_values(pair_sum(pair_integrand(params, temp, opt.evolution), 6, size.N, opt.quadrature.parallel),
                           equilibrium);
      break;
    case SizeKind::Infinite:
      o = from_pair_values(infinite_integral(pair_integrand(params, temp, opt.evolution), 6, params, opt), equilibrium);
      break;
  }
  o.validate();
  return o;
}

}  // namespace altxy
