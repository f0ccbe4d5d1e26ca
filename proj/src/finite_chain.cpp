#include "altxy/finite_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace altxy {

namespace {

constexpr int kBilinears = 6;  // AeBe, AoBo, AeAo, BeBo, AeBo, BeAo

// Trace, the six bilinear traces and the quartic trace of one orbit operator.
struct OrbitTraces {
  cplx t = 0.0;
  std::array<cplx, kBilinears> u{};
  cplx q = 0.0;
};

struct OrbitSetup {
  Orbit orbit;
  BlockMatrix h;
  BlockMatrix parity;
  BlockEigen eig;
  std::array<BlockMatrix, kMajoranaCount> maj;
  std::vector<int> even_blocks, odd_blocks;
};

OrbitSetup setup_orbit(const SystemParams& params, const Orbit& o) {
  OrbitSetup s;
  s.orbit = o;
  const FieldValues f = fields_of(params);
  if (o.singleton) {
    s.h = singleton_hamiltonian(params, f, o.phi);
    s.parity = singleton_parity();
    for (int k = 0; k < kMajoranaCount; ++k) s.maj[k] = singleton_majorana(static_cast<Majorana>(k), o.phi);
    s.even_blocks = {0};
    s.odd_blocks = {1};
  } else {
    s.h = build_blocks(params, f, o.phi).h;
    s.parity = pair_parity();
    for (int k = 0; k < kMajoranaCount; ++k) s.maj[k] = pair_majorana(static_cast<Majorana>(k), o.phi);
    s.even_blocks = {0, 3};
    s.odd_blocks = {1, 2};
  }
  s.eig = block_eig(s.h);
  return s;
}

BlockMatrix post_unitary(const SystemParams& params, const Orbit& o, const Evolution& evo) {
  BlockMatrix h = o.singleton ? singleton_hamiltonian(params, evo.post, o.phi) : build_blocks(params, evo.post, o.phi).h;
  return block_unitary(block_eig(h), evo.t);
}

OrbitTraces traces(const OrbitSetup& s, const BlockMatrix& m, double s2) {
  OrbitTraces r;
  r.t = m.trace();
  for (int k = 0; k < kBilinears; ++k) r.u[k] = s2 * trace_product(m, s.maj[k]);
  r.q = s2 * s2 * trace_product(m, s.maj[static_cast<int>(Majorana::Quartic)]);
  return r;
}

// One product-form term of the density matrix: weight * (tensor product over orbits).
struct Term {
  double log_weight = 0.0;
  double sign = 1.0;
  std::vector<OrbitTraces> orbits;
};

struct Accumulated {
  cplx s0 = 1.0;
  std::array<cplx, kBilinears> lin{};
  cplx quartic = 0.0;
  std::array<cplx, 3> cross{};  // (AeBe,AoBo), (AeAo,BeBo), (AeBo,BeAo)
};

Accumulated accumulate(const std::vector<OrbitTraces>& orbits) {
  static constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {2, 3}, {4, 5}}};
  Accumulated a;
  for (const auto& o : orbits) {
    for (int p = 0; p < 3; ++p) {
      const auto [x, y] = kPairs[p];
      a.cross[p] = a.cross[p] * o.t + a.lin[x] * o.u[y] + a.lin[y] * o.u[x];
    }
    a.quartic = a.quartic * o.t + a.s0 * o.q;
    for (int k = 0; k < kBilinears; ++k) a.lin[k] = a.lin[k] * o.t + a.s0 * o.u[k];
    a.s0 *= o.t;
  }
  return a;
}

ObservableSet combine(const std::vector<Term>& terms, bool equilibrium) {
  double lmax = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) lmax = std::max(lmax, t.log_weight);
  cplx den = 0.0, zz = 0.0;
  std::array<cplx, kBilinears> lin{};
  for (const auto& t : terms) {
    const double w = t.sign * std::exp(t.log_weight - lmax);
    auto a = accumulate(t.orbits);
    den += w * a.s0;
    for (int k = 0; k < kBilinears; ++k) lin[k] += w * a.lin[k];
    zz += w * (a.quartic + a.cross[0] - a.cross[1] + a.cross[2]);
  }
  if (std::abs(den) == 0.0) throw NumericalError("exact_chain_observables: vanishing partition function");
  for (auto& v : lin) v /= den;
  zz /= den;
  ObservableSet o;
  o.m_e = -lin[0].real();
  o.m_o = -lin[1].real();
  o.c_xx = lin[5].real();
  o.c_yy = -lin[4].real();
  o.c_xy = (cplx(0, -1) * lin[3]).real();
  o.c_yx = (cplx(0, -1) * lin[2]).real();
  o.c_zz = zz.real();
  o.equilibrium = equilibrium;
  if (equilibrium) o.c_xy = o.c_yx = 0.0;
  return o;
}

double level_tolerance(double e) { return 1e-10 * std::max(1.0, std::abs(e)); }

// Lowest eigenvalue among the listed blocks.
double lowest_in(const BlockEigen& e, const std::vector<int>& blocks) {
  double m = std::numeric_limits<double>::infinity();
  for (int b : blocks) m = std::min(m, e.blocks[b].values.front());
  return m;
}

// Projector on eigenvalue `level` restricted to the listed blocks.
BlockMatrix restricted_projector(const BlockEigen& e, const std::vector<int>& blocks, double level) {
  BlockMatrix p = block_level_projector(e, level, level_tolerance(level));
  for (std::size_t k = 0; k < p.blocks.size(); ++k)
    if (std::find(blocks.begin(), blocks.end(), static_cast<int>(k)) == blocks.end())
      p.blocks[k] = ComplexMatrix(p.blocks[k].rows(), p.blocks[k].cols());
  return p;
}

struct SectorResult {
  double energy = 0.0;  // zero temperature only
  std::vector<Term> terms;
};

template <typename F>
void for_orbits(std::size_t n, bool parallel, F&& f) {
  const long m = static_cast<long>(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < m; ++i) f(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < m; ++i) f(static_cast<std::size_t>(i));
  }
}

SectorResult thermal_sector(const SystemParams& params, double beta, int N, int sector,
                            const std::optional<Evolution>& evo, bool parallel) {
  const auto orbits = sector_orbits(N, sector);
  const double s2 = 2.0 / N;
  std::vector<OrbitTraces> plain(orbits.size()), twisted(orbits.size());
  std::vector<double> logz(orbits.size());
  for_orbits(orbits.size(), parallel, [&](std::size_t i) {
    auto s = setup_orbit(params, orbits[i]);
    const double e0 = s.eig.min_value();
    BlockMatrix g = block_shifted_exponential(s.eig, beta, e0);
    const double z = g.trace().real();
    g *= 1.0 / z;
    if (evo) g = conjugate(post_unitary(params, orbits[i], *evo), g);
    logz[i] = -beta * e0 + std::log(z);
    plain[i] = traces(s, g, s2);
    twisted[i] = traces(s, s.parity * g, s2);
  });
  double l = 0.0;
  for (double x : logz) l += x;
  SectorResult r;
  const double sigma = sector == 0 ? 1.0 : -1.0;
  r.terms.push_back({l + std::log(0.5), 1.0, std::move(plain)});
  r.terms.push_back({l + std::log(0.5), sigma, std::move(twisted)});
  return r;
}

SectorResult ground_sector(const SystemParams& params, int N, int sector, const std::optional<Evolution>& evo,
                           bool parallel) {
  const auto orbits = sector_orbits(N, sector);
  const std::size_t n = orbits.size();
  const double s2 = 2.0 / N;
  struct Local {
    double e_even, e_odd, e_min;
    double d, d_par;  // trace of the ground projector and of parity times it
    OrbitTraces g, pg, flip;
    double d_flip;
  };
  std::vector<Local> loc(n);
  for_orbits(n, parallel, [&](std::size_t i) {
    auto s = setup_orbit(params, orbits[i]);
    Local& L = loc[i];
    L.e_even = lowest_in(s.eig, s.even_blocks);
    L.e_odd = lowest_in(s.eig, s.odd_blocks);
    L.e_min = std::min(L.e_even, L.e_odd);
    BlockMatrix g = block_level_projector(s.eig, L.e_min, level_tolerance(L.e_min));
    L.d = g.trace().real();
    L.d_par = (s.parity * g).trace().real();
    const bool even_ground = L.e_even <= L.e_odd;
    BlockMatrix gf = restricted_projector(s.eig, even_ground ? s.odd_blocks : s.even_blocks,
                                          even_ground ? L.e_odd : L.e_even);
    L.d_flip = gf.trace().real();
    std::optional<BlockMatrix> u;
    if (evo) u = post_unitary(params, orbits[i], *evo);
    g *= 1.0 / L.d;
    gf *= 1.0 / L.d_flip;
    if (u) {
      g = conjugate(*u, g);
      gf = conjugate(*u, gf);
    }
    L.g = traces(s, g, s2);
    L.pg = traces(s, s.parity * g, s2);
    L.flip = traces(s, gf, s2);
  });

  const double sigma = sector == 0 ? 1.0 : -1.0;
  SectorResult r;
  double e = 0.0, logd = 0.0, prod_d = 1.0, prod_par = 1.0;
  for (const auto& L : loc) {
    e += L.e_min;
    logd += std::log(L.d);
    prod_d *= L.d;
    prod_par *= L.d_par;
  }
  // number of ground configurations with the sector's parity
  const double allowed = 0.5 * (prod_d + sigma * prod_par);
  if (allowed > 0.25 || n == 0) {
    r.energy = e;
    std::vector<OrbitTraces> plain, twisted;
    for (const auto& L : loc) {
      plain.push_back(L.g);
      twisted.push_back(L.pg);
    }
    r.terms.push_back({logd + std::log(0.5), 1.0, std::move(plain)});
    r.terms.push_back({logd + std::log(0.5), sigma, std::move(twisted)});
    return r;
  }
  // every lowest configuration has the wrong parity: lift the cheapest orbit
  double best = std::numeric_limits<double>::infinity();
  for (const auto& L : loc) best = std::min(best, std::abs(L.e_even - L.e_odd));
  r.energy = e + best;
  for (std::size_t a = 0; a < n; ++a) {
    if (std::abs(std::abs(loc[a].e_even - loc[a].e_odd) - best) > level_tolerance(r.energy)) continue;
    std::vector<OrbitTraces> tr;
    double lw = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      tr.push_back(b == a ? loc[b].flip : loc[b].g);
      lw += std::log(b == a ? loc[b].d_flip : loc[b].d);
    }
    r.terms.push_back({lw, 1.0, std::move(tr)});
  }
  return r;
}

}  // namespace

std::vector<Orbit> sector_orbits(int N, int sector) {
  if (N < 4 || N % 4 != 0) throw std::invalid_argument("sector_orbits: N must be a positive multiple of 4");
  std::vector<Orbit> o;
  const double pi = std::numbers::pi;
  if (sector == 0) {
    for (int m = 0; m < N / 4; ++m) o.push_back({2 * pi * (m + 0.5) / N, false});
  } else {
    o.push_back({0.0, true});
    for (int m = 1; m < N / 4; ++m) o.push_back({2 * pi * m / N, false});
    o.push_back({pi / 2, true});
  }
  return o;
}

ObservableSet exact_chain_observables(const SystemParams& params, Temperature temp, int N,
                                      const std::optional<Evolution>& evo, bool parallel) {
  params.validate();
  std::vector<Term> terms;
  if (!temp.zero) {
    for (int sector : {0, 1}) {
      auto r = thermal_sector(params, temp.beta, N, sector, evo, parallel);
      for (auto& t : r.terms) terms.push_back(std::move(t));
    }
  } else {
    auto r0 = ground_sector(params, N, 0, evo, parallel);
    auto r1 = ground_sector(params, N, 1, evo, parallel);
    const double e = std::min(r0.energy, r1.energy);
    const double tol = 1e-9 * std::max(1.0, std::abs(e));
    for (auto* r : {&r0, &r1})
      if (r->energy - e <= tol)
        for (auto& t : r->terms) terms.push_back(std::move(t));
  }
  return combine(terms, !evo.has_value());
}

double exact_chain_ground_energy(const SystemParams& params, int N) {
  params.validate();
  double e = std::numeric_limits<double>::infinity();
  for (int sector : {0, 1}) e = std::min(e, ground_sector(params, N, sector, std::nullopt, false).energy);
  return e;
}

}  // namespace altxy
