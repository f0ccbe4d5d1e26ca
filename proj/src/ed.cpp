#include "altxy/ed.hpp"

#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace altxy {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double c, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& against) {
  // two passes of classical Gram-Schmidt
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& v : against) axpy(-dot(v, w), v, w);
}

struct RitzPair {
  double value;
  std::vector<double> vector;
};

// One Lanczos cycle from v0 with full reorthogonalization; returns the lowest Ritz pair.
RitzPair lanczos_cycle(const SpinHamiltonian& h, std::vector<double> v, const std::vector<std::vector<double>>& deflate,
                       int m, bool parallel, int& used) {
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> w(v.size());
  for (int k = 0; k < m; ++k) {
    basis.push_back(v);
    h.apply(basis.back().data(), w.data(), parallel);
    ++used;
    alpha.push_back(dot(w, basis.back()));
    orthogonalize(w, deflate);
    orthogonalize(w, basis);
    const double b = norm(w);
    if (b < 1e-13 * std::max(1.0, h.scale())) break;
    beta.push_back(b);
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / b;
  }
  const int n = static_cast<int>(basis.size());
  std::vector<double> d = alpha, e(std::max(n - 1, 1), 0.0), z(static_cast<std::size_t>(n) * n);
  for (int i = 0; i + 1 < n; ++i) e[i] = beta[i];
  if (LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', n, d.data(), e.data(), z.data(), n) != 0)
    throw NumericalError("lanczos: tridiagonal eigensolver failed");
  RitzPair r{d[0], std::vector<double>(v.size(), 0.0)};
  for (int k = 0; k < n; ++k) axpy(z[k], basis[k], r.vector);
  orthogonalize(r.vector, deflate);
  const double nr = norm(r.vector);
  for (auto& x : r.vector) x /= nr;
  return r;
}

RitzPair lowest_state(const SpinHamiltonian& h, const LanczosOptions& opt, const std::vector<std::vector<double>>& deflate,
                      std::uint64_t seed, int& used, double& residual) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(h.dim());
  for (auto& x : v) x = u(rng);
  orthogonalize(v, deflate);
  const double nv = norm(v);
  for (auto& x : v) x /= nv;
  const double tol = opt.tolerance * std::max(1.0, h.scale());
  std::vector<double> hv(h.dim());
  while (true) {
    const int m = std::min<long>(opt.cycle, static_cast<long>(h.dim() - deflate.size()));
    RitzPair r = lanczos_cycle(h, v, deflate, std::max(m, 1), opt.parallel, used);
    h.apply(r.vector.data(), hv.data(), opt.parallel);
    r.value = dot(r.vector, hv);
    axpy(-r.value, r.vector, hv);
    residual = norm(hv);
    if (residual < tol) return r;
    if (used >= opt.max_iterations)
      throw NumericalError("lanczos: no convergence after " + std::to_string(used) + " iterations, residual " +
                           std::to_string(residual));
    v = std::move(r.vector);
  }
}

template <typename T>
void accumulate_pair(const T* psi_full, int N, int i, int j, double w, ComplexMatrix& out) {
  const std::size_t dim = std::size_t{1} << N;
  const std::size_t bi = std::size_t{1} << (N - 1 - i), bj = std::size_t{1} << (N - 1 - j);
  for (std::size_t r = 0; r < dim; ++r) {
    if (r & (bi | bj)) continue;
    const std::array<cplx, 4> a{psi_full[r], psi_full[r | bj], psi_full[r | bi], psi_full[r | bi | bj]};
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) out(x, y) += w * a[x] * std::conj(a[y]);
  }
}

struct Weighted {
  double weight;
  int block;
  int column;
};

std::vector<Weighted> state_weights(const DenseSpectrum& s, Temperature temp) {
  const double e0 = s.min_energy();
  std::vector<Weighted> out;
  double z = 0.0;
  for (int b = 0; b < 2; ++b)
    for (std::size_t k = 0; k < s.blocks[b].values.size(); ++k) {
      const double de = s.blocks[b].values[k] - e0;
      double w;
      if (temp.zero)
        w = de <= 1e-9 * std::max(1.0, std::abs(e0)) ? 1.0 : 0.0;
      else
        w = std::exp(-temp.beta * de);
      if (w > 0.0) {
        out.push_back({w, b, static_cast<int>(k)});
        z += w;
      }
    }
  for (auto& x : out) x.weight /= z;
  return out;
}

// Renormalizes a summed reduced state; rounding over 2^N terms can exceed the 1e-12 trace check.
void renormalize(ComplexMatrix& r) {
  const double tr = r.trace().real();
  if (!(std::abs(tr - 1.0) < 1e-9)) throw NumericalError("two-site reduction: trace " + std::to_string(tr));
  r *= 1.0 / tr;
}

void check_pair(int N, int i, int j) {
  if (i < 0 || j < 0 || i >= N || j >= N || i == j) throw std::invalid_argument("two-site reduction: bad site pair");
}

}  // namespace

SpinHamiltonian::SpinHamiltonian(const SystemParams& params, int N, Boundary boundary, std::optional<FieldValues> fields)
    : n_(N), boundary_(boundary) {
  if (N < 2 || N > kMaxSites || N % 2 != 0) throw std::invalid_argument("SpinHamiltonian: N must be even, 2..22");
  const FieldValues f = fields.value_or(fields_of(params));
  flip_parallel_ = 0.5 * params.J * params.gamma;
  flip_antiparallel_ = 0.5 * params.J;
  for (int i = 0; i < N; ++i) field_.push_back(0.5 * (f.h1 + (i % 2 == 0 ? f.h2 : -f.h2)));
  for (int i = 0; i + 1 < N; ++i) bonds_.emplace_back(i, i + 1);
  if (boundary == Boundary::Periodic) bonds_.emplace_back(N - 1, 0);
}

double SpinHamiltonian::scale() const {
  double s = 0.0;
  for (double f : field_) s += std::abs(f);
  return s + bonds_.size() * (std::abs(flip_parallel_) + std::abs(flip_antiparallel_));
}

void SpinHamiltonian::apply(const double* in, double* out, bool parallel) const {
  const long dim = static_cast<long>(this->dim());
  std::vector<std::size_t> masks;
  for (auto [a, b] : bonds_) masks.push_back((std::size_t{1} << (n_ - 1 - a)) | (std::size_t{1} << (n_ - 1 - b)));
#pragma omp parallel for schedule(static) if (parallel)
  for (long s = 0; s < dim; ++s) {
    const std::size_t st = static_cast<std::size_t>(s);
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) acc += ((st >> (n_ - 1 - i)) & 1u) ? -field_[i] : field_[i];
    acc *= in[s];
    for (std::size_t m : masks) {
      const std::size_t bits = st & m;
      const bool parallel_spins = bits == 0 || bits == m;
      acc += (parallel_spins ? flip_parallel_ : flip_antiparallel_) * in[st ^ m];
    }
    out[s] = acc;
  }
}

std::vector<double> SpinHamiltonian::dense_block(int parity, std::vector<std::uint32_t>& states) const {
  if (n_ > kMaxDenseSites + 2) throw std::invalid_argument("dense_block: too many sites");
  states.clear();
  std::vector<int> index(dim(), -1);
  for (std::uint32_t s = 0; s < dim(); ++s)
    if (std::popcount(s) % 2 == parity) {
      index[s] = static_cast<int>(states.size());
      states.push_back(s);
    }
  const std::size_t n = states.size();
  std::vector<double> m(n * n, 0.0), in(dim(), 0.0), out(dim());
  for (std::size_t c = 0; c < n; ++c) {
    in[states[c]] = 1.0;
    apply(in.data(), out.data(), false);
    in[states[c]] = 0.0;
    for (std::size_t r = 0; r < n; ++r) m[r + n * c] = out[states[r]];
  }
  return m;
}

LanczosResult lanczos_ground_state(const SpinHamiltonian& h, const LanczosOptions& opt) {
  LanczosResult res;
  double residual = 0.0;
  RitzPair g = lowest_state(h, opt, {}, 0x5eedULL, res.iterations, residual);
  res.energy = g.value;
  res.residual = residual;
  if (opt.probe_degeneracy && h.dim() > 1) {
    double r2 = 0.0;
    RitzPair second = lowest_state(h, opt, {g.vector}, 0xdefULL, res.iterations, r2);
    res.second_energy = second.value;
    res.degenerate = std::abs(second.value - g.value) < opt.degeneracy_gap;
  }
  res.vector = std::move(g.vector);
  return res;
}

double DenseSpectrum::min_energy() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks)
    if (!b.values.empty()) e = std::min(e, b.values.front());
  return e;
}

DenseSpectrum dense_spectrum(const SpinHamiltonian& h) {
  if (h.sites() > SpinHamiltonian::kMaxDenseSites) throw std::invalid_argument("dense_spectrum: N must be <= 12");
  DenseSpectrum s;
  s.N = h.sites();
  for (int p = 0; p < 2; ++p) {
    auto& b = s.blocks[p];
    std::vector<double> a = h.dense_block(p, b.states);
    const int n = static_cast<int>(b.states.size());
    b.values.resize(n);
    b.vectors.resize(a.size());
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    // dsyevd from the system LAPACK returns non-orthonormal vectors at n = 128; dsyevr does not
    if (LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'A', 'U', n, a.data(), n, 0.0, 0.0, 0, 0, 0.0, &found,
                       b.values.data(), b.vectors.data(), n, support.data()) != 0 ||
        found != n)
      throw NumericalError("dense_spectrum: eigensolver failed");
  }
  return s;
}

ComplexMatrix dense_thermal_state(const DenseSpectrum& s, Temperature temp) {
  const std::size_t dim = std::size_t{1} << s.N;
  ComplexMatrix rho(dim, dim);
  for (const auto& w : state_weights(s, temp)) {
    const auto& b = s.blocks[w.block];
    const std::size_t n = b.states.size();
    const double* v = b.vectors.data() + n * w.column;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) rho(b.states[r], b.states[c]) += w.weight * v[r] * v[c];
  }
  return rho;
}

TwoSiteState reduce_two_site(const ComplexMatrix& rho, int N, int i, int j) {
  check_pair(N, i, j);
  ComplexMatrix r = partial_trace(rho, N, {i, j});
  r.hermitize();
  return TwoSiteState::validated(std::move(r), StateSource::ED);
}

TwoSiteState reduce_two_site(const std::vector<double>& psi, int N, int i, int j) {
  check_pair(N, i, j);
  if (psi.size() != std::size_t{1} << N) throw std::invalid_argument("reduce_two_site: dimension mismatch");
  ComplexMatrix r(4, 4);
  accumulate_pair(psi.data(), N, i, j, 1.0 / dot(psi, psi), r);
  r.hermitize();
  return TwoSiteState::validated(std::move(r), StateSource::ED);
}

TwoSiteState thermal_two_site(const DenseSpectrum& s, Temperature temp, int i, int j) {
  check_pair(s.N, i, j);
  ComplexMatrix r(4, 4);
  std::vector<double> full(std::size_t{1} << s.N, 0.0);
  for (const auto& w : state_weights(s, temp)) {
    const auto& b = s.blocks[w.block];
    const std::size_t n = b.states.size();
    for (std::size_t k = 0; k < n; ++k) full[b.states[k]] = b.vectors[n * w.column + k];
    accumulate_pair(full.data(), s.N, i, j, w.weight, r);
    for (std::size_t k = 0; k < n; ++k) full[b.states[k]] = 0.0;
  }
  r.hermitize();
  renormalize(r);
  return TwoSiteState::validated(std::move(r), StateSource::ED);
}

TwoSiteState evolved_two_site(const DenseSpectrum& pre, const DenseSpectrum& post, Temperature temp, double t, int i,
                              int j) {
  check_pair(pre.N, i, j);
  if (pre.N != post.N) throw std::invalid_argument("evolved_two_site: size mismatch");
  ComplexMatrix r(4, 4);
  std::vector<cplx> full(std::size_t{1} << pre.N, 0.0);
  for (const auto& w : state_weights(pre, temp)) {
    const auto& b = pre.blocks[w.block];
    const auto& u = post.blocks[w.block];
    const std::size_t n = b.states.size();
    const double* v = b.vectors.data() + n * w.column;
    std::vector<cplx> c(n);
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < n; ++q) s += u.vectors[n * k + q] * v[q];
      c[k] = s * std::polar(1.0, -u.values[k] * t);
    }
    for (std::size_t q = 0; q < n; ++q) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += u.vectors[n * k + q] * c[k];
      full[b.states[q]] = s;
    }
    accumulate_pair(full.data(), pre.N, i, j, w.weight, r);
    for (std::size_t q = 0; q < n; ++q) full[b.states[q]] = 0.0;
  }
  r.hermitize();
  return TwoSiteState::validated(std::move(r), StateSource::ED);
}

std::vector<TwoSiteState> bond_states(const DenseSpectrum& s, Temperature temp, Boundary boundary) {
  std::vector<TwoSiteState> out;
  for (int i = 0; i + 1 < s.N; ++i) out.push_back(thermal_two_site(s, temp, i, i + 1));
  if (boundary == Boundary::Periodic) out.push_back(thermal_two_site(s, temp, s.N - 1, 0));
  return out;
}

namespace {

// Translation by two sites on bit-packed states (site 0 in the most significant bit).
std::uint32_t shift_two(std::uint32_t s, int N) { return (s >> 2) | ((s & 3u) << (N - 2)); }

struct OrbitTable {
  std::vector<std::uint32_t> rep;   // per state
  std::vector<std::uint8_t> shift;  // state = T^shift(rep)
  std::vector<std::uint8_t> length; // per state, orbit size
};

OrbitTable orbit_table(int N) {
  const std::size_t dim = std::size_t{1} << N;
  OrbitTable t{std::vector<std::uint32_t>(dim), std::vector<std::uint8_t>(dim), std::vector<std::uint8_t>(dim)};
  std::vector<bool> seen(dim, false);
  for (std::uint32_t r = 0; r < dim; ++r) {
    if (seen[r]) continue;
    std::uint32_t s = r;
    int len = 0;
    do {
      seen[s] = true;
      t.rep[s] = r;
      t.shift[s] = static_cast<std::uint8_t>(len++);
      s = shift_two(s, N);
    } while (s != r);
    for (s = r; ; ) {
      t.length[s] = static_cast<std::uint8_t>(len);
      s = shift_two(s, N);
      if (s == r) break;
    }
  }
  return t;
}

}  // namespace

double SymmetricSpectrum::min_energy() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks)
    if (!b.values.empty()) e = std::min(e, b.values.front());
  return e;
}

SymmetricSpectrum symmetric_spectrum(const SpinHamiltonian& h) {
  const int N = h.sites();
  if (h.boundary() != Boundary::Periodic) throw std::invalid_argument("symmetric_spectrum: periodic chains only");
  if (N < 4 || N > SpinHamiltonian::kMaxDenseSites + 2) throw std::invalid_argument("symmetric_spectrum: N must be 4..14");
  const int M = N / 2;
  const std::size_t dim = h.dim();
  const OrbitTable orb = orbit_table(N);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t s = 0; s < dim; ++s)
    if (orb.rep[s] == s) reps.push_back(s);
  // H|r> for every representative, as (target state, amplitude)
  std::vector<std::vector<std::pair<std::uint32_t, double>>> columns(reps.size());
  std::vector<double> in(dim, 0.0), out(dim);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    in[reps[i]] = 1.0;
    h.apply(in.data(), out.data(), false);
    in[reps[i]] = 0.0;
    for (std::uint32_t s = 0; s < dim; ++s)
      if (out[s] != 0.0) columns[i].emplace_back(s, out[s]);
  }
  SymmetricSpectrum sp;
  sp.N = N;
  std::vector<int> index(dim, -1);
  for (int parity = 0; parity < 2; ++parity)
    for (int q = 0; q < M; ++q) {
      SymmetricSpectrum::Block b;
      b.parity = parity;
      b.q = q;
      std::vector<std::size_t> cols;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        const std::uint32_t r = reps[i];
        if (std::popcount(r) % 2 != parity || (q * orb.length[r]) % M != 0) continue;
        index[r] = static_cast<int>(b.reps.size());
        b.reps.push_back(r);
        cols.push_back(i);
      }
      const std::size_t n = b.reps.size();
      if (n == 0) continue;
      const double k = 2 * std::numbers::pi * q / M;
      ComplexMatrix m(n, n);
      for (std::size_t c = 0; c < n; ++c) {
        const double lr = orb.length[b.reps[c]];
        for (auto [s, amp] : columns[cols[c]]) {
          const int row = index[orb.rep[s]];
          if (row < 0) continue;
          m(row, c) += std::sqrt(lr / orb.length[s]) * std::polar(amp, k * orb.shift[s]);
        }
      }
      for (std::uint32_t r : b.reps) index[r] = -1;
      m.hermitize();
      HermitianEigen e = hermitian_eig(m);
      b.values = std::move(e.values);
      b.vectors = std::move(e.vectors);
      sp.blocks.push_back(std::move(b));
    }
  return sp;
}

TwoSiteState thermal_two_site(const SymmetricSpectrum& s, Temperature temp) {
  const int N = s.N;
  const int M = N / 2;
  const std::size_t dim = std::size_t{1} << N;
  const double e0 = s.min_energy();
  struct W {
    double weight;
    std::size_t block, column;
  };
  std::vector<W> ws;
  double z = 0.0;
  for (std::size_t b = 0; b < s.blocks.size(); ++b)
    for (std::size_t c = 0; c < s.blocks[b].values.size(); ++c) {
      const double de = s.blocks[b].values[c] - e0;
      const double w = temp.zero ? (de <= 1e-9 * std::max(1.0, std::abs(e0)) ? 1.0 : 0.0) : std::exp(-temp.beta * de);
      if (w > 0.0) {
        ws.push_back({w, b, c});
        z += w;
      }
    }
  const OrbitTable orb = orbit_table(N);
  ComplexMatrix r(4, 4);
  std::vector<cplx> full(dim, 0.0);
  for (const auto& w : ws) {
    const auto& b = s.blocks[w.block];
    const double k = 2 * std::numbers::pi * b.q / M;
    for (std::size_t i = 0; i < b.reps.size(); ++i) {
      const int len = orb.length[b.reps[i]];
      const cplx c = b.vectors(i, w.column) / std::sqrt(static_cast<double>(len));
      std::uint32_t st = b.reps[i];
      for (int m = 0; m < len; ++m, st = shift_two(st, N)) full[st] = c * std::polar(1.0, -k * m);
    }
    accumulate_pair(full.data(), N, 0, 1, w.weight / z, r);
    std::fill(full.begin(), full.end(), cplx(0.0));
  }
  r.hermitize();
  renormalize(r);
  return TwoSiteState::validated(std::move(r), StateSource::ED);
}

}  // namespace altxy
