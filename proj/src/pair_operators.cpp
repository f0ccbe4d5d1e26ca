#include "altxy/pair_operators.hpp"

#include <cmath>
#include <numbers>

#include "altxy/fock.hpp"

namespace altxy {

namespace {

enum Mode { AP = 0, AM = 1, BP = 2, BM = 3 };

const FockSpace& pair_fock() {
  static const FockSpace f(4);
  return f;
}

const FockSpace& singleton_fock() {
  static const FockSpace f(2);
  return f;
}

ComplexMatrix basis_from_states(const FockSpace& f, const std::vector<std::vector<cplx>>& states) {
  ComplexMatrix b(f.dim(), states.size());
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t i = 0; i < f.dim(); ++i) b(i, k) = states[k][i];
  return b;
}

struct Majoranas {
  ComplexMatrix ae, be, ao, bo;
};

Majoranas build_majoranas(const ComplexMatrix& ce, const ComplexMatrix& co) {
  return {ce.adjoint() + ce, ce.adjoint() - ce, co.adjoint() + co, co.adjoint() - co};
}

ComplexMatrix majorana_product(const Majoranas& m, Majorana which) {
  switch (which) {
    case Majorana::AeBe: return m.ae * m.be;
    case Majorana::AoBo: return m.ao * m.bo;
    case Majorana::AeAo: return m.ae * m.ao;
    case Majorana::BeBo: return m.be * m.bo;
    case Majorana::AeBo: return m.ae * m.bo;
    case Majorana::BeAo: return m.be * m.ao;
    case Majorana::Quartic: return m.ae * m.be * m.ao * m.bo;
    default: throw std::invalid_argument("majorana_product: bad selector");
  }
}

BlockMatrix pair_majorana_direct(Majorana which, double phi) {
  const auto& f = pair_fock();
  const ComplexMatrix ce = f.annihilator(BP) + f.annihilator(BM);
  const ComplexMatrix co = std::polar(1.0, -phi) * f.annihilator(AP) + std::polar(1.0, phi) * f.annihilator(AM);
  auto m = build_majoranas(ce, co);
  return BlockMatrix::from_dense(project(majorana_product(m, which), pair_basis()), kPairBlockSizes);
}

// Each product is a trigonometric polynomial in phi of degree at most 2; store the Fourier
// components so evaluation is a five-term sum.
struct FourierTable {
  std::array<std::array<BlockMatrix, 5>, kMajoranaCount> comp;
  FourierTable() {
    constexpr int K = 5;
    for (int w = 0; w < kMajoranaCount; ++w) {
      std::array<BlockMatrix, K> samples;
      for (int k = 0; k < K; ++k) samples[k] = pair_majorana_direct(static_cast<Majorana>(w), 2 * std::numbers::pi * k / K);
      for (int n = -2; n <= 2; ++n) {
        BlockMatrix c = BlockMatrix::zeros(kPairBlockSizes);
        for (int k = 0; k < K; ++k) {
          BlockMatrix s = samples[k];
          s *= std::polar(1.0 / K, -n * 2 * std::numbers::pi * k / K);
          c += s;
        }
        comp[w][n + 2] = std::move(c);
      }
    }
  }
};

const FourierTable& fourier_table() {
  static const FourierTable t;
  return t;
}

}  // namespace

const ComplexMatrix& pair_basis() {
  static const ComplexMatrix b = [] {
    const auto& f = pair_fock();
    return basis_from_states(f, {
        f.state({AP, BP}), f.state({AM, BM}),                                             // block 1
        f.state({AP}), f.state({BP}), f.state({AP, AM, BP}), f.state({AP, BP, BM}),       // block 2
        f.state({AM}), f.state({BM}), f.state({AP, AM, BM}), f.state({AM, BP, BM}),       // block 3
        f.state({}), f.state({AP, BM}), f.state({AM, BP}), f.state({AP, AM}), f.state({BP, BM}),
        f.state({AP, AM, BP, BM}),                                                        // block 4
    });
  }();
  return b;
}

BlockMatrix pair_parity() {
  BlockMatrix p = BlockMatrix::identity(kPairBlockSizes);
  p.blocks[1] *= -1.0;
  p.blocks[2] *= -1.0;
  return p;
}

BlockMatrix pair_hamiltonian_from_fock(const SystemParams& params, FieldValues fl, double phi) {
  const auto& f = pair_fock();
  const double J = params.J, c = std::cos(phi), s = std::sin(phi);
  auto a = [&](int m) { return f.annihilator(m); };
  auto ad = [&](int m) { return f.creator(m); };
  ComplexMatrix hop = ad(AP) * a(BP) + ad(AM) * a(BM);
  hop += hop.adjoint();
  ComplexMatrix pairing = ad(AP) * ad(BM) + a(AP) * a(BM) - ad(AM) * ad(BP) - a(AM) * a(BP);
  ComplexMatrix h = (J * c) * hop + cplx(0.0, -J * params.gamma * s) * pairing;
  h += (fl.h1 + fl.h2) * (f.number(BP) + f.number(BM));
  h += (fl.h1 - fl.h2) * (f.number(AP) + f.number(AM));
  h -= (2 * fl.h1) * ComplexMatrix::identity(16);
  return BlockMatrix::from_dense(project(h, pair_basis()), kPairBlockSizes);
}

BlockMatrix pair_majorana(Majorana which, double phi) {
  const auto& t = fourier_table().comp[static_cast<int>(which)];
  BlockMatrix r = BlockMatrix::zeros(kPairBlockSizes);
  for (int n = -2; n <= 2; ++n) {
    BlockMatrix c = t[n + 2];
    c *= std::polar(1.0, n * phi);
    r += c;
  }
  return r;
}

BlockMatrix magnetization_operator(Sublattice s, double phi) {
  BlockMatrix m = pair_majorana(s == Sublattice::Even ? Majorana::AeBe : Majorana::AoBo, phi);
  m *= -1.0;
  return m;
}

BlockMatrix correlator_operator(CorrelatorKind kind, double phi) {
  switch (kind) {
    case CorrelatorKind::XX: return pair_majorana(Majorana::BeAo, phi);
    case CorrelatorKind::YY: {
      auto m = pair_majorana(Majorana::AeBo, phi);
      m *= -1.0;
      return m;
    }
    case CorrelatorKind::XY: {
      auto m = pair_majorana(Majorana::BeBo, phi);
      m *= cplx(0.0, -1.0);
      return m;
    }
    case CorrelatorKind::YX: {
      auto m = pair_majorana(Majorana::AeAo, phi);
      m *= cplx(0.0, -1.0);
      return m;
    }
  }
  throw std::invalid_argument("correlator_operator: bad kind");
}

namespace {

const ComplexMatrix& singleton_basis() {
  static const ComplexMatrix b = [] {
    const auto& f = singleton_fock();
    return basis_from_states(f, {f.state({}), f.state({0, 1}), f.state({0}), f.state({1})});
  }();
  return b;
}

}  // namespace

BlockMatrix singleton_hamiltonian(const SystemParams& params, FieldValues fl, double phi) {
  const auto& f = singleton_fock();
  const double J = params.J;
  const ComplexMatrix a = f.annihilator(0), b = f.annihilator(1);
  ComplexMatrix hop = a.adjoint() * b;
  hop += hop.adjoint();
  ComplexMatrix pair = cplx(0.0, -J * params.gamma * std::sin(phi)) * (a.adjoint() * b.adjoint());
  pair += pair.adjoint();
  ComplexMatrix h = (J * std::cos(phi)) * hop + pair;
  h += (fl.h1 + fl.h2) * f.number(1);
  h += (fl.h1 - fl.h2) * f.number(0);
  h -= fl.h1 * ComplexMatrix::identity(4);
  return BlockMatrix::from_dense(project(h, singleton_basis()), kSingletonBlockSizes);
}

BlockMatrix singleton_majorana(Majorana which, double phi) {
  const auto& f = singleton_fock();
  auto m = build_majoranas(f.annihilator(1), std::polar(1.0, -phi) * f.annihilator(0));
  return BlockMatrix::from_dense(project(majorana_product(m, which), singleton_basis()), kSingletonBlockSizes);
}

BlockMatrix singleton_parity() {
  BlockMatrix p = BlockMatrix::identity(kSingletonBlockSizes);
  p.blocks[1] *= -1.0;
  return p;
}

}  // namespace altxy
