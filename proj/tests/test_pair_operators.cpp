#include <doctest.h>

#include <cmath>
#include <numbers>

#include "altxy/fock.hpp"
#include "altxy/pair_operators.hpp"

using namespace altxy;

namespace {

using Rows = std::vector<std::vector<cplx>>;

ComplexMatrix from_rows(const Rows& r, cplx scale = 1.0) {
  ComplexMatrix m(r.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) m(i, j) = scale * r[i][j];
  return m;
}

// Correlator blocks transcribed from the printed tables, e = exp(i phi), E = conj(e).
struct Printed {
  ComplexMatrix xx2, xx3, xx4, yy2, yy3, yy4, xy2, xy3, xy4, yx2, yx3, yx4;
};

Printed printed(double phi) {
  const cplx e = std::polar(1.0, phi), E = std::conj(e), mi(0, -1);
  Printed p;
  p.xx2 = from_rows({{0, e, -e, 0}, {E, 0, 0, E}, {-E, 0, 0, -E}, {0, e, -e, 0}});
  p.xx3 = from_rows({{0, E, E, 0}, {e, 0, 0, -e}, {e, 0, 0, -e}, {0, -E, -E, 0}});
  p.xx4 = from_rows({{0, -E, -e, 0, 0, 0},
                     {-e, 0, 0, e, e, -e},
                     {-E, 0, 0, -E, -E, -E},
                     {0, E, -e, 0, 0, 0},
                     {0, E, -e, 0, 0, 0},
                     {0, -E, -e, 0, 0, 0}});
  p.yy2 = from_rows({{0, e, e, 0}, {E, 0, 0, -E}, {E, 0, 0, -E}, {0, -e, -e, 0}});
  p.yy3 = from_rows({{0, E, -E, 0}, {e, 0, 0, e}, {-e, 0, 0, -e}, {0, E, -E, 0}});
  p.yy4 = from_rows({{0, E, e, 0, 0, 0},
                     {e, 0, 0, e, e, -e},  // row 2, col 6 as printed
                     {E, 0, 0, -E, -E, E},
                     {0, E, -e, 0, 0, 0},
                     {0, E, -e, 0, 0, 0},
                     {0, E, e, 0, 0, 0}});
  p.xy2 = from_rows({{0, E, -E, 0}, {-e, 0, 0, e}, {e, 0, 0, -e}, {0, -E, E, 0}}, mi);
  p.xy3 = from_rows({{0, E, -E, 0}, {e, 0, 0, e}, {-e, 0, 0, -e}, {0, E, -E, 0}}, mi);
  p.xy4 = from_rows({{0, E, e, 0, 0, 0},
                     {-e, 0, 0, -e, e, e},
                     {-E, 0, 0, E, -E, E},
                     {0, E, -e, 0, 0, 0},
                     {0, -E, e, 0, 0, 0},
                     {0, -E, -e, 0, 0, 0}},
                    mi);
  p.yx2 = from_rows({{0, -E, -E, 0}, {e, 0, 0, e}, {e, 0, 0, e}, {0, -E, -E, 0}}, mi);
  p.yx3 = from_rows({{0, -e, e, 0}, {E, 0, 0, -E}, {-E, 0, 0, E}, {0, e, -e, 0}}, mi);
  p.yx4 = from_rows({{0, E, e, 0, 0, 0},
                     {-e, 0, 0, e, -e, e},
                     {-E, 0, 0, -E, E, E},
                     {0, -E, e, 0, 0, 0},
                     {0, E, -e, 0, 0, 0},
                     {0, -E, -e, 0, 0, 0}},
                    mi);
  return p;
}

}  // namespace

TEST_CASE("Fock space anticommutation") {
  const FockSpace f(3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const ComplexMatrix ac = f.annihilator(a) * f.creator(b) + f.creator(b) * f.annihilator(a);
      ComplexMatrix expect = ComplexMatrix::identity(8);
      if (a != b) expect *= 0.0;
      CHECK(max_abs_diff(ac, expect) < 1e-15);
      const ComplexMatrix aa = f.annihilator(a) * f.annihilator(b) + f.annihilator(b) * f.annihilator(a);
      CHECK(aa.max_abs() < 1e-15);
    }
}

TEST_CASE("derived correlator blocks against the printed tables") {
  for (double phi : {0.0, 0.37, 1.1, std::numbers::pi / 2}) {
    const Printed p = printed(phi);
    const auto xx = correlator_operator(CorrelatorKind::XX, phi);
    const auto yy = correlator_operator(CorrelatorKind::YY, phi);
    const auto xy = correlator_operator(CorrelatorKind::XY, phi);
    const auto yx = correlator_operator(CorrelatorKind::YX, phi);
    for (const auto* m : {&xx, &yy, &xy, &yx}) CHECK(m->blocks[0].max_abs() < 1e-15);
    CHECK(max_abs_diff(xx.blocks[1], p.xx2) < 1e-14);
    CHECK(max_abs_diff(xx.blocks[2], p.xx3) < 1e-14);
    CHECK(max_abs_diff(xx.blocks[3], p.xx4) < 1e-14);
    CHECK(max_abs_diff(yy.blocks[1], p.yy2) < 1e-14);
    CHECK(max_abs_diff(yy.blocks[2], p.yy3) < 1e-14);
    CHECK(max_abs_diff(xy.blocks[3], p.xy4) < 1e-14);
    CHECK(max_abs_diff(yx.blocks[3], p.yx4) < 1e-14);

    // Known deviations of the printed tables.
    // yy4: the printed (2,6) entry has the wrong sign; its Hermitian partner (6,2) is right.
    ComplexMatrix yy4 = p.yy4;
    CHECK(std::abs(yy4(1, 5) - std::conj(yy4(5, 1))) > 1.9);
    yy4(1, 5) = std::conj(yy4(5, 1));
    CHECK(max_abs_diff(yy.blocks[3], yy4) < 1e-14);
    // xy and yx: the printed blocks 2 and 3 are interchanged. The printed xy3 repeats the yy3
    // pattern and is not Hermitian with its -i prefactor; the derived xy block 2 is the complex
    // conjugate of the printed yx2.
    CHECK(max_abs_diff(xy.blocks[2], p.xy2) < 1e-14);
    CHECK_FALSE(p.xy3.is_hermitian());
    CHECK(xy.blocks[1].is_hermitian());
    CHECK(max_abs_diff(xy.blocks[1], p.yx2.adjoint().transpose()) < 1e-14);
    CHECK(max_abs_diff(yx.blocks[1], p.yx3) < 1e-14);
    CHECK(max_abs_diff(yx.blocks[2], p.yx2) < 1e-14);
  }
}

TEST_CASE("xx block 2 at phi = 0 is real symmetric") {
  const auto b = correlator_operator(CorrelatorKind::XX, 0.0).blocks[1];
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(std::abs(b(i, j).imag()) < 1e-15);
      CHECK(std::abs(b(i, j) - b(j, i)) < 1e-15);
      CHECK((std::abs(b(i, j)) < 1e-15 || std::abs(std::abs(b(i, j)) - 1.0) < 1e-15));
    }
}

TEST_CASE("magnetization operators") {
  for (double phi : {0.0, 0.6}) {
    const auto me = magnetization_operator(Sublattice::Even, phi);
    const auto mo = magnetization_operator(Sublattice::Odd, phi);
    // block 4 index 0 is the vacuum, index 5 the filled state; block 2 index 0 is a_p^dag |0>
    CHECK(me.blocks[3](0, 0).real() == doctest::Approx(-2.0));
    CHECK(mo.blocks[3](0, 0).real() == doctest::Approx(-2.0));
    CHECK(me.blocks[3](5, 5).real() == doctest::Approx(2.0));
    CHECK(mo.blocks[3](5, 5).real() == doctest::Approx(2.0));
    CHECK(mo.blocks[1](0, 0).real() == doctest::Approx(0.0));
    for (const auto& b : me.blocks)
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
          if (i != j) CHECK(std::abs(b(i, j)) < 1e-15);
  }
}

TEST_CASE("parity and singleton pieces") {
  const auto par = pair_parity();
  CHECK(par.blocks[0](0, 0).real() == 1.0);
  CHECK(par.blocks[1](0, 0).real() == -1.0);
  const SystemParams p{1.0, 0.8, 0.3, 0.5};
  const auto h = singleton_hamiltonian(p, fields_of(p), 0.0);
  CHECK(h.is_hermitian());
  CHECK(h.blocks.size() == 2);
}
