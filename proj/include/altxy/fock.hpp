#pragma once

#include <initializer_list>
#include <vector>

#include "altxy/matrix.hpp"

namespace altxy {

// Fermionic Fock space over a handful of modes with Jordan-Wigner signs.
// Basis index bit m is the occupation of mode m; mode 0 is first in normal order.
class FockSpace {
 public:
  explicit FockSpace(int modes);

  int modes() const { return modes_; }
  std::size_t dim() const { return std::size_t{1} << modes_; }

  const ComplexMatrix& annihilator(int mode) const { return c_[mode]; }
  ComplexMatrix creator(int mode) const { return c_[mode].adjoint(); }
  ComplexMatrix number(int mode) const;
  ComplexMatrix parity() const;

  // c^dag_{m1} c^dag_{m2} ... |0>, rightmost operator applied first.
  std::vector<cplx> state(std::initializer_list<int> created) const;

 private:
  int modes_;
  std::vector<ComplexMatrix> c_;
};

// Change of basis: columns of `basis` are Fock vectors; returns B^dag O B.
ComplexMatrix project(const ComplexMatrix& op, const ComplexMatrix& basis);

}  // namespace altxy
