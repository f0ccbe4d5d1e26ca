#include "altxy/fock.hpp"

#include <bit>

namespace altxy {

FockSpace::FockSpace(int modes) : modes_(modes) {
  if (modes < 1 || modes > 10) throw std::invalid_argument("FockSpace: mode count out of range");
  const std::size_t d = dim();
  for (int m = 0; m < modes; ++m) {
    ComplexMatrix c(d, d);
    for (std::size_t s = 0; s < d; ++s) {
      if (!((s >> m) & 1u)) continue;
      const int below = std::popcount(s & ((std::size_t{1} << m) - 1));
      c(s ^ (std::size_t{1} << m), s) = (below % 2 == 0) ? 1.0 : -1.0;
    }
    c_.push_back(std::move(c));
  }
}

ComplexMatrix FockSpace::number(int mode) const { return creator(mode) * c_[mode]; }

ComplexMatrix FockSpace::parity() const {
  ComplexMatrix p(dim(), dim());
  for (std::size_t s = 0; s < dim(); ++s) p(s, s) = (std::popcount(s) % 2 == 0) ? 1.0 : -1.0;
  return p;
}

std::vector<cplx> FockSpace::state(std::initializer_list<int> created) const {
  std::vector<cplx> v(dim(), 0.0);
  v[0] = 1.0;
  std::vector<int> ops(created);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) v = altxy::apply(creator(*it), v);
  return v;
}

ComplexMatrix project(const ComplexMatrix& op, const ComplexMatrix& basis) { return basis.adjoint() * op * basis; }

}  // namespace altxy
