#pragma once

#include <vector>

#include "altxy/matrix.hpp"

namespace altxy {

// Block-diagonal operator; only the diagonal blocks are stored.
struct BlockMatrix {
  std::vector<ComplexMatrix> blocks;

  static BlockMatrix zeros(const std::vector<std::size_t>& sizes);
  static BlockMatrix identity(const std::vector<std::size_t>& sizes);
  // Keeps only the diagonal blocks of a dense matrix.
  static BlockMatrix from_dense(const ComplexMatrix& m, const std::vector<std::size_t>& sizes);

  std::vector<std::size_t> sizes() const;
  std::size_t dim() const;
  ComplexMatrix to_dense() const;
  cplx trace() const;
  bool is_hermitian(double tol = 1e-12) const;
  BlockMatrix adjoint() const;

  BlockMatrix& operator+=(const BlockMatrix& o);
  BlockMatrix& operator*=(cplx s);
};

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b);
cplx trace_product(const BlockMatrix& a, const BlockMatrix& b);
double max_abs_diff(const BlockMatrix& a, const BlockMatrix& b);

struct BlockEigen {
  std::vector<HermitianEigen> blocks;
  // all eigenvalues ascending
  std::vector<double> values() const;
  double min_value() const;
};

BlockEigen block_eig(const BlockMatrix& h);
// exp(-beta (H - shift)) blockwise with a common shift (global minimum).
BlockMatrix block_shifted_exponential(const BlockEigen& e, double beta, double shift);
BlockMatrix block_unitary(const BlockEigen& e, double t);
// U rho U^dagger blockwise
BlockMatrix conjugate(const BlockMatrix& u, const BlockMatrix& rho);
// Projector onto eigenvectors with eigenvalue within tol of `level` (all blocks).
BlockMatrix block_level_projector(const BlockEigen& e, double level, double tol);

}  // namespace altxy
