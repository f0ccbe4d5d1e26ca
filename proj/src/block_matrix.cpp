#include "altxy/block_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace altxy {

BlockMatrix BlockMatrix::zeros(const std::vector<std::size_t>& sizes) {
  BlockMatrix b;
  for (auto s : sizes) b.blocks.emplace_back(s, s);
  return b;
}

BlockMatrix BlockMatrix::identity(const std::vector<std::size_t>& sizes) {
  BlockMatrix b;
  for (auto s : sizes) b.blocks.push_back(ComplexMatrix::identity(s));
  return b;
}

BlockMatrix BlockMatrix::from_dense(const ComplexMatrix& m, const std::vector<std::size_t>& sizes) {
  BlockMatrix b;
  std::size_t off = 0;
  for (auto s : sizes) {
    ComplexMatrix blk(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) blk(i, j) = m(off + i, off + j);
    b.blocks.push_back(std::move(blk));
    off += s;
  }
  if (off != m.rows()) throw std::invalid_argument("BlockMatrix::from_dense: block sizes do not cover the matrix");
  return b;
}

std::vector<std::size_t> BlockMatrix::sizes() const {
  std::vector<std::size_t> s;
  for (const auto& b : blocks) s.push_back(b.rows());
  return s;
}

std::size_t BlockMatrix::dim() const {
  std::size_t d = 0;
  for (const auto& b : blocks) d += b.rows();
  return d;
}

ComplexMatrix BlockMatrix::to_dense() const {
  ComplexMatrix m(dim(), dim());
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

cplx BlockMatrix::trace() const {
  cplx t = 0.0;
  for (const auto& b : blocks) t += b.trace();
  return t;
}

bool BlockMatrix::is_hermitian(double tol) const {
  return std::all_of(blocks.begin(), blocks.end(), [&](const ComplexMatrix& b) { return b.is_hermitian(tol); });
}

BlockMatrix BlockMatrix::adjoint() const {
  BlockMatrix r;
  for (const auto& b : blocks) r.blocks.push_back(b.adjoint());
  return r;
}

BlockMatrix& BlockMatrix::operator+=(const BlockMatrix& o) {
  if (o.blocks.size() != blocks.size()) throw std::invalid_argument("BlockMatrix +=: layout mismatch");
  for (std::size_t k = 0; k < blocks.size(); ++k) blocks[k] += o.blocks[k];
  return *this;
}

BlockMatrix& BlockMatrix::operator*=(cplx s) {
  for (auto& b : blocks) b *= s;
  return *this;
}

BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.blocks.size() != b.blocks.size()) throw std::invalid_argument("BlockMatrix *: layout mismatch");
  BlockMatrix r;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) r.blocks.push_back(a.blocks[k] * b.blocks[k]);
  return r;
}

cplx trace_product(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.blocks.size() != b.blocks.size()) throw std::invalid_argument("trace_product: layout mismatch");
  cplx t = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) t += trace_product(a.blocks[k], b.blocks[k]);
  return t;
}

double max_abs_diff(const BlockMatrix& a, const BlockMatrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) m = std::max(m, max_abs_diff(a.blocks[k], b.blocks[k]));
  return m;
}

std::vector<double> BlockEigen::values() const {
  std::vector<double> v;
  for (const auto& b : blocks) v.insert(v.end(), b.values.begin(), b.values.end());
  std::sort(v.begin(), v.end());
  return v;
}

double BlockEigen::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks)
    if (!b.values.empty()) m = std::min(m, b.values.front());
  return m;
}

BlockEigen block_eig(const BlockMatrix& h) {
  BlockEigen e;
  for (const auto& b : h.blocks) e.blocks.push_back(hermitian_eig(b));
  return e;
}

BlockMatrix block_shifted_exponential(const BlockEigen& e, double beta, double shift) {
  BlockMatrix r;
  for (const auto& b : e.blocks) {
    auto m = hermitian_matrix_function(b, [&](double x) { return cplx(std::exp(-beta * (x - shift)), 0.0); });
    m.hermitize();
    r.blocks.push_back(std::move(m));
  }
  return r;
}

BlockMatrix block_unitary(const BlockEigen& e, double t) {
  BlockMatrix r;
  for (const auto& b : e.blocks) r.blocks.push_back(unitary_propagator(b, t));
  return r;
}

BlockMatrix conjugate(const BlockMatrix& u, const BlockMatrix& rho) {
  BlockMatrix r;
  for (std::size_t k = 0; k < u.blocks.size(); ++k) {
    auto m = u.blocks[k] * rho.blocks[k] * u.blocks[k].adjoint();
    m.hermitize();
    r.blocks.push_back(std::move(m));
  }
  return r;
}

BlockMatrix block_level_projector(const BlockEigen& e, double level, double tol) {
  BlockMatrix r;
  for (const auto& b : e.blocks)
    r.blocks.push_back(hermitian_matrix_function(b, [&](double x) { return cplx(std::abs(x - level) <= tol ? 1.0 : 0.0, 0.0); }));
  return r;
}

}  // namespace altxy
