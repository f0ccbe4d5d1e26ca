#include "altxy/matrix.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

namespace altxy {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("ComplexMatrix: entry count mismatch");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

void ComplexMatrix::hermitize() {
  for (std::size_t i = 0; i < rows_; ++i) {
    (*this)(i, i) = (*this)(i, i).real();
    for (std::size_t j = i + 1; j < cols_; ++j) {
      cplx v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      (*this)(i, j) = v;
      (*this)(j, i) = std::conj(v);
    }
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix add: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sub: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix r(a.rows(), b.cols());
  const std::size_t n = a.rows(), m = a.cols(), p = b.cols();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < p; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("trace_product: shape mismatch");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

std::vector<cplx> apply(const ComplexMatrix& a, const std::vector<cplx>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("apply: shape mismatch");
  std::vector<cplx> r(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a(i, k) * v[k];
  return r;
}

namespace {

void check_hermitian(const ComplexMatrix& m, const char* who) {
  if (!m.square()) throw std::invalid_argument(std::string(who) + ": matrix not square");
  double scale = std::max(1.0, m.max_abs());
  if (!m.is_hermitian(1e-12 * scale)) throw std::invalid_argument(std::string(who) + ": matrix not Hermitian");
}

void sort_eigen(HermitianEigen& e) {
  const std::size_t n = e.values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return e.values[a] < e.values[b]; });
  HermitianEigen s;
  s.values.resize(n);
  s.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    s.values[k] = e.values[idx[k]];
    for (std::size_t i = 0; i < n; ++i) s.vectors(i, k) = e.vectors(i, idx[k]);
  }
  e = std::move(s);
}

HermitianEigen lapack_eig(const ComplexMatrix& m) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  std::vector<lapack_complex_double> a(m.rows() * m.cols());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = m.data()[k];
  std::vector<double> w(m.rows());
  lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', n, a.data(), n, w.data());
  if (info != 0) throw NumericalError("zheevd failed with info " + std::to_string(info));
  HermitianEigen e;
  e.values = std::move(w);
  e.vectors = ComplexMatrix(m.rows(), m.cols());
  for (std::size_t k = 0; k < a.size(); ++k) e.vectors.data()[k] = a[k];
  return e;
}

}  // namespace

HermitianEigen jacobi_eig(const ComplexMatrix& m, int max_sweeps) {
  check_hermitian(m, "jacobi_eig");
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  a.hermitize();
  ComplexMatrix v = ComplexMatrix::identity(n);
  double norm2 = 0.0;
  for (const auto& z : a.entries()) norm2 += std::norm(z);
  const double eps = std::numeric_limits<double>::epsilon();
  bool converged = n <= 1;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= eps * eps * norm2 || off == 0.0) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        // skip rotations that cannot change the diagonal in floating point
        if (sweep > 3 && apq < eps * 1e-2 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const cplx phase = a(p, q) / apq;  // e^{i alpha}
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        const cplx ph_c = std::conj(phase);
        // R = [[c, s], [-s e^{-i alpha}, c e^{-i alpha}]] on (p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const cplx x = a(k, p), y = a(k, q);
          a(k, p) = c * x - s * ph_c * y;
          a(k, q) = s * x + c * ph_c * y;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx x = a(p, k), y = a(q, k);
          a(p, k) = c * x - s * phase * y;
          a(q, k) = s * x + c * phase * y;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx x = v(k, p), y = v(k, q);
          v(k, p) = c * x - s * ph_c * y;
          v(k, q) = s * x + c * ph_c * y;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off > 1e-20 * std::max(norm2, 1.0)) throw NumericalError("jacobi_eig: no convergence");
  }
  HermitianEigen e;
  e.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.values[i] = a(i, i).real();
  e.vectors = std::move(v);
  sort_eigen(e);
  return e;
}

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() <= 16) return jacobi_eig(m);
  check_hermitian(m, "hermitian_eig");
  return lapack_eig(m);
}

ComplexMatrix hermitian_matrix_function(const HermitianEigen& eig, const std::function<cplx(double)>& f) {
  const std::size_t n = eig.values.size();
  std::vector<cplx> fv(n);
  for (std::size_t k = 0; k < n; ++k) {
    fv[k] = f(eig.values[k]);
    if (!std::isfinite(fv[k].real()) || !std::isfinite(fv[k].imag()))
      throw std::domain_error("hermitian_matrix_function: f undefined at eigenvalue " + std::to_string(eig.values[k]));
  }
  ComplexMatrix r(n, n);
  const ComplexMatrix& v = eig.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    if (fv[k] == cplx{0.0, 0.0}) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = v(i, k) * fv[k];
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(v(j, k));
    }
  }
  return r;
}

ComplexMatrix hermitian_matrix_function(const ComplexMatrix& m, const std::function<cplx(double)>& f) {
  return hermitian_matrix_function(hermitian_eig(m), f);
}

ShiftedExponential shifted_exponential(const HermitianEigen& eig, double beta) {
  ShiftedExponential r;
  r.shift = eig.values.empty() ? 0.0 : eig.values.front();
  const double s = r.shift;
  r.value = hermitian_matrix_function(eig, [&](double x) { return cplx(std::exp(-beta * (x - s)), 0.0); });
  r.value.hermitize();
  return r;
}

ShiftedExponential shifted_exponential(const ComplexMatrix& m, double beta) {
  return shifted_exponential(hermitian_eig(m), beta);
}

ComplexMatrix unitary_propagator(const HermitianEigen& eig, double t) {
  return hermitian_matrix_function(eig, [&](double x) { return std::polar(1.0, -x * t); });
}

ComplexMatrix unitary_propagator(const ComplexMatrix& m, double t) { return unitary_propagator(hermitian_eig(m), t); }

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Party party) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("partial_transpose: expected a 4x4 matrix");
  ComplexMatrix r(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          // element <a b| rho |c d>
          const cplx v = rho(2 * a + b, 2 * c + d);
          if (party == Party::Even)
            r(2 * c + b, 2 * a + d) = v;
          else
            r(2 * a + d, 2 * c + b) = v;
        }
  return r;
}

double trace_norm(const ComplexMatrix& m) {
  auto e = hermitian_eig(m);
  double s = 0.0;
  for (double x : e.values) s += std::abs(x);
  return s;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int n_sites, const std::vector<int>& keep) {
  if (n_sites < 1 || n_sites > 22) throw std::invalid_argument("partial_trace: site count out of range");
  const std::size_t dim = std::size_t{1} << n_sites;
  if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("partial_trace: dimension mismatch");
  std::vector<bool> kept(n_sites, false);
  for (int s : keep) {
    if (s < 0 || s >= n_sites || kept[s]) throw std::invalid_argument("partial_trace: bad keep list");
    kept[s] = true;
  }
  const int nk = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int s = 0; s < n_sites; ++s)
    if (!kept[s]) traced.push_back(s);
  auto bit = [&](int site) { return n_sites - 1 - site; };
  const std::size_t kd = std::size_t{1} << nk, td = std::size_t{1} << traced.size();
  auto compose = [&](std::size_t kidx, std::size_t tidx) {
    std::size_t full = 0;
    for (int k = 0; k < nk; ++k)
      if ((kidx >> (nk - 1 - k)) & 1u) full |= std::size_t{1} << bit(keep[k]);
    for (std::size_t k = 0; k < traced.size(); ++k)
      if ((tidx >> k) & 1u) full |= std::size_t{1} << bit(traced[k]);
    return full;
  };
  ComplexMatrix r(kd, kd);
  for (std::size_t i = 0; i < kd; ++i)
    for (std::size_t j = 0; j < kd; ++j) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < td; ++t) s += rho(compose(i, t), compose(j, t));
      r(i, j) = s;
    }
  return r;
}

double entropy_from_eigenvalues(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) {
    if (x < -kNegativeTolerance) throw NumericalError("von_neumann_entropy: negative eigenvalue " + std::to_string(x));
    if (x > kEigenvalueFloor) s -= x * std::log2(x);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const ComplexMatrix& rho) { return entropy_from_eigenvalues(hermitian_eig(rho).values); }

std::string to_string(const ComplexMatrix& m, int precision) {
  std::ostringstream os;
  os.precision(precision);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << m(i, j) << (j + 1 < m.cols() ? " " : "");
    os << '\n';
  }
  return os.str();
}

}  // namespace altxy
