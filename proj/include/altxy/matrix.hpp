#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace altxy {

using cplx = std::complex<double>;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<double>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  const std::vector<cplx>& entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double max_abs() const;
  bool is_hermitian(double tol = 1e-12) const;
  // Symmetrizes (M + M^dagger)/2 in place.
  void hermitize();

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// Tr(A B) without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> apply(const ComplexMatrix& a, const std::vector<cplx>& v);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

// Cyclic Jacobi up to dimension 16, LAPACK zheevd above.
HermitianEigen hermitian_eig(const ComplexMatrix& m);
HermitianEigen jacobi_eig(const ComplexMatrix& m, int max_sweeps = 100);

// V f(D) V^dagger.
ComplexMatrix hermitian_matrix_function(const ComplexMatrix& m,
                                        const std::function<cplx(double)>& f);
ComplexMatrix hermitian_matrix_function(const HermitianEigen& eig,
                                        const std::function<cplx(double)>& f);

// exp(-beta (M - shift)) with shift = lowest eigenvalue, so the largest weight is 1.
struct ShiftedExponential {
  ComplexMatrix value;
  double shift = 0.0;
};
ShiftedExponential shifted_exponential(const ComplexMatrix& m, double beta);
ShiftedExponential shifted_exponential(const HermitianEigen& eig, double beta);

// exp(-i M t)
ComplexMatrix unitary_propagator(const ComplexMatrix& m, double t);
ComplexMatrix unitary_propagator(const HermitianEigen& eig, double t);

enum class Party { Even, Odd };

// Two-qubit partial transpose; Even is the first tensor factor.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Party party);
double trace_norm(const ComplexMatrix& m);
// Sites are numbered from the most significant tensor factor (site 0) down.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int n_sites, const std::vector<int>& keep);

inline constexpr double kEigenvalueFloor = 1e-14;
inline constexpr double kNegativeTolerance = 1e-8;

// Bits. Throws if an eigenvalue is below -1e-8.
double von_neumann_entropy(const ComplexMatrix& rho);
double entropy_from_eigenvalues(const std::vector<double>& p);

std::string to_string(const ComplexMatrix& m, int precision = 6);

}  // namespace altxy
