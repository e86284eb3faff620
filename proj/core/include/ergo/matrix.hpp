#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ergo/errors.hpp"

namespace ergo {

using cx = std::complex<double>;

inline constexpr std::size_t kMaxDim = 64;        // desk scale
inline constexpr double kHermTol = 1e-12;         // elementwise |M - M†|
inline constexpr double kJacobiOffTol = 1e-13;    // off-diagonal Frobenius norm
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kLogCutoff = 1e-14;       // kernel threshold for ln
inline constexpr double kPsdTol = 1e-12;          // allowed eigenvalue dust

// Dense row-major square complex matrix. Everything here stays at dim <= 64,
// so no sparsity and no allocation tricks.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diag(const std::vector<double>& d);
  static ComplexMatrix diag_cx(const std::vector<cx>& d);

  std::size_t dim() const { return dim_; }
  cx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
  const std::vector<cx>& data() const { return a_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cx scalar);

 private:
  std::size_t dim_ = 0;
  std::vector<cx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cx scalar, ComplexMatrix m);
ComplexMatrix operator*(double scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cx scalar);
ComplexMatrix operator*(ComplexMatrix m, double scalar);

ComplexMatrix adjoint(const ComplexMatrix& m);
cx trace(const ComplexMatrix& m);
double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b);  // Re tr(a b)
double frobenius_norm(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);  // max_ij |M_ij - conj(M_ji)|
bool is_hermitian(const ComplexMatrix& m, double tol = kHermTol);
ComplexMatrix symmetrized(const ComplexMatrix& m);  // (M + M†)/2

// Kronecker product; composite index k = i * dim_b + j.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// outer product of column vectors |u><v|
ComplexMatrix outer(const std::vector<cx>& u, const std::vector<cx>& v);

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, phase-fixed
};

// Cyclic complex Jacobi diagonalization. Deterministic: eigenvalues ascending
// by stable sort, first nonzero component of each eigenvector made real
// positive. Throws NotHermitian / DimensionTooLarge / NoConvergence.
HermitianEig hermitian_eig(const ComplexMatrix& m);

struct MatrixLog {
  ComplexMatrix log;      // V diag(ln lambda_k on support, 0 on kernel) V†
  ComplexMatrix support;  // projector onto eigenvalues > kLogCutoff
};

// Logarithm restricted to the support of a PSD Hermitian matrix.
// Throws NegativeEigenvalue when lambda_min < -kPsdTol.
MatrixLog matrix_log_on_support(const ComplexMatrix& m);

// V f(diag) V† for an already-diagonalized Hermitian matrix
ComplexMatrix from_eigensystem(const std::vector<double>& values, const ComplexMatrix& vectors);

std::vector<double> descending(std::vector<double> v);
std::vector<double> ascending(std::vector<double> v);

// any eigenvalue gap below the tolerance (basis choices become conventional)
bool spectrum_degenerate(const std::vector<double>& ascending_values, double gap_tol = 1e-9);

}  // namespace ergo
