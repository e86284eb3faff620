#include "ergo/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ergo {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diag_cx(const std::vector<cx>& d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("matrix add: dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("matrix sub: dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx scalar) {
  for (auto& x : a_) x *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw DimensionMismatch("matrix mul: dimension mismatch");
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cx aik = a(i, k);
      if (aik == cx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix operator*(cx scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(double scalar, ComplexMatrix m) { return m *= cx{scalar, 0.0}; }
ComplexMatrix operator*(ComplexMatrix m, cx scalar) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, double scalar) { return m *= cx{scalar, 0.0}; }

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

cx trace(const ComplexMatrix& m) {
  cx t{0.0, 0.0};
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw DimensionMismatch("trace product: dimension mismatch");
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t += (a(i, k) * b(k, i)).real();
  return t;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s += std::norm(x);
  return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("frobenius distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

double max_abs(const ComplexMatrix& m) {
  double v = 0.0;
  for (const auto& x : m.data()) v = std::max(v, std::abs(x));
  return v;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      v = std::max(v, std::abs(m(i, j) - std::conj(m(j, i))));
  return v;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return hermiticity_defect(m) <= tol;
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  ComplexMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix c(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t ip = 0; ip < na; ++ip) {
      const cx aii = a(i, ip);
      if (aii == cx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t jp = 0; jp < nb; ++jp)
          c(i * nb + j, ip * nb + jp) = aii * b(j, jp);
    }
  return c;
}

ComplexMatrix outer(const std::vector<cx>& u, const std::vector<cx>& v) {
  if (u.size() != v.size()) throw DimensionMismatch("outer: dimension mismatch");
  ComplexMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) s += 2.0 * std::norm(a(i, j));
  return std::sqrt(s);
}

void fix_column_phases(ComplexMatrix& v) {
  const std::size_t n = v.dim();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, j));
      if (mag > 1e-12) {
        const cx phase = std::conj(v(i, j)) / mag;
        for (std::size_t k = 0; k < n; ++k) v(k, j) *= phase;
        break;
      }
    }
  }
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw DimensionMismatch("hermitian_eig: empty matrix");
  if (n > kMaxDim) throw DimensionTooLarge("hermitian_eig: dim " + std::to_string(n) + " > 64");
  if (hermiticity_defect(m) > kHermTol) throw NotHermitian("hermitian_eig: input not Hermitian");

  ComplexMatrix a = symmetrized(m);
  ComplexMatrix v = ComplexMatrix::identity(n);

  bool converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kJacobiOffTol) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cx phase = apq / mag;
        const cx cphase = std::conj(phase);

        // A <- A U with U the plane rotation on (p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const cx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c - akq * s * cphase;
          a(k, q) = akp * s * phase + akq * c;
        }
        // A <- U† A
        for (std::size_t k = 0; k < n; ++k) {
          const cx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * cphase * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // V <- V U
        for (std::size_t k = 0; k < n; ++k) {
          const cx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c - vkq * s * cphase;
          v(k, q) = vkp * s * phase + vkq * c;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm(a) >= kJacobiOffTol)
    throw NoConvergence("hermitian_eig: Jacobi sweep cap exceeded");

  fix_column_phases(v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

MatrixLog matrix_log_on_support(const ComplexMatrix& m) {
  const HermitianEig eig = hermitian_eig(m);
  if (eig.eigenvalues.front() < -kPsdTol)
    throw NegativeEigenvalue("matrix_log_on_support: eigenvalue " +
                             std::to_string(eig.eigenvalues.front()) + " < -1e-12");
  const std::size_t n = m.dim();
  std::vector<double> lg(n, 0.0), proj(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.eigenvalues[k] > kLogCutoff) {
      lg[k] = std::log(eig.eigenvalues[k]);
      proj[k] = 1.0;
    }
  }
  return MatrixLog{from_eigensystem(lg, eig.eigenvectors),
                   from_eigensystem(proj, eig.eigenvectors)};
}

ComplexMatrix from_eigensystem(const std::vector<double>& values, const ComplexMatrix& vectors) {
  const std::size_t n = vectors.dim();
  if (values.size() != n) throw DimensionMismatch("from_eigensystem: dimension mismatch");
  ComplexMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cx vik = vectors(i, k) * values[k];
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(vectors(j, k));
    }
  }
  return r;
}

std::vector<double> descending(std::vector<double> v) {
  std::stable_sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

std::vector<double> ascending(std::vector<double> v) {
  std::stable_sort(v.begin(), v.end());
  return v;
}

bool spectrum_degenerate(const std::vector<double>& ascending_values, double gap_tol) {
  for (std::size_t k = 0; k + 1 < ascending_values.size(); ++k)
    if (ascending_values[k + 1] - ascending_values[k] < gap_tol) return true;
  return false;
}

}  // namespace ergo
