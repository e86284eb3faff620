#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "ergo/matrix.hpp"
#include "ergo/rng.hpp"
#include "ergo/state.hpp"

namespace testutil {

// absolute-tolerance comparator (doctest's Approx is relative-only)
struct Near {
  double value;
  double tol;
  friend bool operator==(double lhs, const Near& n) { return std::fabs(lhs - n.value) <= n.tol; }
  friend bool operator==(const Near& n, double rhs) { return rhs == n; }
  friend std::ostream& operator<<(std::ostream& os, const Near& n) {
    return os << n.value << " (+/- " << n.tol << ")";
  }
};

inline Near near(double value, double tol) { return {value, tol}; }

// determinant by LU with partial pivoting; independent of the eigensolver
inline ergo::cx determinant(const ergo::ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::vector<ergo::cx>> a(n, std::vector<ergo::cx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  ergo::cx det{1.0, 0.0};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) return {0.0, 0.0};
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const ergo::cx f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

inline ergo::ComplexMatrix random_hermitian(std::size_t n, ergo::Rng& rng) {
  ergo::ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      const ergo::cx v{rng.normal(), rng.normal()};
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

// |psi><psi| from an amplitude list (normalized here)
inline ergo::ComplexMatrix projector(std::vector<ergo::cx> amps) {
  double norm = 0.0;
  for (const auto& a : amps) norm += std::norm(a);
  norm = std::sqrt(norm);
  for (auto& a : amps) a /= norm;
  return ergo::outer(amps, amps);
}

inline ergo::BipartiteState bell_state() {
  // (|01> + |10|)/sqrt(2)
  return {projector({0.0, 1.0, 1.0, 0.0}), 2, 2};
}

inline ergo::BipartiteHamiltonian qubit_fields(double ea, double eb) {
  ergo::ComplexMatrix ha(2), hb(2);
  ha(1, 1) = ea;
  hb(1, 1) = eb;
  return ergo::BipartiteHamiltonian::non_interacting(ha, hb);
}

// random non-interacting Hamiltonian with spectra drawn uniformly in [0, 1]
inline ergo::BipartiteHamiltonian random_local_hamiltonian(std::size_t d_a, std::size_t d_b,
                                                           ergo::Rng& rng) {
  const std::vector<double> sa = ergo::random_local_spectra(d_a, rng);
  const std::vector<double> sb = ergo::random_local_spectra(d_b, rng);
  const ergo::ComplexMatrix ua = ergo::random_unitary(d_a, rng);
  const ergo::ComplexMatrix ub = ergo::random_unitary(d_b, rng);
  return ergo::BipartiteHamiltonian::non_interacting(
      ergo::symmetrized(ergo::from_eigensystem(sa, ua)),
      ergo::symmetrized(ergo::from_eigensystem(sb, ub)));
}

}  // namespace testutil
