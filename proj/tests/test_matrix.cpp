#include <doctest.h>

#include <cmath>

#include "ergo/matrix.hpp"
#include "ergo/rng.hpp"
#include "helpers.hpp"

using namespace ergo;

TEST_CASE("identity eigendecomposition") {
  const HermitianEig eig = hermitian_eig(ComplexMatrix::identity(2));
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  // columns orthonormal
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      cx dot{0.0, 0.0};
      for (std::size_t k = 0; k < 2; ++k)
        dot += std::conj(eig.eigenvectors(k, i)) * eig.eigenvectors(k, j);
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("diagonal matrix sorts ascending") {
  const HermitianEig eig = hermitian_eig(ComplexMatrix::diag({3.0, 1.0}));
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(3.0));
}

TEST_CASE("pauli-x analytic eigensystem") {
  ComplexMatrix sx(2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  const HermitianEig eig = hermitian_eig(sx);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-13));
  const double isq = 1.0 / std::sqrt(2.0);
  // phase convention: first component real positive
  CHECK(std::abs(eig.eigenvectors(0, 0) - isq) < 1e-10);
  CHECK(std::abs(eig.eigenvectors(1, 0) + isq) < 1e-10);
  CHECK(std::abs(eig.eigenvectors(0, 1) - isq) < 1e-10);
  CHECK(std::abs(eig.eigenvectors(1, 1) - isq) < 1e-10);
}

TEST_CASE("not hermitian rejected") {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("reconstruction, trace and determinant on random hermitian") {
  Rng rng(99);
  for (const std::size_t n : {2u, 3u, 4u, 6u, 16u}) {
    const ComplexMatrix m = testutil::random_hermitian(n, rng);
    const HermitianEig eig = hermitian_eig(m);
    CHECK(frobenius_distance(from_eigensystem(eig.eigenvalues, eig.eigenvectors), m) < 1e-9);

    double sum = 0.0;
    for (const double v : eig.eigenvalues) sum += v;
    CHECK(sum == testutil::near(trace(m).real(), 1e-10));

    // V†V = 1
    const ComplexMatrix vhv = adjoint(eig.eigenvectors) * eig.eigenvectors;
    CHECK(frobenius_distance(vhv, ComplexMatrix::identity(n)) < 1e-10);

    // eigenvalue equation per column
    for (std::size_t k = 0; k < n; ++k) {
      double defect = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cx mv{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) mv += m(i, j) * eig.eigenvectors(j, k);
        defect = std::max(defect, std::abs(mv - eig.eigenvalues[k] * eig.eigenvectors(i, k)));
      }
      CHECK(defect < 1e-10);
    }

    if (n <= 6) {
      double prod = 1.0;
      for (const double v : eig.eigenvalues) prod *= v;
      CHECK(prod ==
            testutil::near(testutil::determinant(m).real(), 1e-8));
    }
  }
}

TEST_CASE("kron conventions") {
  CHECK(frobenius_distance(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                           ComplexMatrix::identity(4)) < 1e-15);

  const ComplexMatrix d = kron(ComplexMatrix::diag({2.0, 3.0}), ComplexMatrix::diag({5.0, 7.0}));
  CHECK(d(0, 0).real() == doctest::Approx(10.0));
  CHECK(d(1, 1).real() == doctest::Approx(14.0));
  CHECK(d(2, 2).real() == doctest::Approx(15.0));
  CHECK(d(3, 3).real() == doctest::Approx(21.0));

  // |0><0| ⊗ |1><1| sits at composite index 0*2+1 = 1
  ComplexMatrix p0(2), p1(2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const ComplexMatrix k = kron(p0, p1);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(k(i, j) - ((i == 1 && j == 1) ? 1.0 : 0.0)) < 1e-15);
}

TEST_CASE("kron associativity") {
  Rng rng(5);
  const ComplexMatrix a = testutil::random_hermitian(2, rng);
  const ComplexMatrix b = testutil::random_hermitian(3, rng);
  const ComplexMatrix c = testutil::random_hermitian(2, rng);
  CHECK(frobenius_distance(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
}

TEST_CASE("matrix log on support") {
  const MatrixLog l1 = matrix_log_on_support(ComplexMatrix::identity(2));
  CHECK(frobenius_norm(l1.log) < 1e-14);

  const MatrixLog l2 = matrix_log_on_support(ComplexMatrix::diag({std::exp(1.0), 1.0}));
  CHECK(l2.log(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(l2.log(1, 1)) < 1e-13);

  const MatrixLog l3 = matrix_log_on_support(ComplexMatrix::diag({0.5, 0.5}));
  CHECK(l3.log(0, 0).real() == doctest::Approx(-0.69314718055994531).epsilon(1e-12));
  CHECK(l3.log(1, 1).real() == doctest::Approx(-0.69314718055994531).epsilon(1e-12));

  // rank-deficient support projector
  const MatrixLog l4 = matrix_log_on_support(ComplexMatrix::diag({1.0, 0.0}));
  CHECK(l4.support(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(l4.support(1, 1)) < 1e-14);

  CHECK_THROWS_AS(matrix_log_on_support(ComplexMatrix::diag({1.0, -0.5})), NegativeEigenvalue);
}

TEST_CASE("degenerate eigenvalues keep orthonormal vectors") {
  // projector with a two-fold degenerate zero eigenvalue
  ComplexMatrix m = testutil::projector({1.0, cx{0.0, 1.0}, -1.0});
  const HermitianEig eig = hermitian_eig(m);
  const ComplexMatrix vhv = adjoint(eig.eigenvectors) * eig.eigenvectors;
  CHECK(frobenius_distance(vhv, ComplexMatrix::identity(3)) < 1e-10);
  CHECK(eig.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dimension cap enforced") {
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::identity(65)), DimensionTooLarge);
}

TEST_CASE("rng reproducibility") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(43);
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs = differs || (a.next_u64() != c.next_u64());
  CHECK(differs);
}
