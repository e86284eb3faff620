#include <doctest.h>

#include <cmath>

#include "ergo/closest.hpp"
#include "ergo/contrib.hpp"
#include "helpers.hpp"

using namespace ergo;

TEST_CASE("constraint curve formula values") {
  CHECK(qubitpair::constraint_curve_f(0.0, 0.0, 0.7, 1.0) == doctest::Approx(0.0));
  CHECK(qubitpair::constraint_curve_f(0.5, 0.5, 0.75, 1.0) == doctest::Approx(0.125));
  // root set non-empty at mu = 0.7, R = 1: sign change along a for some b
  bool found = false;
  for (int ib = 0; ib <= 2000 && !found; ++ib) {
    const double b = ib / 2000.0;
    double prev = qubitpair::constraint_curve_f(0.0, b, 0.7, 1.0);
    for (int ia = 1; ia <= 64; ++ia) {
      const double f = qubitpair::constraint_curve_f(ia / 64.0, b, 0.7, 1.0);
      if (prev * f < 0.0 || f == 0.0) {
        found = true;
        break;
      }
      prev = f;
    }
  }
  CHECK(found);
}

TEST_CASE("classical input with non-degenerate structure is its own eta") {
  ClassicalState chi;
  chi.d_a = 2;
  chi.d_b = 2;
  chi.p = {0.4, 0.3, 0.2, 0.1};
  chi.bases = computational_bases(2, 2);
  const BipartiteHamiltonian h = testutil::qubit_fields(0.8, 0.5);
  const ConstrainedClassicalResult r = constrained_closest_classical(chi.to_state(), h);
  CHECK(r.entropy ==
        testutil::near(shannon_entropy(chi.p), 1e-9));
  CHECK(std::abs(r.energy_residual) <= 1e-8);
  CHECK(frobenius_distance(r.eta.to_matrix(), chi.to_matrix()) < 1e-5);
}

TEST_CASE("pure states: eta is the schmidt dephasing") {
  Rng rng(101);
  for (const auto& [da, db] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
    const BipartiteState psi = random_pure_state(da, db, rng);
    const BipartiteHamiltonian h = testutil::random_local_hamiltonian(da, db, rng);
    const ConstrainedClassicalResult r = constrained_closest_classical(psi, h);
    const ClassicalState schmidt = dephase_by_product_basis(psi, schmidt_decompose(psi).bases);
    CHECK(frobenius_distance(r.eta.to_matrix(), schmidt.to_matrix()) < 1e-6);
    CHECK(std::abs(r.energy_residual) <= 1e-8);
  }
}

TEST_CASE("model family below the critical point: eta is the energy dephasing") {
  for (const double mu : {0.3, 0.4}) {
    for (const double R : {1.0, 2.0}) {
      const BipartiteState s = qubitpair::model_state(mu);
      const BipartiteHamiltonian h = qubitpair::model_hamiltonian(R, 1.0);
      const ConstrainedClassicalResult r = constrained_closest_classical(s, h);
      const ClassicalState delta_rho = dephase_by_product_basis(s, computational_bases(2, 2));
      CHECK(frobenius_distance(r.eta.to_matrix(), delta_rho.to_matrix()) < 1e-6);
    }
  }
  // family path agrees
  const ConstrainedClassicalResult fam = qubitpair::constrained_eta(0.4, 2.0, 1.0);
  CHECK(fam.origin == "energy-basis");
}

TEST_CASE("model family above the critical point leaves the energy dephasing") {
  // mu = 0.7 > mu_c(1) ~ 0.57: the curve branch wins
  const ConstrainedClassicalResult r = qubitpair::constrained_eta(0.7, 1.0, 1.0);
  const ClassicalState delta_rho =
      dephase_by_product_basis(qubitpair::model_state(0.7), computational_bases(2, 2));
  CHECK(r.entropy < shannon_entropy(delta_rho.p) - 1e-4);
  CHECK(frobenius_distance(r.eta.to_matrix(), delta_rho.to_matrix()) > 0.1);
  CHECK(std::abs(r.energy_residual) <= 1e-8);

  // at mu = 0.52 < mu_c the energy dephasing still wins
  const ConstrainedClassicalResult r2 = qubitpair::constrained_eta(0.52, 1.0, 1.0);
  const ClassicalState delta_rho2 =
      dephase_by_product_basis(qubitpair::model_state(0.52), computational_bases(2, 2));
  CHECK(frobenius_distance(r2.eta.to_matrix(), delta_rho2.to_matrix()) < 1e-6);
}

TEST_CASE("curve path and penalty path agree on the family") {
  for (const double mu : {0.3, 0.55, 0.7, 0.85}) {
    const BipartiteState s = qubitpair::model_state(mu);
    const BipartiteHamiltonian h = qubitpair::model_hamiltonian(1.0, 1.0);

    EtaSearchOptions penalty_only;
    penalty_only.use_curve = false;
    const ConstrainedClassicalResult generic = constrained_closest_classical(s, h, penalty_only);
    const ConstrainedClassicalResult family = qubitpair::constrained_eta(mu, 1.0, 1.0);
    CHECK(generic.entropy ==
          testutil::near(family.entropy, 1e-5));
  }
}

TEST_CASE("eta entropy dominates the unconstrained closest classical state") {
  Rng rng(103);
  for (int trial = 0; trial < 5; ++trial) {
    const BipartiteState s = random_state(2, 2, 4, rng);
    const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
    const DiscordResult chi = discord_and_closest_classical(s);
    EtaSearchOptions opts;
    opts.seed_candidates.push_back(chi.chi);
    const ConstrainedClassicalResult eta = constrained_closest_classical(s, h, opts);
    CHECK(eta.entropy >= shannon_entropy(chi.chi.p) - 1e-6);
    // chi' is always feasible for non-interacting H
    const ClassicalState chi_prime = marginal_eigenbasis_dephasing(s);
    CHECK(eta.entropy <= shannon_entropy(chi_prime.p) + 1e-9);
  }
}

TEST_CASE("multistart monotonicity of the best-found entropy") {
  Rng rng(107);
  const BipartiteState s = random_state(2, 2, 4, rng);
  const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
  double prev = 1e300;
  for (const int starts : {4, 16, 64}) {
    EtaSearchOptions opts;
    opts.multistarts = starts;
    opts.use_structured = false;
    opts.use_curve = false;
    const ConstrainedClassicalResult r = constrained_closest_classical(s, h, opts);
    CHECK(r.entropy <= prev + 1e-12);
    prev = r.entropy;
  }
}

TEST_CASE("infeasible constraint for an interacting hamiltonian") {
  // rho = top eigenstate of an interacting H whose top eigenvector is
  // entangled: no product dephasing reaches its energy
  ComplexMatrix h(4);
  h(0, 0) = 0.0;
  h(1, 1) = 0.5;
  h(2, 2) = 0.5;
  h(3, 3) = 1.0;
  h(1, 2) = 0.6;
  h(2, 1) = 0.6;
  const HermitianEig eig = hermitian_eig(h);
  std::vector<double> w(4, 0.0);
  w[3] = 1.0;
  const BipartiteState top{from_eigensystem(w, eig.eigenvectors), 2, 2};
  const BipartiteHamiltonian hg = BipartiteHamiltonian::general(h, 2, 2);
  CHECK_THROWS_AS(constrained_closest_classical(top, hg), InfeasibleConstraint);
}

TEST_CASE("horodecki family construction") {
  // p = 0 collapses to |00><00|
  const BipartiteState zero = horodecki_closest_separable({0.0, +1});
  CHECK(zero.rho(0, 0).real() == doctest::Approx(1.0));

  // p = 1/2 weights 9/16, 6/16, 1/16 on |00>, psi±, |11>
  const BipartiteState sep = horodecki_closest_separable({0.5, +1});
  CHECK(sep.rho(0, 0).real() == doctest::Approx(9.0 / 16));
  CHECK(sep.rho(1, 1).real() == doctest::Approx(3.0 / 16));
  CHECK(sep.rho(1, 2).real() == doctest::Approx(3.0 / 16));
  CHECK(sep.rho(3, 3).real() == doctest::Approx(1.0 / 16));
  CHECK(trace(sep.rho).real() == doctest::Approx(1.0).epsilon(1e-14));

  // energy match at p = 1/2, eps = 1
  const BipartiteHamiltonian h = testutil::qubit_fields(1.0, 1.0);
  const BipartiteState rho = horodecki_state({0.5, +1});
  CHECK(energy(rho, h) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(energy(sep, h) == doctest::Approx(0.5).epsilon(1e-14));

  // the separable state is separable: PPT in two qubits
  ComplexMatrix pt(4);  // partial transpose on B
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t ip = 0; ip < 2; ++ip)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t jp = 0; jp < 2; ++jp)
          pt(i * 2 + j, ip * 2 + jp) = sep.rho(i * 2 + jp, ip * 2 + j);
  CHECK(hermitian_eig(pt).eigenvalues.front() > -1e-12);

  // validation and detection
  CHECK_THROWS_AS(horodecki_state({1.5, +1}), ValidationError);
  const auto fam = detect_horodecki(horodecki_state({0.37, -1}));
  REQUIRE(fam.has_value());
  CHECK(fam->p == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(fam->sign == -1);
  Rng rng(11);
  CHECK_FALSE(detect_horodecki(random_state(2, 2, 4, rng)).has_value());
}

TEST_CASE("horodecki energy matches across the p grid for any local fields") {
  const BipartiteHamiltonian h = testutil::qubit_fields(0.7, 1.3);
  for (int k = 0; k <= 20; ++k) {
    const double p = k * 0.05;
    for (const int sign : {+1, -1}) {
      const HorodeckiFamily fam{p, sign};
      CHECK(std::abs(energy(horodecki_state(fam), h) -
                     energy(horodecki_closest_separable(fam), h)) < 1e-12);
    }
  }
}

TEST_CASE("dimension cap") {
  const BipartiteState big{ComplexMatrix::identity(10) * cx{0.1, 0.0}, 2, 5};
  ComplexMatrix h5(5);
  const BipartiteHamiltonian h =
      BipartiteHamiltonian::non_interacting(ComplexMatrix(2), h5);
  CHECK_THROWS_AS(constrained_closest_classical(big, h), DimensionTooLarge);
}
