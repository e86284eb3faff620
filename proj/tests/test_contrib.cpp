#include <doctest.h>

#include <cmath>

#include "ergo/contrib.hpp"
#include "helpers.hpp"

using namespace ergo;

TEST_CASE("delta_T vanishes on product states and equals the ergotropy on bell pairs") {
  const BipartiteHamiltonian h = testutil::qubit_fields(1.0, 1.0);
  Rng rng(201);
  const ComplexMatrix a = random_state(2, 1, 2, rng).rho;
  const ComplexMatrix b = random_state(2, 1, 2, rng).rho;
  CHECK(std::abs(delta_total({kron(a, b), 2, 2}, h)) < 1e-10);

  const BipartiteState bell = testutil::bell_state();
  CHECK(delta_total(bell, h) == doctest::Approx(ergotropy(bell.rho, h.total())).epsilon(1e-12));

  Rng rng2(7);
  const BipartiteHamiltonian hg =
      BipartiteHamiltonian::general(testutil::random_hermitian(4, rng2), 2, 2);
  CHECK_THROWS_AS(delta_total(bell, hg), InteractingHamiltonian);
}

TEST_CASE("two-qubit delta_T is non-negative") {
  // delta_T = delta' + delta_C(chi'), and both pieces are non-negative at
  // d_A = d_B = 2
  Rng rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const BipartiteState s = random_state(2, 2, 4, rng);
    const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
    CHECK(delta_total(s, h) >= -1e-9);
  }
}

TEST_CASE("delta_T bounds bracket") {
  Rng rng(203);
  const BipartiteState s = random_state(2, 2, 4, rng);
  const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
  const double dt = delta_total(s, h);
  const double span = h.spectral_span();
  for (const double beta : {0.5 / span, 1.0 / span, 2.0 / span}) {
    const BoundPair bp = delta_total_bounds(s, h, beta);
    CHECK_FALSE(bp.infinite_term);
    CHECK(bp.lower - 1e-7 <= dt);
    CHECK(dt <= bp.upper + 1e-7);
  }

  // product state: T = 0, bounds straddle zero
  const ComplexMatrix a = random_state(2, 1, 2, rng).rho;
  const ComplexMatrix b = random_state(2, 1, 2, rng).rho;
  const BoundPair bp0 = delta_total_bounds({kron(a, b), 2, 2}, h, 1.0);
  CHECK(bp0.lower <= 1e-9);
  CHECK(bp0.upper >= -1e-9);
}

TEST_CASE("thermal passive state turns the lower bound into T/beta") {
  // rho built so that P_rho = rho_beta: rotate a Gibbs spectrum coherently
  Rng rng(205);
  const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
  const double beta = 1.4;
  const ComplexMatrix gibbs = thermal_state(h.total(), beta);
  const ComplexMatrix u = random_unitary(4, rng);
  const BipartiteState s{symmetrized(u * gibbs * adjoint(u)), 2, 2};
  REQUIRE(fit_thermal_beta(s.rho, h.total()).has_value());

  const double dt = delta_total(s, h);
  const double t = mutual_information(s);
  CHECK(dt >= t / beta - 1e-7);
  const BoundPair bp = delta_total_bounds(s, h, beta);
  CHECK(bp.lower == testutil::near(t / beta, 1e-8));
}

TEST_CASE("delta against the model family closed forms") {
  for (const double mu : {0.1, 0.25, 0.4, 0.5}) {
    for (const double R : {0.5, 2.0}) {
      const BipartiteState s = qubitpair::model_state(mu);
      const BipartiteHamiltonian h = qubitpair::model_hamiltonian(R, 1.0);
      const ConstrainedClassicalResult eta = constrained_closest_classical(s, h);
      CHECK(delta_discord(s, h, eta) ==
            testutil::near(qubitpair::delta_exact_low_mu(mu, R, 1.0), 1e-5));
    }
  }
  // R = 1 degeneracy kills the contribution while discord survives
  const BipartiteState s = qubitpair::model_state(0.3);
  const BipartiteHamiltonian h = qubitpair::model_hamiltonian(1.0, 1.0);
  const ConstrainedClassicalResult eta = constrained_closest_classical(s, h);
  CHECK(std::abs(delta_discord(s, h, eta)) <= 1e-9);
  CHECK(discord_and_closest_classical(s).discord > 0.9 * 0.3 * std::log(2.0));
}

TEST_CASE("pure-state delta closed form") {
  const BipartiteHamiltonian h = testutil::qubit_fields(1.0, 1.0);
  // bell state with spectrum (0, eps, eps, 2eps): delta = eps/2
  CHECK(delta_discord_pure(testutil::bell_state(), h) == doctest::Approx(0.5).epsilon(1e-10));

  // sqrt(0.8)|00> + sqrt(0.2)|11>: 0.2 eps
  const BipartiteState tilted{
      testutil::projector({std::sqrt(0.8), 0.0, 0.0, std::sqrt(0.2)}), 2, 2};
  CHECK(delta_discord_pure(tilted, h) == doctest::Approx(0.2).epsilon(1e-9));

  // product pure state: zero
  const BipartiteState prod{
      kron(testutil::projector({1.0, 1.0}), testutil::projector({1.0, -2.0})), 2, 2};
  CHECK(delta_discord_pure(prod, h) == testutil::near(0.0, 1e-10));

  CHECK_THROWS_AS(
      delta_discord_pure(BipartiteState{0.25 * ComplexMatrix::identity(4), 2, 2}, h), NotPure);
}

TEST_CASE("pure-state delta agrees with the constrained optimizer") {
  Rng rng(207);
  for (const auto& [da, db] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
    for (int trial = 0; trial < 5; ++trial) {
      const BipartiteState psi = random_pure_state(da, db, rng);
      const BipartiteHamiltonian h = testutil::random_local_hamiltonian(da, db, rng);
      const ConstrainedClassicalResult eta = constrained_closest_classical(psi, h);
      CHECK(delta_discord(psi, h, eta) ==
            testutil::near(delta_discord_pure(psi, h), 1e-4));
    }
  }
}

TEST_CASE("classical contribution: 2x2 theorem cases") {
  // sorted table gives exactly zero
  const std::vector<double> sorted_p = {0.4, 0.3, 0.2, 0.1};
  CHECK(delta_classical_spectral(sorted_p, {0.0, 0.3}, {0.0, 0.9}) ==
        testutil::near(0.0, 1e-15));

  // random 2x2 classical states stay non-negative
  Rng rng(209);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::vector<double> p = rng.dirichlet_flat(4);
    const std::vector<double> ea = random_local_spectra(2, rng);
    const std::vector<double> eb = random_local_spectra(2, rng);
    CHECK(delta_classical_spectral(p, ea, eb) >= -1e-12);
  }

  // the partial-sum facts behind the theorem
  for (int trial = 0; trial < 2000; ++trial) {
    const std::vector<double> p = rng.dirichlet_flat(4);
    const std::vector<double> x = classical_partial_sums(p, 2, 2);
    CHECK(x[1] >= -1e-10);               // r1 + r2 - rt1 - rt2
    CHECK(x[0] + x[2] >= -1e-10);        // r1 - r4 - rt1 + rt4 (uses sum = 1)
  }
}

TEST_CASE("classical contribution matches the matrix route") {
  Rng rng(211);
  for (int trial = 0; trial < 10; ++trial) {
    const ClassicalState chi = random_classical(2, 3, rng);
    const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 3, rng);
    const double spectral = delta_classical(chi, h);
    const BipartiteState cs = chi.to_state();
    const double matrix_route = ergotropy(cs.rho, h.total()) -
                                ergotropy(product_of_marginals(cs).rho, h.total());
    CHECK(spectral == testutil::near(matrix_route, 1e-10));
  }
}

TEST_CASE("2x3 counterexample from the joint table") {
  const std::vector<double> p = {0.27, 0.04, 0.23, 0.26, 0.03, 0.17};
  const std::vector<double> x = classical_partial_sums(p, 2, 3);
  CHECK(x[0] == testutil::near(-0.0162, 1e-10));
  CHECK(x[2] == testutil::near(0.014, 1e-10));
  CHECK(x[4] == testutil::near(0.0022, 1e-10));
  CHECK(x[2] + x[4] >= 0.0);
  CHECK(std::abs(x[0] + x[2] + x[4]) < 1e-12);
  // negative contribution when epsA2 + epsB2 > epsB3
  CHECK(delta_classical_spectral(p, {0.0, 0.6}, {0.0, 0.6, 1.0}) ==
        testutil::near(-0.00324, 1e-12));
  // the even partial sums vanish, so the x-form reproduces delta_C
  const std::vector<double> eps = {0.0, 0.6, 0.6, 1.0, 1.2, 1.6};
  const double xform = (eps[1] - eps[0]) * x[0] + (eps[3] - eps[2]) * x[2] +
                       (eps[5] - eps[4]) * x[4];
  CHECK(xform == testutil::near(-0.00324, 1e-12));
}

TEST_CASE("delta_L basics") {
  Rng rng(213);
  // classical input: zero
  const ClassicalState chi = random_classical(2, 2, rng);
  const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
  const ConstrainedClassicalResult eta = constrained_closest_classical(chi.to_state(), h);
  CHECK(std::abs(delta_L(chi.to_state(), h, eta)) < 1e-6);

  // pure states: schmidt dephasing preserves the marginals
  const BipartiteState psi = random_pure_state(2, 2, rng);
  const ConstrainedClassicalResult eta_psi = constrained_closest_classical(psi, h);
  CHECK(std::abs(delta_L(psi, h, eta_psi)) < 1e-6);

  // family state above mu_c: non-negative
  const BipartiteState s = qubitpair::model_state(0.7);
  const BipartiteHamiltonian hf = qubitpair::model_hamiltonian(1.0, 1.0);
  ReportOptions ropts;
  ropts.eta.seed_candidates.push_back(qubitpair::constrained_eta(0.7, 1.0, 1.0).eta);
  const ContributionReport rep = contribution_report(s, hf, ropts);
  CHECK(rep.delta_L_value >= -1e-9);
}

TEST_CASE("delta_E on the horodecki family") {
  const BipartiteHamiltonian h = testutil::qubit_fields(1.0, 1.0);
  for (const int sign : {+1, -1}) {
    CHECK(delta_entanglement({0.5, sign}, h) == doctest::Approx(-0.0625).epsilon(1e-12));
    CHECK(std::abs(delta_entanglement({0.0, sign}, h)) < 1e-12);
    // pure p = 1: delta_E = delta = eps/2 via the pure-state formula
    CHECK(delta_entanglement({1.0, sign}, h) ==
          testutil::near(delta_discord_pure(horodecki_state({1.0, sign}), h), 1e-10));
  }
  Rng rng(5);
  const BipartiteHamiltonian hg =
      BipartiteHamiltonian::general(testutil::random_hermitian(4, rng), 2, 2);
  CHECK_THROWS_AS(delta_entanglement({0.5, +1}, hg), InteractingHamiltonian);
}

TEST_CASE("delta_prime basics and decomposition") {
  Rng rng(215);
  const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);

  const ClassicalState chi = random_classical(2, 2, rng);
  CHECK(std::abs(delta_prime(chi.to_state(), h)) < 1e-9);

  const ComplexMatrix a = random_state(2, 1, 2, rng).rho;
  const ComplexMatrix b = random_state(2, 1, 2, rng).rho;
  CHECK(std::abs(delta_prime({kron(a, b), 2, 2}, h)) < 1e-9);

  for (int trial = 0; trial < 10; ++trial) {
    const BipartiteState s = random_state(2, 2, 4, rng);
    const double dp = delta_prime(s, h);
    CHECK(dp >= -1e-9);
    // delta_T = delta' + delta_C(chi')
    const DisturbanceResult mid = measurement_induced_disturbance(s);
    CHECK(delta_total(s, h) ==
          testutil::near(dp + delta_classical(mid.chi_prime, h), 1e-8));
    // bounds bracket at several betas
    const double span = h.spectral_span();
    for (const double beta : {0.5 / span, 1.0 / span, 2.0 / span}) {
      const BoundPair bp = delta_prime_bounds(s, h, beta);
      CHECK(bp.lower - 1e-7 <= dp);
      CHECK(dp <= bp.upper + 1e-7);
    }
  }
}

TEST_CASE("tilde contributions") {
  Rng rng(217);
  const BipartiteState s = random_state(2, 2, 4, rng);
  const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
  const DiscordResult chi = discord_and_closest_classical(s);

  // non-interacting: tilde_T collapses to delta_T
  const TildeContributions t = tilde_contributions(s, h, chi.chi);
  CHECK(t.tilde_T == testutil::near(delta_total(s, h), 1e-8));
  CHECK(t.tilde_D >= -1e-9);
  // tilde_D = E(P_chi) - E(P_rho)
  const std::vector<double> eps = hermitian_eig(h.total()).eigenvalues;
  const double direct = passive_energy(chi.chi.p, eps) -
                        passive_state(s.rho, h.total()).energy_passive;
  CHECK(t.tilde_D == testutil::near(direct, 1e-9));

  // classical states carry no tilde_D
  const ClassicalState cl = random_classical(2, 2, rng);
  const DiscordResult chi_cl = discord_and_closest_classical(cl.to_state());
  const TildeContributions tc = tilde_contributions(cl.to_state(), h, chi_cl.chi);
  CHECK(std::abs(tc.tilde_D) < 1e-6);

  // horodecki: tilde_E = delta_E
  const BipartiteHamiltonian hq = testutil::qubit_fields(1.0, 1.0);
  const HorodeckiFamily fam{0.5, +1};
  const BipartiteState hs = horodecki_state(fam);
  const TildeContributions th =
      tilde_contributions(hs, hq, discord_and_closest_classical(hs).chi, fam);
  REQUIRE(th.tilde_E.has_value());
  CHECK(*th.tilde_E == doctest::Approx(delta_entanglement(fam, hq)).epsilon(1e-10));
}

TEST_CASE("free energy gap") {
  Rng rng(219);
  const BipartiteHamiltonian h = testutil::qubit_fields(1.0, 1.0);

  const ComplexMatrix a = random_state(2, 1, 2, rng).rho;
  const ComplexMatrix b = random_state(2, 1, 2, rng).rho;
  CHECK(std::abs(free_energy_gap({kron(a, b), 2, 2}, h, 1.0)) < 1e-9);

  CHECK(free_energy_gap(testutil::bell_state(), h, 0.7) > 1e-3);

  for (int trial = 0; trial < 100; ++trial) {
    const BipartiteState s = random_state(2, 2, 4, rng);
    CHECK(free_energy_gap(s, h, 1.0) >= -1e-9);
  }
}

TEST_CASE("abel form of the passive-energy gap") {
  Rng rng(221);
  for (int trial = 0; trial < 20; ++trial) {
    const BipartiteState s = random_state(2, 2, 4, rng);
    const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
    const LocalBasisPair bases{random_unitary(2, rng), random_unitary(2, rng)};
    const ClassicalState eta = dephase_by_product_basis(s, bases);
    const std::vector<double> eps = hermitian_eig(h.total()).eigenvalues;

    const double direct = passive_energy(eta.p, eps) -
                          passive_state(s.rho, h.total()).energy_passive;
    const double abel =
        abel_delta_form(hermitian_eig(s.rho).eigenvalues, eta.p, eps);
    CHECK(abel == testutil::near(direct, 1e-10));
    CHECK(abel >= -1e-10);  // dephasings are unital
  }
}

TEST_CASE("full report on a random state satisfies the ledger of inequalities") {
  Rng rng(223);
  const BipartiteState s = random_state(2, 2, 4, rng);
  const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
  const ContributionReport rep = contribution_report(s, h);

  CHECK(rep.delta >= -1e-9);
  CHECK(rep.delta_L_value >= -1e-9);
  CHECK(rep.delta_prime_value >= -1e-9);
  CHECK(rep.ergotropy_value >= rep.delta - 1e-9);
  CHECK(rep.gap_EG - rep.delta_T >= -1e-9);
  CHECK(std::abs(rep.decomposition_residual) <= 1e-5);
  CHECK(std::abs(rep.prime_decomposition_residual) <= 1e-8);
  CHECK(rep.free_energy_gap_value >= -1e-9);
  CHECK_FALSE(rep.infinite_term);
  CHECK(std::abs(rep.identity_T_residual) <= 1e-7);
  CHECK(std::abs(rep.identity_delta_residual) <= 1e-6);
  CHECK(std::abs(rep.identity_L_residual) <= 1e-6);
  CHECK(std::abs(rep.identity_prime_residual) <= 1e-7);
  CHECK(rep.bounds_T.lower - 1e-7 <= rep.delta_T);
  CHECK(rep.delta_T <= rep.bounds_T.upper + 1e-7);
  CHECK(rep.bounds_delta.lower - 1e-7 <= rep.delta);
  CHECK(rep.delta <= rep.bounds_delta.upper + 1e-7);
  CHECK(rep.bounds_prime.lower - 1e-7 <= rep.delta_prime_value);
  CHECK(rep.delta_prime_value <= rep.bounds_prime.upper + 1e-7);
}

TEST_CASE("local unitary invariance of the contributions") {
  // delta_T, delta' and delta_C flow through covariant closest states, so any
  // local rotation leaves them alone. delta and delta_L go through the
  // energy-constrained eta whose feasible set is tied to H: they are only
  // covariant under local unitaries commuting with H_A and H_B (generic
  // rotations genuinely move them; dense scans confirm).
  Rng rng(227);
  const BipartiteState s = random_state(2, 2, 4, rng);
  const BipartiteHamiltonian h = qubitpair::model_hamiltonian(1.3, 1.0);
  const ContributionReport r1 = contribution_report(s, h);

  const ComplexMatrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
  const BipartiteState rotated{symmetrized(u * s.rho * adjoint(u)), 2, 2};
  const ContributionReport r2 = contribution_report(rotated, h);
  CHECK(r1.delta_T == testutil::near(r2.delta_T, 1e-5));
  CHECK(r1.delta_prime_value == testutil::near(r2.delta_prime_value, 1e-5));
  CHECK(r1.measures.T == testutil::near(r2.measures.T, 1e-7));
  CHECK(r1.measures.D == testutil::near(r2.measures.D, 1e-5));

  // energy-commuting local rotations: diagonal phases in the H eigenbases
  ComplexMatrix ua(2), ub(2);
  ua(0, 0) = cx{std::cos(0.9), std::sin(0.9)};
  ua(1, 1) = cx{std::cos(-1.7), std::sin(-1.7)};
  ub(0, 0) = cx{std::cos(2.3), std::sin(2.3)};
  ub(1, 1) = cx{std::cos(0.4), std::sin(0.4)};
  const ComplexMatrix uc = kron(ua, ub);
  const BipartiteState phased{symmetrized(uc * s.rho * adjoint(uc)), 2, 2};
  const ContributionReport r3 = contribution_report(phased, h);
  CHECK(r1.delta == testutil::near(r3.delta, 1e-5));
  CHECK(r1.delta_T == testutil::near(r3.delta_T, 1e-5));
  CHECK(r1.delta_C_eta == testutil::near(r3.delta_C_eta, 1e-5));
  CHECK(r1.delta_L_value == testutil::near(r3.delta_L_value, 1e-5));
  CHECK(r1.delta_prime_value == testutil::near(r3.delta_prime_value, 1e-5));

  // delta_C of a classical state depends only on spectra: rotating the bases
  // leaves the matrix-route value on the p-only formula
  ClassicalState chi = random_classical(2, 3, rng);
  chi.bases = {random_unitary(2, rng), random_unitary(3, rng)};
  const BipartiteHamiltonian h23 = testutil::random_local_hamiltonian(2, 3, rng);
  const BipartiteState cs = chi.to_state();
  const double matrix_route =
      ergotropy(cs.rho, h23.total()) - ergotropy(product_of_marginals(cs).rho, h23.total());
  CHECK(matrix_route == testutil::near(delta_classical(chi, h23), 1e-10));
}

TEST_CASE("interacting hamiltonian reports only the tilde family") {
  Rng rng(229);
  const BipartiteState s = random_state(2, 2, 4, rng);
  ComplexMatrix h = testutil::random_hermitian(4, rng);
  const ContributionReport rep =
      contribution_report(s, BipartiteHamiltonian::general(h, 2, 2));
  CHECK(rep.interacting);
  CHECK(std::isnan(rep.delta));
  CHECK(std::isnan(rep.delta_T));
  CHECK_FALSE(std::isnan(rep.tilde_T));
  CHECK_FALSE(std::isnan(rep.tilde_D));
  CHECK(rep.tilde_D >= -1e-9);
}

TEST_CASE("non-degenerate spectra: vanishing delta implies classicality") {
  Rng rng(231);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    // classical states dressed in random product bases have delta = 0
    ClassicalState chi = random_classical(2, 2, rng);
    chi.bases = {random_unitary(2, rng), random_unitary(2, rng)};
    const BipartiteState s = chi.to_state();
    const BipartiteHamiltonian h = testutil::random_local_hamiltonian(2, 2, rng);
    const std::vector<double> eps = hermitian_eig(h.total()).eigenvalues;
    bool nondegenerate = true;
    for (std::size_t k = 0; k + 1 < eps.size(); ++k)
      nondegenerate = nondegenerate && (eps[k + 1] - eps[k] > 1e-6);
    if (!nondegenerate) continue;
    const ConstrainedClassicalResult eta = constrained_closest_classical(s, h);
    if (delta_discord(s, h, eta) <= 1e-9) {
      CHECK(relative_entropy(s.rho, eta.eta.to_matrix()) <= 1e-6);
      ++checked;
    }
  }
  CHECK(checked > 0);
}
