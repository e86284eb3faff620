#pragma once

#include <optional>
#include <vector>

#include "ergo/matrix.hpp"
#include "ergo/state.hpp"

namespace ergo {

struct ErgotropyResult {
  double ergotropy = 0.0;
  double energy_initial = 0.0;
  double energy_passive = 0.0;
  ComplexMatrix passive_state;        // spectrum of rho laid onto the energy basis
  ComplexMatrix extraction_unitary;   // U with P = U rho U†
};

// Populations descending against energies ascending; deterministic tie
// handling through the stable eigensolver ordering.
ErgotropyResult passive_state(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian);

double ergotropy(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian);

// E(P) from spectra alone: sum_k eps_k r_k with eps ascending, r descending.
double passive_energy(std::vector<double> rho_spectrum, std::vector<double> energy_spectrum);

ComplexMatrix thermal_state(const ComplexMatrix& hamiltonian, double beta);

struct IdentityGapResult {
  double gap = 0.0;          // |beta (E(rho)-E(eta)) - entropy/relative-entropy side|
  bool infinite_term = false;
};

// Residual of the equal-energy ergotropy identity against the Gibbs state at
// beta. Requires E(rho) = E(eta) within 1e-8 (EnergyMismatch otherwise).
IdentityGapResult thermal_identity_gap(const ComplexMatrix& rho, const ComplexMatrix& eta,
                                       const ComplexMatrix& hamiltonian, double beta);

// Delta_EG = E(rho) - E(rho_A) - E(rho_B); non-interacting H only.
double ergotropic_gap(const BipartiteState& s, const BipartiteHamiltonian& h);

// E_c = E(rho) - E(Delta(rho)) with Delta the dephasing in the energy basis.
double coherence_contribution(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian);

// dephasing of rho in the (deterministic) eigenbasis of H
ComplexMatrix energy_dephased(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian);

// true iff eta ≺ rho (all partial sums of descending spectra dominated)
bool majorization_check(const ComplexMatrix& rho, const ComplexMatrix& eta);

// Least-squares fit of ln r_k = -beta eps_k - ln Z over the support; returns
// beta when the residual stays below 1e-8, i.e. the state is exactly Gibbs.
std::optional<double> fit_thermal_beta(const ComplexMatrix& rho,
                                       const ComplexMatrix& hamiltonian);

}  // namespace ergo
