#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ergo/closest.hpp"
#include "ergo/entropy.hpp"
#include "ergo/ergotropy.hpp"
#include "ergo/state.hpp"

namespace ergo {

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  bool infinite_term = false;  // an endpoint carries the +inf sentinel
};

// delta_T = E(rho) - E(pi_rho); zero for product states.
double delta_total(const BipartiteState& s, const BipartiteHamiltonian& h);

// [T - S(P_rho||rho_beta)] / beta <= delta_T <= [T + S(P_pi||rho_beta)] / beta
BoundPair delta_total_bounds(const BipartiteState& s, const BipartiteHamiltonian& h, double beta);

// delta = E(rho) - E(eta_rho) for the energy-constrained closest classical state.
double delta_discord(const BipartiteState& s, const BipartiteHamiltonian& h,
                     const ConstrainedClassicalResult& eta);

// Pure-state closed form: sum_i p_i eps_i - eps_1 over descending squared
// Schmidt coefficients against ascending energies.
double delta_discord_pure(const BipartiteState& s, const BipartiteHamiltonian& h);

// delta_C from the joint table and local spectra alone.
double delta_classical_spectral(const std::vector<double>& p,
                                const std::vector<double>& spectrum_a,
                                const std::vector<double>& spectrum_b);
double delta_classical(const ClassicalState& chi, const BipartiteHamiltonian& h);

// partial sums x_k = sum_{n<=k} (r_n - rtilde_n) entering the gap expansion
std::vector<double> classical_partial_sums(const std::vector<double>& p, std::size_t d_a,
                                           std::size_t d_b);

// delta_L = E(pi_rho) - E(pi_eta)
double delta_L(const BipartiteState& s, const BipartiteHamiltonian& h,
               const ConstrainedClassicalResult& eta);

// delta_E for the Horodecki family (the only covered closed-form separable case)
double delta_entanglement(const HorodeckiFamily& fam, const BipartiteHamiltonian& h);

// delta' = E(rho) - E(chi'_rho)
double delta_prime(const BipartiteState& s, const BipartiteHamiltonian& h);
double delta_prime(const BipartiteState& s, const BipartiteHamiltonian& h,
                   const DisturbanceResult& mid);

BoundPair delta_prime_bounds(const BipartiteState& s, const BipartiteHamiltonian& h, double beta);

struct TildeContributions {
  double tilde_T = 0.0;
  double tilde_D = 0.0;
  std::optional<double> tilde_E;
};

// Energy-difference-compensated variants that stay defined for interacting H.
TildeContributions tilde_contributions(const BipartiteState& s, const BipartiteHamiltonian& h,
                                       const ClassicalState& chi,
                                       const std::optional<HorodeckiFamily>& fam = {});

// Delta F_beta(rho) - Delta F_beta(pi_rho), with Delta F = S(.||rho_beta)/beta
double free_energy_gap(const BipartiteState& s, const BipartiteHamiltonian& h, double beta);

// sum_k (eps_{k+1} - eps_k) * sum_{n<=k} (r_n - q_n): the telescoped form of
// E(P_eta) - E(P_rho) driving the non-negativity argument.
double abel_delta_form(std::vector<double> rho_spectrum, std::vector<double> eta_spectrum,
                       std::vector<double> energy_spectrum);

struct ContributionReport {
  double beta = 0.0;
  bool interacting = false;

  double energy_value = 0.0;
  double ergotropy_value = 0.0;
  double coherence = 0.0;  // dephasing-in-energy-basis contribution E_c

  double delta_T = 0.0;
  double delta = 0.0;
  double delta_C_eta = 0.0;  // delta_C(eta_rho)
  double delta_L_value = 0.0;
  double delta_prime_value = 0.0;
  std::optional<double> delta_E;

  double tilde_T = 0.0;
  double tilde_D = 0.0;
  std::optional<double> tilde_E;

  double gap_EG = 0.0;
  double free_energy_gap_value = 0.0;

  CorrelationMeasures measures;
  BoundPair bounds_T, bounds_delta, bounds_prime;

  double decomposition_residual = 0.0;  // delta_T - (delta + delta_C(eta) - delta_L)
  double prime_decomposition_residual = 0.0;  // delta_T - (delta' + delta_C(chi'))
  double identity_T_residual = 0.0;
  double identity_delta_residual = 0.0;
  double identity_L_residual = 0.0;
  double identity_prime_residual = 0.0;

  double eta_entropy = 0.0;
  double eta_energy_residual = 0.0;
  int eta_multistarts = 0;
  std::string eta_origin;
  ClassicalState eta_state;  // in-memory only, not serialized

  bool marginal_degenerate = false;
  bool hamiltonian_degenerate = false;  // energy-basis dephasing is conventional
  bool infinite_term = false;
  bool discontinuity = false;
  std::optional<double> thermal_beta;  // set when P_rho is exactly Gibbs
};

struct ReportOptions {
  double beta = 0.0;  // <= 0: default to 1 / spectral span of H
  DiscordOptions discord;
  EtaSearchOptions eta;
};

// Full per-state report. For interacting H only the tilde family, measures
// and plain ergotropy quantities are populated (the rest is NaN).
ContributionReport contribution_report(const BipartiteState& s, const BipartiteHamiltonian& h,
                                       const ReportOptions& opts = {});

}  // namespace ergo
