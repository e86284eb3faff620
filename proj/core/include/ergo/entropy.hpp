#pragma once

#include <cstdint>
#include <vector>

#include "ergo/matrix.hpp"
#include "ergo/state.hpp"

namespace ergo {

// All entropies in nats.

double shannon_entropy(const std::vector<double>& p);
double von_neumann_entropy(const ComplexMatrix& rho);

// S(rho || eta). Returns +infinity when the support of rho leaks outside the
// support of eta by more than 1e-10; the sentinel is a legitimate value, not
// an error, and downstream bound formulas propagate it.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& eta);

double mutual_information(const BipartiteState& s);

// T of a classical state from its joint table alone
double classical_mutual_information(const ClassicalState& chi);

struct DiscordOptions {
  int multistarts = 32;
  double nm_tol = 1e-9;
  int grid_points = 16;          // coarse grid, only used when <= 4 angles total
  std::uint64_t seed = 0x5eed0001ull;
};

struct DiscordResult {
  ClassicalState chi;   // best-found closest classical state
  double discord = 0.0; // S(chi) - S(rho)
  int multistarts = 0;
};

// Minimizes S(chi) over product dephasing bases (best-found, not certified
// global; the multistart count is reported). Requires d_a, d_b <= 4.
DiscordResult discord_and_closest_classical(const BipartiteState& s,
                                            const DiscordOptions& opts = {});

struct DisturbanceResult {
  ClassicalState chi_prime;  // dephased in the marginal eigenbases
  double d_prime = 0.0;
  bool marginal_degenerate = false;
};

DisturbanceResult measurement_induced_disturbance(const BipartiteState& s);

// L(rho) = S(pi_chi) - S(pi_rho) for a dephasing chi of rho.
double L_quantity(const BipartiteState& s, const ClassicalState& chi);

struct CorrelationMeasures {
  double T = 0.0;        // mutual information
  double D = 0.0;        // relative entropy of discord (best-found)
  double C = 0.0;        // classical correlations of chi_rho
  double D_prime = 0.0;  // measurement-induced disturbance
  double L = 0.0;
  bool marginal_degenerate = false;
  int discord_multistarts = 0;
};

struct CorrelationBundle {
  CorrelationMeasures measures;
  ClassicalState chi;        // closest classical state
  ClassicalState chi_prime;  // marginal-eigenbasis dephasing
};

CorrelationBundle correlation_measures(const BipartiteState& s, const DiscordOptions& opts = {});

}  // namespace ergo
