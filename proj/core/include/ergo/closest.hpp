#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergo/entropy.hpp"
#include "ergo/matrix.hpp"
#include "ergo/state.hpp"

namespace ergo {

struct ConstrainedClassicalResult {
  ClassicalState eta;
  double entropy = 0.0;
  double energy_residual = 0.0;  // E(eta) - E(rho)
  int multistart_count = 0;
  bool discontinuity_flag = false;  // populated by sweep drivers near a branch switch
  std::string origin;               // which strategy produced the winner
};

struct EtaSearchOptions {
  int multistarts = 64;
  double nm_tol = 1e-9;
  double energy_tol = 1e-8;  // feasibility window for |E(eta) - E(rho)|
  bool use_structured = true;
  bool use_penalty = true;
  bool use_curve = true;  // numeric two-qubit constraint-curve strategy
  std::uint64_t seed = 0x5eed0002ull;
  // externally supplied candidates (e.g. the unconstrained chi_rho, or a
  // family constraint-curve solution); registered and used as warm starts
  std::vector<ClassicalState> seed_candidates;
};

// Best-found classical state minimizing S(eta) over product dephasings of s
// under E(eta) = E(rho). Penalty-escalated Nelder-Mead plus exact-feasible
// structured candidates; a constraint-curve strategy joins in for two qubits.
// Throws InfeasibleConstraint when no strategy lands the energy window
// (possible for interacting H), DimensionTooLarge beyond d_a, d_b <= 4.
ConstrainedClassicalResult constrained_closest_classical(const BipartiteState& s,
                                                         const BipartiteHamiltonian& h,
                                                         const EtaSearchOptions& opts = {});

// chi'_rho: dephasing in the eigenbases of the reduced states.
ClassicalState marginal_eigenbasis_dephasing(const BipartiteState& s,
                                             bool* degenerate = nullptr);

// Two-qubit model family rho = mu |0,+><0,+| + (1-mu) |1,1><1,1| with local
// fields H_A = R eps |1><1|, H_B = eps |1><1|.
namespace qubitpair {

BipartiteState model_state(double mu);
BipartiteHamiltonian model_hamiltonian(double R, double epsilon);

// Energy-constraint section at vanishing B-basis azimuth:
// f(a,b) = 2(1-a)aR(2mu-1) - 2(1-b)b(1-mu) + (1-2b)sqrt((1-b)b) mu
double constraint_curve_f(double a, double b, double mu, double R);

// Closest energy-matching classical state for the family. For mu > 1/2 the
// constraint curve is scanned (b grid, bisected a-roots, azimuth cosine
// re-optimized rather than assumed); for mu <= 1/2 the computational-basis
// dephasing is already optimal and exactly feasible.
ConstrainedClassicalResult constrained_eta(double mu, double R, double epsilon,
                                           int b_grid = 2001);

double discord_exact(double mu);                                  // min{mu,1-mu} ln 2
double passive_energy_exact(double mu, double R, double epsilon);  // min{1,R} eps min{mu,1-mu}
double delta_exact_low_mu(double mu, double R, double epsilon);    // |1-R| eps mu / 2

}  // namespace qubitpair

// rho = p |psi±><psi±| + (1-p) |00><00|
struct HorodeckiFamily {
  double p = 0.0;
  int sign = +1;  // selects |psi+> or |psi->
};

BipartiteState horodecki_state(const HorodeckiFamily& fam);

// sigma = q'^2 |00><00| + 2p'q' |psi±><psi±| + p'^2 |11><11|, p' = p/2,
// q' = 1 - p'. Shares the energy of the family state for any non-interacting
// two-qubit H, so it is also the energy-matching closest separable state.
BipartiteState horodecki_closest_separable(const HorodeckiFamily& fam);

std::optional<HorodeckiFamily> detect_horodecki(const BipartiteState& s, double tol = 1e-10);

}  // namespace ergo
