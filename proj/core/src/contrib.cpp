#include "ergo/contrib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ergo {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> total_spectrum(const BipartiteHamiltonian& h) {
  return hermitian_eig(h.total()).eigenvalues;  // ascending
}

// E(eta) - E(P_eta) for a classical state from its table spectrum
double classical_ergotropy(const ClassicalState& chi, const BipartiteHamiltonian& h,
                           const std::vector<double>& h_spectrum) {
  return energy(chi, h) - passive_energy(chi.p, h_spectrum);
}

std::vector<double> product_table(const ClassicalState& chi) {
  const std::vector<double> ma = chi.marginal_a();
  const std::vector<double> mb = chi.marginal_b();
  std::vector<double> t(chi.d_a * chi.d_b);
  for (std::size_t i = 0; i < chi.d_a; ++i)
    for (std::size_t j = 0; j < chi.d_b; ++j) t[i * chi.d_b + j] = ma[i] * mb[j];
  return t;
}

}  // namespace

double delta_total(const BipartiteState& s, const BipartiteHamiltonian& h) {
  if (h.interacting())
    throw InteractingHamiltonian("delta_total: defined for H = H_A + H_B (use tilde variant)");
  return ergotropy(s.rho, h.total()) - ergotropy(product_of_marginals(s).rho, h.total());
}

BoundPair delta_total_bounds(const BipartiteState& s, const BipartiteHamiltonian& h,
                             double beta) {
  if (beta <= 0.0) throw ValidationError("delta_total_bounds: beta must be positive");
  const ComplexMatrix gibbs = thermal_state(h.total(), beta);
  const double t = mutual_information(s);
  const double rel_rho = relative_entropy(passive_state(s.rho, h.total()).passive_state, gibbs);
  const double rel_pi = relative_entropy(
      passive_state(product_of_marginals(s).rho, h.total()).passive_state, gibbs);
  BoundPair out;
  out.lower = (t - rel_rho) / beta;
  out.upper = (t + rel_pi) / beta;
  out.infinite_term = std::isinf(rel_rho) || std::isinf(rel_pi);
  return out;
}

double delta_discord(const BipartiteState& s, const BipartiteHamiltonian& h,
                     const ConstrainedClassicalResult& eta) {
  return ergotropy(s.rho, h.total()) -
         classical_ergotropy(eta.eta, h, total_spectrum(h));
}

double delta_discord_pure(const BipartiteState& s, const BipartiteHamiltonian& h) {
  const SchmidtDecomposition sd = schmidt_decompose(s);  // throws NotPure
  const std::vector<double> eps = total_spectrum(h);
  double v = -eps.front();
  for (std::size_t i = 0; i < sd.coefficients.size(); ++i)
    v += sd.coefficients[i] * eps[i];
  return v;
}

double delta_classical_spectral(const std::vector<double>& p,
                                const std::vector<double>& spectrum_a,
                                const std::vector<double>& spectrum_b) {
  const std::size_t da = spectrum_a.size(), db = spectrum_b.size();
  if (p.size() != da * db) throw DimensionMismatch("delta_classical_spectral: size mismatch");

  std::vector<double> eps(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) eps[i * db + j] = spectrum_a[i] + spectrum_b[j];
  std::sort(eps.begin(), eps.end());

  std::vector<double> r = descending(p);
  std::vector<double> ma(da, 0.0), mb(db, 0.0);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      ma[i] += p[i * db + j];
      mb[j] += p[i * db + j];
    }
  std::vector<double> rt(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) rt[i * db + j] = ma[i] * mb[j];
  std::sort(rt.begin(), rt.end(), std::greater<double>());

  double v = 0.0;
  for (std::size_t k = 0; k < eps.size(); ++k) v += eps[k] * (rt[k] - r[k]);
  return v;
}

double delta_classical(const ClassicalState& chi, const BipartiteHamiltonian& h) {
  if (h.interacting())
    throw InteractingHamiltonian("delta_classical: defined for H = H_A + H_B");
  return delta_classical_spectral(chi.p, hermitian_eig(h.local_a()).eigenvalues,
                                  hermitian_eig(h.local_b()).eigenvalues);
}

std::vector<double> classical_partial_sums(const std::vector<double>& p, std::size_t d_a,
                                           std::size_t d_b) {
  if (p.size() != d_a * d_b) throw DimensionMismatch("classical_partial_sums: size mismatch");
  std::vector<double> r = descending(p);
  std::vector<double> ma(d_a, 0.0), mb(d_b, 0.0);
  for (std::size_t i = 0; i < d_a; ++i)
    for (std::size_t j = 0; j < d_b; ++j) {
      ma[i] += p[i * d_b + j];
      mb[j] += p[i * d_b + j];
    }
  std::vector<double> rt(d_a * d_b);
  for (std::size_t i = 0; i < d_a; ++i)
    for (std::size_t j = 0; j < d_b; ++j) rt[i * d_b + j] = ma[i] * mb[j];
  std::sort(rt.begin(), rt.end(), std::greater<double>());

  std::vector<double> x(r.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    acc += r[k] - rt[k];
    x[k] = acc;
  }
  return x;
}

double delta_L(const BipartiteState& s, const BipartiteHamiltonian& h,
               const ConstrainedClassicalResult& eta) {
  if (h.interacting()) throw InteractingHamiltonian("delta_L: defined for H = H_A + H_B");
  const std::vector<double> eps = total_spectrum(h);
  const double erg_pi_rho = ergotropy(product_of_marginals(s).rho, h.total());
  // pi_eta is the same product dephasing applied to pi_rho; its spectrum is
  // the product of the eta marginals and its energy equals E(eta)
  const double erg_pi_eta = energy(eta.eta, h) - passive_energy(product_table(eta.eta), eps);
  return erg_pi_rho - erg_pi_eta;
}

double delta_entanglement(const HorodeckiFamily& fam, const BipartiteHamiltonian& h) {
  if (h.interacting())
    throw InteractingHamiltonian("delta_entanglement: defined for H = H_A + H_B");
  if (h.d_a() != 2 || h.d_b() != 2)
    throw OutOfScopeFamily("delta_entanglement: Horodecki family is two-qubit");
  const BipartiteState rho = horodecki_state(fam);
  const BipartiteState tau = horodecki_closest_separable(fam);
  return ergotropy(rho.rho, h.total()) - ergotropy(tau.rho, h.total());
}

double delta_prime(const BipartiteState& s, const BipartiteHamiltonian& h) {
  return delta_prime(s, h, measurement_induced_disturbance(s));
}

double delta_prime(const BipartiteState& s, const BipartiteHamiltonian& h,
                   const DisturbanceResult& mid) {
  if (h.interacting())
    throw InteractingHamiltonian("delta_prime: defined for H = H_A + H_B");
  return ergotropy(s.rho, h.total()) -
         classical_ergotropy(mid.chi_prime, h, total_spectrum(h));
}

BoundPair delta_prime_bounds(const BipartiteState& s, const BipartiteHamiltonian& h,
                             double beta) {
  if (beta <= 0.0) throw ValidationError("delta_prime_bounds: beta must be positive");
  const DisturbanceResult mid = measurement_induced_disturbance(s);
  const ComplexMatrix gibbs = thermal_state(h.total(), beta);
  const double rel_rho = relative_entropy(passive_state(s.rho, h.total()).passive_state, gibbs);
  const double rel_chi = relative_entropy(
      passive_state(mid.chi_prime.to_matrix(), h.total()).passive_state, gibbs);
  BoundPair out;
  out.lower = (mid.d_prime - rel_rho) / beta;
  out.upper = (mid.d_prime + rel_chi) / beta;
  out.infinite_term = std::isinf(rel_rho) || std::isinf(rel_chi);
  return out;
}

TildeContributions tilde_contributions(const BipartiteState& s, const BipartiteHamiltonian& h,
                                       const ClassicalState& chi,
                                       const std::optional<HorodeckiFamily>& fam) {
  TildeContributions out;
  const double erg_rho = ergotropy(s.rho, h.total());
  const double e_rho = energy(s, h);
  const BipartiteState pi = product_of_marginals(s);
  out.tilde_T = erg_rho - ergotropy(pi.rho, h.total()) - e_rho + energy(pi, h);
  const double e_chi = energy(chi, h);
  out.tilde_D =
      erg_rho - (e_chi - passive_energy(chi.p, total_spectrum(h))) - e_rho + e_chi;
  if (fam.has_value()) {
    const BipartiteState sigma = horodecki_closest_separable(*fam);
    out.tilde_E = erg_rho - ergotropy(sigma.rho, h.total()) - e_rho + energy(sigma, h);
  }
  return out;
}

double free_energy_gap(const BipartiteState& s, const BipartiteHamiltonian& h, double beta) {
  if (beta <= 0.0) throw ValidationError("free_energy_gap: beta must be positive");
  const ComplexMatrix gibbs = thermal_state(h.total(), beta);
  return (relative_entropy(s.rho, gibbs) -
          relative_entropy(product_of_marginals(s).rho, gibbs)) /
         beta;
}

double abel_delta_form(std::vector<double> rho_spectrum, std::vector<double> eta_spectrum,
                       std::vector<double> energy_spectrum) {
  const std::size_t n = rho_spectrum.size();
  if (eta_spectrum.size() != n || energy_spectrum.size() != n)
    throw DimensionMismatch("abel_delta_form: spectra size mismatch");
  std::stable_sort(rho_spectrum.begin(), rho_spectrum.end(), std::greater<double>());
  std::stable_sort(eta_spectrum.begin(), eta_spectrum.end(), std::greater<double>());
  std::stable_sort(energy_spectrum.begin(), energy_spectrum.end());
  double acc = 0.0, v = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    acc += rho_spectrum[k] - eta_spectrum[k];
    v += (energy_spectrum[k + 1] - energy_spectrum[k]) * acc;
  }
  return v;
}

ContributionReport contribution_report(const BipartiteState& s, const BipartiteHamiltonian& h,
                                       const ReportOptions& opts) {
  ContributionReport rep;
  const double span = h.spectral_span();
  rep.beta = opts.beta > 0.0 ? opts.beta : (span > 0.0 ? 1.0 / span : 1.0);
  rep.interacting = h.interacting();

  rep.energy_value = energy(s, h);
  rep.ergotropy_value = ergotropy(s.rho, h.total());
  rep.coherence = coherence_contribution(s.rho, h.total());
  rep.thermal_beta = fit_thermal_beta(s.rho, h.total());
  rep.hamiltonian_degenerate = spectrum_degenerate(hermitian_eig(h.total()).eigenvalues);

  CorrelationBundle bundle = correlation_measures(s, opts.discord);
  rep.measures = bundle.measures;
  rep.marginal_degenerate = bundle.measures.marginal_degenerate;

  if (rep.interacting) {
    const std::optional<HorodeckiFamily> fam = detect_horodecki(s);
    const TildeContributions tilde = tilde_contributions(s, h, bundle.chi, fam);
    rep.tilde_T = tilde.tilde_T;
    rep.tilde_D = tilde.tilde_D;
    rep.tilde_E = tilde.tilde_E;
    rep.delta_T = rep.delta = rep.delta_C_eta = rep.delta_L_value = kNan;
    rep.delta_prime_value = rep.gap_EG = rep.free_energy_gap_value = kNan;
    rep.decomposition_residual = rep.prime_decomposition_residual = kNan;
    rep.identity_T_residual = rep.identity_delta_residual = kNan;
    rep.identity_L_residual = rep.identity_prime_residual = kNan;
    rep.eta_entropy = rep.eta_energy_residual = kNan;
    return rep;
  }

  EtaSearchOptions eta_opts = opts.eta;
  eta_opts.seed_candidates.push_back(bundle.chi);
  const ConstrainedClassicalResult eta = constrained_closest_classical(s, h, eta_opts);
  rep.eta_entropy = eta.entropy;
  rep.eta_energy_residual = eta.energy_residual;
  rep.eta_multistarts = eta.multistart_count;
  rep.eta_origin = eta.origin;
  rep.eta_state = eta.eta;

  // The constrained winner is also an unconstrained candidate; if it beats the
  // discord search, adopt it so that S(chi) <= S(eta) stays coherent.
  if (shannon_entropy(bundle.chi.p) > eta.entropy + 1e-12) {
    bundle.chi = eta.eta;
    const double s_rho = von_neumann_entropy(s.rho);
    rep.measures.D = eta.entropy - s_rho;
    rep.measures.C = classical_mutual_information(bundle.chi);
    rep.measures.L = L_quantity(s, bundle.chi);
    bundle.measures = rep.measures;
  }

  const DisturbanceResult mid = measurement_induced_disturbance(s);
  const std::vector<double> eps = total_spectrum(h);

  rep.delta_T = delta_total(s, h);
  rep.delta = delta_discord(s, h, eta);
  rep.delta_C_eta = delta_classical(eta.eta, h);
  rep.delta_L_value = delta_L(s, h, eta);
  rep.delta_prime_value = delta_prime(s, h, mid);
  rep.gap_EG = ergotropic_gap(s, h);
  rep.free_energy_gap_value = free_energy_gap(s, h, rep.beta);

  const std::optional<HorodeckiFamily> fam = detect_horodecki(s);
  if (fam.has_value()) rep.delta_E = delta_entanglement(*fam, h);

  const TildeContributions tilde = tilde_contributions(s, h, bundle.chi, fam);
  rep.tilde_T = tilde.tilde_T;
  rep.tilde_D = tilde.tilde_D;
  rep.tilde_E = tilde.tilde_E;

  rep.decomposition_residual = rep.delta_T - (rep.delta + rep.delta_C_eta - rep.delta_L_value);
  rep.prime_decomposition_residual =
      rep.delta_T - (rep.delta_prime_value + delta_classical(mid.chi_prime, h));

  // identity residuals against the Gibbs reference
  const ComplexMatrix gibbs = thermal_state(h.total(), rep.beta);
  const ComplexMatrix p_rho = passive_state(s.rho, h.total()).passive_state;
  const BipartiteState pi_rho = product_of_marginals(s);
  const ComplexMatrix p_pi = passive_state(pi_rho.rho, h.total()).passive_state;
  const ComplexMatrix p_eta =
      from_eigensystem(descending(eta.eta.p), hermitian_eig(h.total()).eigenvectors);
  const ComplexMatrix p_pi_eta =
      from_eigensystem(descending(product_table(eta.eta)),
                       hermitian_eig(h.total()).eigenvectors);
  const ComplexMatrix p_chi_prime =
      from_eigensystem(descending(mid.chi_prime.p), hermitian_eig(h.total()).eigenvectors);

  const double rel_rho = relative_entropy(p_rho, gibbs);
  const double rel_pi = relative_entropy(p_pi, gibbs);
  const double rel_eta = relative_entropy(p_eta, gibbs);
  const double rel_pi_eta = relative_entropy(p_pi_eta, gibbs);
  const double rel_chi_prime = relative_entropy(p_chi_prime, gibbs);
  rep.infinite_term = std::isinf(rel_rho) || std::isinf(rel_pi) || std::isinf(rel_eta) ||
                      std::isinf(rel_pi_eta) || std::isinf(rel_chi_prime);

  const double s_rho = von_neumann_entropy(s.rho);
  const double s_eta = shannon_entropy(eta.eta.p);
  const double s_pi_eta = shannon_entropy(eta.eta.marginal_a()) +
                          shannon_entropy(eta.eta.marginal_b());
  const double s_pi_rho = von_neumann_entropy(partial_trace(s, Subsystem::A)) +
                          von_neumann_entropy(partial_trace(s, Subsystem::B));

  if (!rep.infinite_term) {
    rep.identity_T_residual =
        rep.beta * rep.delta_T - (rep.measures.T - rel_rho + rel_pi);
    rep.identity_delta_residual =
        rep.beta * rep.delta - (s_eta - s_rho - rel_rho + rel_eta);
    rep.identity_L_residual =
        rep.beta * rep.delta_L_value - (s_pi_eta - s_pi_rho - rel_pi + rel_pi_eta);
    rep.identity_prime_residual =
        rep.beta * rep.delta_prime_value -
        (rep.measures.D_prime - rel_rho + rel_chi_prime);
  } else {
    rep.identity_T_residual = rep.identity_delta_residual = kNan;
    rep.identity_L_residual = rep.identity_prime_residual = kNan;
  }

  rep.bounds_T.lower = (rep.measures.T - rel_rho) / rep.beta;
  rep.bounds_T.upper = (rep.measures.T + rel_pi) / rep.beta;
  rep.bounds_T.infinite_term = std::isinf(rel_rho) || std::isinf(rel_pi);

  const double rel_rho_eta = relative_entropy(s.rho, eta.eta.to_matrix());
  rep.bounds_delta.lower = (rep.measures.D - rel_rho) / rep.beta;
  rep.bounds_delta.upper = (rel_rho_eta + rel_eta) / rep.beta;
  rep.bounds_delta.infinite_term =
      std::isinf(rel_rho) || std::isinf(rel_eta) || std::isinf(rel_rho_eta);

  rep.bounds_prime.lower = (rep.measures.D_prime - rel_rho) / rep.beta;
  rep.bounds_prime.upper = (rep.measures.D_prime + rel_chi_prime) / rep.beta;
  rep.bounds_prime.infinite_term = std::isinf(rel_rho) || std::isinf(rel_chi_prime);

  return rep;
}

}  // namespace ergo
