#include "ergo/ergotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergo/entropy.hpp"

namespace ergo {

ErgotropyResult passive_state(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian) {
  const std::size_t n = rho.dim();
  if (hamiltonian.dim() != n)
    throw DimensionMismatch("passive_state: rho and H dimension mismatch");

  const HermitianEig h_eig = hermitian_eig(hamiltonian);  // energies ascending
  const HermitianEig r_eig = hermitian_eig(rho);          // populations ascending

  ErgotropyResult out;
  out.energy_initial = real_trace_product(hamiltonian, rho);

  // populations descending against energies ascending
  std::vector<double> populations(n);
  for (std::size_t k = 0; k < n; ++k) populations[k] = r_eig.eigenvalues[n - 1 - k];

  out.energy_passive = 0.0;
  for (std::size_t k = 0; k < n; ++k) out.energy_passive += h_eig.eigenvalues[k] * populations[k];
  out.ergotropy = out.energy_initial - out.energy_passive;

  out.passive_state = from_eigensystem(populations, h_eig.eigenvectors);

  // U = sum_k |eps_k><r_k| with the same descending population order
  out.extraction_unitary = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out.extraction_unitary(i, j) +=
            h_eig.eigenvectors(i, k) * std::conj(r_eig.eigenvectors(j, n - 1 - k));
  return out;
}

double ergotropy(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian) {
  const std::size_t n = rho.dim();
  if (hamiltonian.dim() != n) throw DimensionMismatch("ergotropy: dimension mismatch");
  const HermitianEig h_eig = hermitian_eig(hamiltonian);
  const HermitianEig r_eig = hermitian_eig(rho);
  double e_passive = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    e_passive += h_eig.eigenvalues[k] * r_eig.eigenvalues[n - 1 - k];
  return real_trace_product(hamiltonian, rho) - e_passive;
}

double passive_energy(std::vector<double> rho_spectrum, std::vector<double> energy_spectrum) {
  if (rho_spectrum.size() != energy_spectrum.size())
    throw DimensionMismatch("passive_energy: spectra size mismatch");
  std::stable_sort(rho_spectrum.begin(), rho_spectrum.end(), std::greater<double>());
  std::stable_sort(energy_spectrum.begin(), energy_spectrum.end());
  double e = 0.0;
  for (std::size_t k = 0; k < rho_spectrum.size(); ++k)
    e += energy_spectrum[k] * rho_spectrum[k];
  return e;
}

ComplexMatrix thermal_state(const ComplexMatrix& hamiltonian, double beta) {
  const HermitianEig h_eig = hermitian_eig(hamiltonian);
  const double ground = h_eig.eigenvalues.front();
  std::vector<double> w(h_eig.eigenvalues.size());
  double z = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::exp(-beta * (h_eig.eigenvalues[k] - ground));
    z += w[k];
  }
  for (auto& x : w) x /= z;
  return from_eigensystem(w, h_eig.eigenvectors);
}

IdentityGapResult thermal_identity_gap(const ComplexMatrix& rho, const ComplexMatrix& eta,
                                       const ComplexMatrix& hamiltonian, double beta) {
  const double e_rho = real_trace_product(hamiltonian, rho);
  const double e_eta = real_trace_product(hamiltonian, eta);
  if (std::abs(e_rho - e_eta) > 1e-8)
    throw EnergyMismatch("thermal_identity_gap: E(rho) != E(eta)");

  const ComplexMatrix gibbs = thermal_state(hamiltonian, beta);
  const ComplexMatrix p_rho = passive_state(rho, hamiltonian).passive_state;
  const ComplexMatrix p_eta = passive_state(eta, hamiltonian).passive_state;

  const double s_rel_rho = relative_entropy(p_rho, gibbs);
  const double s_rel_eta = relative_entropy(p_eta, gibbs);

  IdentityGapResult out;
  if (std::isinf(s_rel_rho) || std::isinf(s_rel_eta)) {
    out.infinite_term = true;
    out.gap = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double lhs = beta * (ergotropy(rho, hamiltonian) - ergotropy(eta, hamiltonian));
  const double rhs = von_neumann_entropy(eta) - von_neumann_entropy(rho) - s_rel_rho + s_rel_eta;
  out.gap = std::abs(lhs - rhs);
  return out;
}

double ergotropic_gap(const BipartiteState& s, const BipartiteHamiltonian& h) {
  if (h.interacting())
    throw InteractingHamiltonian("ergotropic_gap: defined for H = H_A + H_B only");
  return ergotropy(s.rho, h.total()) -
         ergotropy(partial_trace(s, Subsystem::A), h.local_a()) -
         ergotropy(partial_trace(s, Subsystem::B), h.local_b());
}

ComplexMatrix energy_dephased(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian) {
  const HermitianEig h_eig = hermitian_eig(hamiltonian);
  const std::size_t n = rho.dim();
  std::vector<double> diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    cx v{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      cx row{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) row += rho(i, j) * h_eig.eigenvectors(j, k);
      v += std::conj(h_eig.eigenvectors(i, k)) * row;
    }
    diag[k] = std::max(0.0, v.real());
  }
  return from_eigensystem(diag, h_eig.eigenvectors);
}

double coherence_contribution(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian) {
  return ergotropy(rho, hamiltonian) - ergotropy(energy_dephased(rho, hamiltonian), hamiltonian);
}

bool majorization_check(const ComplexMatrix& rho, const ComplexMatrix& eta) {
  if (rho.dim() != eta.dim()) throw DimensionMismatch("majorization_check: dimension mismatch");
  const std::vector<double> r = descending(hermitian_eig(rho).eigenvalues);
  const std::vector<double> q = descending(hermitian_eig(eta).eigenvalues);
  double sum_r = 0.0, sum_q = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    sum_r += r[k];
    sum_q += q[k];
    if (sum_q > sum_r + 1e-10) return false;
  }
  return true;
}

std::optional<double> fit_thermal_beta(const ComplexMatrix& rho,
                                       const ComplexMatrix& hamiltonian) {
  const HermitianEig h_eig = hermitian_eig(hamiltonian);
  const HermitianEig r_eig = hermitian_eig(rho);
  const std::size_t n = rho.dim();
  // Gibbs states are full rank with populations descending in energy
  std::vector<double> eps(n), lnr(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = r_eig.eigenvalues[n - 1 - k];
    if (r < 1e-300) return std::nullopt;
    eps[k] = h_eig.eigenvalues[k];
    lnr[k] = std::log(r);
  }
  double mean_e = 0.0, mean_l = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mean_e += eps[k];
    mean_l += lnr[k];
  }
  mean_e /= n;
  mean_l /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (eps[k] - mean_e) * (eps[k] - mean_e);
    sxy += (eps[k] - mean_e) * (lnr[k] - mean_l);
  }
  if (sxx < 1e-30) {
    // fully degenerate spectrum: any state with flat populations is thermal
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(lnr[k] - mean_l) > 1e-8) return std::nullopt;
    return 0.0;
  }
  const double beta = -sxy / sxx;
  if (beta < 0.0) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(lnr[k] - (mean_l - beta * (eps[k] - mean_e))) > 1e-8) return std::nullopt;
  return beta;
}

}  // namespace ergo
