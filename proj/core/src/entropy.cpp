#include "ergo/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergo/optim.hpp"
#include "ergo/rng.hpp"

namespace ergo {

double shannon_entropy(const std::vector<double>& p) {
  double s = 0.0;
  for (const double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const HermitianEig eig = hermitian_eig(rho);
  double s = 0.0;
  for (const double lam : eig.eigenvalues)
    if (lam > 0.0) s -= lam * std::log(lam);
  return s;
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& eta) {
  if (rho.dim() != eta.dim())
    throw DimensionMismatch("relative_entropy: dimension mismatch");
  const MatrixLog eta_log = matrix_log_on_support(eta);
  const double kernel_overlap = 1.0 - real_trace_product(rho, eta_log.support);
  if (kernel_overlap > 1e-10) return std::numeric_limits<double>::infinity();

  const HermitianEig eig = hermitian_eig(rho);
  double s = 0.0;
  for (const double lam : eig.eigenvalues)
    if (lam > kLogCutoff) s += lam * std::log(lam);
  return s - real_trace_product(rho, eta_log.log);
}

double mutual_information(const BipartiteState& s) {
  return von_neumann_entropy(partial_trace(s, Subsystem::A)) +
         von_neumann_entropy(partial_trace(s, Subsystem::B)) -
         von_neumann_entropy(s.rho);
}

double classical_mutual_information(const ClassicalState& chi) {
  return shannon_entropy(chi.marginal_a()) + shannon_entropy(chi.marginal_b()) -
         shannon_entropy(chi.p);
}

namespace {

// Objective: S(chi) for bases (ref_a * U(angles_a), ref_b * U(angles_b)).
// Parametrizing relative to a reference basis lets structured candidates be
// polished without inverting them into angles.
struct DephasingObjective {
  const BipartiteState* s;
  ComplexMatrix ref_a, ref_b;
  std::size_t na, nb;  // angle counts per side

  LocalBasisPair bases(const std::vector<double>& x) const {
    LocalBasisPair lb;
    lb.basis_a = ref_a * unitary_from_angles(s->d_a, x.data());
    lb.basis_b = ref_b * unitary_from_angles(s->d_b, x.data() + na);
    return lb;
  }

  double operator()(const std::vector<double>& x) const {
    return shannon_entropy(dephase_by_product_basis(*s, bases(x)).p);
  }
};

}  // namespace

DiscordResult discord_and_closest_classical(const BipartiteState& s, const DiscordOptions& opts) {
  if (s.d_a > 4 || s.d_b > 4)
    throw DimensionTooLarge("discord: optimizer scope is d_a, d_b <= 4");

  const double s_rho = von_neumann_entropy(s.rho);
  const std::size_t na = basis_angle_count(s.d_a);
  const std::size_t nb = basis_angle_count(s.d_b);
  const std::size_t nangles = na + nb;

  DiscordResult best;
  best.discord = std::numeric_limits<double>::infinity();
  auto consider = [&](const ClassicalState& chi) {
    const double d = shannon_entropy(chi.p) - s_rho;
    if (d < best.discord) {
      best.discord = d;
      best.chi = chi;
    }
  };

  // structured candidates
  consider(dephase_by_product_basis(s, computational_bases(s.d_a, s.d_b)));
  const MarginalBases marg = marginal_eigenbases(s);
  consider(dephase_by_product_basis(s, marg.bases));
  const HermitianEig rho_eig = hermitian_eig(s.rho);
  const bool pure = rho_eig.eigenvalues.back() >= 1.0 - kPurityTol;
  if (pure) consider(dephase_by_product_basis(s, schmidt_decompose(s).bases));

  NelderMeadOptions nm;
  nm.tol = opts.nm_tol;

  int runs = 0;
  auto refine = [&](const ComplexMatrix& ref_a, const ComplexMatrix& ref_b,
                    std::vector<double> start) {
    DephasingObjective obj{&s, ref_a, ref_b, na, nb};
    const NelderMeadResult r = nelder_mead(obj, std::move(start), nm);
    consider(dephase_by_product_basis(s, obj.bases(r.x)));
    ++runs;
  };

  const ComplexMatrix id_a = ComplexMatrix::identity(s.d_a);
  const ComplexMatrix id_b = ComplexMatrix::identity(s.d_b);

  // polish the structured bases
  refine(id_a, id_b, std::vector<double>(nangles, 0.0));
  refine(marg.bases.basis_a, marg.bases.basis_b, std::vector<double>(nangles, 0.0));

  // coarse grid only where the full tensor grid is tractable (2x2: 4 angles)
  if (nangles <= 4 && opts.grid_points > 1) {
    const int g = opts.grid_points;
    std::vector<double> x(nangles, 0.0);
    std::vector<std::pair<double, std::vector<double>>> top;
    DephasingObjective obj{&s, id_a, id_b, na, nb};
    std::vector<int> idx(nangles, 0);
    while (true) {
      for (std::size_t k = 0; k < nangles; ++k) {
        const bool is_theta = (k % 2 == 0);
        const double span = is_theta ? 3.141592653589793 : 6.283185307179586;
        x[k] = span * idx[k] / g;
      }
      top.emplace_back(obj(x), x);
      std::push_heap(top.begin(), top.end());
      if (top.size() > 4) {
        std::pop_heap(top.begin(), top.end());
        top.pop_back();
      }
      std::size_t k = 0;
      for (; k < nangles; ++k) {
        if (++idx[k] < g) break;
        idx[k] = 0;
      }
      if (k == nangles) break;
    }
    for (auto& [val, start] : top) refine(id_a, id_b, start);
  }

  // random multistarts fill the budget
  Rng rng(opts.seed);
  while (runs < opts.multistarts) {
    std::vector<double> start(nangles);
    for (std::size_t k = 0; k < nangles; ++k) {
      const bool is_theta = (k % 2 == 0);
      start[k] = rng.uniform(0.0, is_theta ? 3.141592653589793 : 6.283185307179586);
    }
    refine(id_a, id_b, std::move(start));
  }

  best.multistarts = runs;
  return best;
}

DisturbanceResult measurement_induced_disturbance(const BipartiteState& s) {
  const MarginalBases marg = marginal_eigenbases(s);
  DisturbanceResult out;
  out.chi_prime = dephase_by_product_basis(s, marg.bases);
  out.d_prime = shannon_entropy(out.chi_prime.p) - von_neumann_entropy(s.rho);
  out.marginal_degenerate = marg.degenerate;
  return out;
}

double L_quantity(const BipartiteState& s, const ClassicalState& chi) {
  const double s_pi_chi = shannon_entropy(chi.marginal_a()) + shannon_entropy(chi.marginal_b());
  const double s_pi_rho = von_neumann_entropy(partial_trace(s, Subsystem::A)) +
                          von_neumann_entropy(partial_trace(s, Subsystem::B));
  return s_pi_chi - s_pi_rho;
}

CorrelationBundle correlation_measures(const BipartiteState& s, const DiscordOptions& opts) {
  CorrelationBundle out;
  const DiscordResult dr = discord_and_closest_classical(s, opts);
  const DisturbanceResult mid = measurement_induced_disturbance(s);
  out.chi = dr.chi;
  out.chi_prime = mid.chi_prime;
  out.measures.T = mutual_information(s);
  out.measures.D = dr.discord;
  out.measures.C = classical_mutual_information(dr.chi);
  out.measures.D_prime = mid.d_prime;
  out.measures.L = L_quantity(s, dr.chi);
  out.measures.marginal_degenerate = mid.marginal_degenerate;
  out.measures.discord_multistarts = dr.multistarts;
  return out;
}

}  // namespace ergo
