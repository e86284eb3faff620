#include "ergo/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ergo {

void validate_state(const BipartiteState& s) {
  if (s.d_a < 1 || s.d_b < 1) throw DimensionMismatch("state: subsystem dims must be positive");
  if (s.rho.dim() != s.d_a * s.d_b)
    throw DimensionMismatch("state: dim(rho) != d_a * d_b");
  if (s.rho.dim() > kMaxDim) throw DimensionTooLarge("state: dim > 64");
  if (hermiticity_defect(s.rho) > kHermTol) throw NotHermitian("state: rho not Hermitian");
  const double tr = trace(s.rho).real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError("state: trace(rho) = " + std::to_string(tr) + " != 1");
  const HermitianEig eig = hermitian_eig(s.rho);
  if (eig.eigenvalues.front() < -kStatePsdTol)
    throw NegativeEigenvalue("state: rho has eigenvalue " +
                             std::to_string(eig.eigenvalues.front()));
}

BipartiteHamiltonian BipartiteHamiltonian::non_interacting(ComplexMatrix h_a, ComplexMatrix h_b) {
  if (!is_hermitian(h_a) || !is_hermitian(h_b))
    throw NotHermitian("hamiltonian: local terms must be Hermitian");
  BipartiteHamiltonian h;
  h.kind_ = HamiltonianKind::NonInteracting;
  h.d_a_ = h_a.dim();
  h.d_b_ = h_b.dim();
  h.total_ = kron(h_a, ComplexMatrix::identity(h_b.dim())) +
             kron(ComplexMatrix::identity(h_a.dim()), h_b);
  h.h_a_ = std::move(h_a);
  h.h_b_ = std::move(h_b);
  return h;
}

BipartiteHamiltonian BipartiteHamiltonian::general(ComplexMatrix h, std::size_t d_a,
                                                   std::size_t d_b) {
  if (!is_hermitian(h)) throw NotHermitian("hamiltonian: must be Hermitian");
  if (h.dim() != d_a * d_b) throw DimensionMismatch("hamiltonian: dim != d_a * d_b");
  BipartiteHamiltonian out;
  out.kind_ = HamiltonianKind::General;
  out.d_a_ = d_a;
  out.d_b_ = d_b;
  out.total_ = std::move(h);
  return out;
}

const ComplexMatrix& BipartiteHamiltonian::local_a() const {
  if (kind_ != HamiltonianKind::NonInteracting)
    throw InteractingHamiltonian("hamiltonian: no local term on a general H");
  return h_a_;
}

const ComplexMatrix& BipartiteHamiltonian::local_b() const {
  if (kind_ != HamiltonianKind::NonInteracting)
    throw InteractingHamiltonian("hamiltonian: no local term on a general H");
  return h_b_;
}

double BipartiteHamiltonian::spectral_span() const {
  const HermitianEig eig = hermitian_eig(total_);
  return eig.eigenvalues.back() - eig.eigenvalues.front();
}

LocalBasisPair computational_bases(std::size_t d_a, std::size_t d_b) {
  return {ComplexMatrix::identity(d_a), ComplexMatrix::identity(d_b)};
}

std::vector<double> ClassicalState::marginal_a() const {
  std::vector<double> r(d_a, 0.0);
  for (std::size_t i = 0; i < d_a; ++i)
    for (std::size_t j = 0; j < d_b; ++j) r[i] += at(i, j);
  return r;
}

std::vector<double> ClassicalState::marginal_b() const {
  std::vector<double> r(d_b, 0.0);
  for (std::size_t i = 0; i < d_a; ++i)
    for (std::size_t j = 0; j < d_b; ++j) r[j] += at(i, j);
  return r;
}

ComplexMatrix ClassicalState::to_matrix() const {
  const std::size_t n = d_a * d_b;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < d_a; ++i) {
    for (std::size_t j = 0; j < d_b; ++j) {
      const double w = at(i, j);
      if (w == 0.0) continue;
      // w * (a_i a_i†) ⊗ (b_j b_j†)
      for (std::size_t r1 = 0; r1 < d_a; ++r1)
        for (std::size_t r2 = 0; r2 < d_a; ++r2) {
          const cx fa = bases.basis_a(r1, i) * std::conj(bases.basis_a(r2, i)) * w;
          if (fa == cx{0.0, 0.0}) continue;
          for (std::size_t c1 = 0; c1 < d_b; ++c1)
            for (std::size_t c2 = 0; c2 < d_b; ++c2)
              m(r1 * d_b + c1, r2 * d_b + c2) +=
                  fa * bases.basis_b(c1, j) * std::conj(bases.basis_b(c2, j));
        }
    }
  }
  return m;
}

BipartiteState ClassicalState::to_state() const { return {to_matrix(), d_a, d_b}; }

ComplexMatrix partial_trace(const BipartiteState& s, Subsystem keep) {
  const std::size_t da = s.d_a, db = s.d_b;
  if (keep == Subsystem::A) {
    ComplexMatrix r(da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t ip = 0; ip < da; ++ip)
        for (std::size_t j = 0; j < db; ++j) r(i, ip) += s.rho(i * db + j, ip * db + j);
    return r;
  }
  ComplexMatrix r(db);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t jp = 0; jp < db; ++jp)
      for (std::size_t i = 0; i < da; ++i) r(j, jp) += s.rho(i * db + j, i * db + jp);
  return r;
}

BipartiteState product_of_marginals(const BipartiteState& s) {
  return {kron(partial_trace(s, Subsystem::A), partial_trace(s, Subsystem::B)), s.d_a, s.d_b};
}

ClassicalState dephase_by_product_basis(const BipartiteState& s, const LocalBasisPair& bases) {
  const std::size_t da = s.d_a, db = s.d_b;
  ClassicalState chi;
  chi.d_a = da;
  chi.d_b = db;
  chi.bases = bases;
  chi.p.assign(da * db, 0.0);
  std::vector<cx> v(da * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      for (std::size_t r = 0; r < da; ++r)
        for (std::size_t c = 0; c < db; ++c)
          v[r * db + c] = bases.basis_a(r, i) * bases.basis_b(c, j);
      // p_ij = <a_i b_j| rho |a_i b_j>
      cx q{0.0, 0.0};
      for (std::size_t r = 0; r < da * db; ++r) {
        if (v[r] == cx{0.0, 0.0}) continue;
        cx row{0.0, 0.0};
        for (std::size_t c = 0; c < da * db; ++c) row += s.rho(r, c) * v[c];
        q += std::conj(v[r]) * row;
      }
      chi.p[i * db + j] = std::max(0.0, q.real());
    }
  }
  return chi;
}

bool is_pure(const BipartiteState& s) {
  const HermitianEig eig = hermitian_eig(s.rho);
  return eig.eigenvalues.back() >= 1.0 - kPurityTol;
}

namespace {

// Deterministic completion of k orthonormal columns to a full basis.
void complete_orthonormal(ComplexMatrix& basis, std::size_t have) {
  const std::size_t n = basis.dim();
  std::size_t next_seed = 0;
  for (std::size_t j = have; j < n; ++j) {
    std::vector<cx> v;
    while (true) {
      v.assign(n, cx{0.0, 0.0});
      v[next_seed % n] = 1.0;
      ++next_seed;
      // project out existing columns
      for (std::size_t c = 0; c < j; ++c) {
        cx ov{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) ov += std::conj(basis(i, c)) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= ov * basis(i, c);
      }
      double norm = 0.0;
      for (const auto& x : v) norm += std::norm(x);
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (auto& x : v) x /= norm;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) basis(i, j) = v[i];
  }
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const BipartiteState& s) {
  const HermitianEig eig = hermitian_eig(s.rho);
  if (eig.eigenvalues.back() < 1.0 - kPurityTol)
    throw NotPure("schmidt_decompose: largest eigenvalue " +
                  std::to_string(eig.eigenvalues.back()) + " < 1 - 1e-9");
  const std::size_t da = s.d_a, db = s.d_b;
  const std::size_t top = s.rho.dim() - 1;

  // |psi> reshaped to the d_a x d_b coefficient matrix
  std::vector<std::vector<cx>> m(da, std::vector<cx>(db));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) m[i][j] = eig.eigenvectors(i * db + j, top);

  // M M† on the A side gives the Schmidt basis and weights
  ComplexMatrix mmdag(da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t ip = 0; ip < da; ++ip) {
      cx v{0.0, 0.0};
      for (std::size_t j = 0; j < db; ++j) v += m[i][j] * std::conj(m[ip][j]);
      mmdag(i, ip) = v;
    }
  const HermitianEig aeig = hermitian_eig(mmdag);

  SchmidtDecomposition out;
  out.bases.basis_a = ComplexMatrix(da);
  out.bases.basis_b = ComplexMatrix(db);
  out.coefficients.assign(std::min(da, db), 0.0);

  std::size_t filled_b = 0;
  for (std::size_t k = 0; k < std::min(da, db); ++k) {
    const std::size_t src = da - 1 - k;  // descending weights
    const double w = std::max(0.0, aeig.eigenvalues[src]);
    out.coefficients[k] = w;
    for (std::size_t i = 0; i < da; ++i) out.bases.basis_a(i, k) = aeig.eigenvectors(i, src);
    if (w > 1e-14) {
      // partner vector: w_k = M^T conj(u_k) / sigma_k
      const double sigma = std::sqrt(w);
      for (std::size_t j = 0; j < db; ++j) {
        cx v{0.0, 0.0};
        for (std::size_t i = 0; i < da; ++i) v += m[i][j] * std::conj(aeig.eigenvectors(i, src));
        out.bases.basis_b(j, k) = v / sigma;
      }
      ++filled_b;
    }
  }
  // remaining A columns (d_a > Schmidt count) come straight from the eigenbasis
  for (std::size_t k = std::min(da, db); k < da; ++k) {
    const std::size_t src = da - 1 - k;
    for (std::size_t i = 0; i < da; ++i) out.bases.basis_a(i, k) = aeig.eigenvectors(i, src);
  }
  complete_orthonormal(out.bases.basis_b, filled_b);

  // weights sum to <psi|psi> = 1 up to eigensolver noise; normalize exactly
  double total = std::accumulate(out.coefficients.begin(), out.coefficients.end(), 0.0);
  if (total > 0.0)
    for (auto& c : out.coefficients) c /= total;
  return out;
}

MarginalBases marginal_eigenbases(const BipartiteState& s) {
  const HermitianEig ea = hermitian_eig(partial_trace(s, Subsystem::A));
  const HermitianEig eb = hermitian_eig(partial_trace(s, Subsystem::B));
  MarginalBases out;
  out.bases = {ea.eigenvectors, eb.eigenvectors};
  for (std::size_t k = 0; k + 1 < ea.eigenvalues.size(); ++k)
    if (ea.eigenvalues[k + 1] - ea.eigenvalues[k] < kDegenerateGapTol) out.degenerate = true;
  for (std::size_t k = 0; k + 1 < eb.eigenvalues.size(); ++k)
    if (eb.eigenvalues[k + 1] - eb.eigenvalues[k] < kDegenerateGapTol) out.degenerate = true;
  return out;
}

double energy(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian) {
  return real_trace_product(hamiltonian, rho);
}

double energy(const BipartiteState& s, const BipartiteHamiltonian& h) {
  return real_trace_product(h.total(), s.rho);
}

double energy(const ClassicalState& chi, const BipartiteHamiltonian& h) {
  if (h.kind() == HamiltonianKind::NonInteracting) {
    double e = 0.0;
    for (std::size_t i = 0; i < chi.d_a; ++i) {
      // <a_i|H_A|a_i>
      double ea = 0.0;
      for (std::size_t r = 0; r < chi.d_a; ++r)
        for (std::size_t c = 0; c < chi.d_a; ++c)
          ea += (std::conj(chi.bases.basis_a(r, i)) * h.local_a()(r, c) *
                 chi.bases.basis_a(c, i))
                    .real();
      for (std::size_t j = 0; j < chi.d_b; ++j) e += chi.at(i, j) * ea;
    }
    for (std::size_t j = 0; j < chi.d_b; ++j) {
      double eb = 0.0;
      for (std::size_t r = 0; r < chi.d_b; ++r)
        for (std::size_t c = 0; c < chi.d_b; ++c)
          eb += (std::conj(chi.bases.basis_b(r, j)) * h.local_b()(r, c) *
                 chi.bases.basis_b(c, j))
                    .real();
      for (std::size_t i = 0; i < chi.d_a; ++i) e += chi.at(i, j) * eb;
    }
    return e;
  }
  return real_trace_product(h.total(), chi.to_matrix());
}

BipartiteState random_state(std::size_t d_a, std::size_t d_b, std::size_t rank, Rng& rng) {
  const std::size_t n = d_a * d_b;
  if (rank < 1 || rank > n) throw ValidationError("random_state: rank out of range");
  std::vector<std::vector<cx>> g(n, std::vector<cx>(rank));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < rank; ++k) g[i][k] = cx{rng.normal(), rng.normal()};
  ComplexMatrix rho(n);
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cx v{0.0, 0.0};
      for (std::size_t k = 0; k < rank; ++k) v += g[i][k] * std::conj(g[j][k]);
      rho(i, j) = v;
      if (i == j) tr += v.real();
    }
  rho *= cx{1.0 / tr, 0.0};
  return {symmetrized(rho), d_a, d_b};
}

BipartiteState random_pure_state(std::size_t d_a, std::size_t d_b, Rng& rng) {
  return random_state(d_a, d_b, 1, rng);
}

ClassicalState random_classical(std::size_t d_a, std::size_t d_b, Rng& rng) {
  ClassicalState chi;
  chi.d_a = d_a;
  chi.d_b = d_b;
  chi.p = rng.dirichlet_flat(d_a * d_b);
  chi.bases = computational_bases(d_a, d_b);
  return chi;
}

std::vector<double> random_local_spectra(std::size_t d, Rng& rng) {
  std::vector<double> v(d);
  for (auto& x : v) x = rng.uniform();
  std::sort(v.begin(), v.end());
  return v;
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix u(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<cx> v(d);
    for (auto& x : v) x = cx{rng.normal(), rng.normal()};
    for (std::size_t c = 0; c < j; ++c) {
      cx ov{0.0, 0.0};
      for (std::size_t i = 0; i < d; ++i) ov += std::conj(u(i, c)) * v[i];
      for (std::size_t i = 0; i < d; ++i) v[i] -= ov * u(i, c);
    }
    double norm = 0.0;
    for (const auto& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) u(i, j) = v[i] / norm;
  }
  return u;
}

}  // namespace ergo
