#pragma once

#include <cstddef>
#include <vector>

#include "ergo/matrix.hpp"
#include "ergo/rng.hpp"

namespace ergo {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kStatePsdTol = 1e-10;
inline constexpr double kPurityTol = 1e-9;         // pure iff lambda_max >= 1 - this
inline constexpr double kDegenerateGapTol = 1e-9;  // marginal eigenvalue gap

enum class Subsystem { A, B };

// Density matrix tagged with the tensor factor dimensions; index convention
// k = i * d_b + j for |i>_A |j>_B.
struct BipartiteState {
  ComplexMatrix rho;
  std::size_t d_a = 0;
  std::size_t d_b = 0;
};

// Throws ValidationError subtypes on dimension/trace/hermiticity/PSD violations.
void validate_state(const BipartiteState& s);

enum class HamiltonianKind { NonInteracting, General };

// H = H_A ⊗ 1 + 1 ⊗ H_B, or an arbitrary Hermitian joint observable.
class BipartiteHamiltonian {
 public:
  BipartiteHamiltonian() = default;  // empty; fill via the named constructors

  static BipartiteHamiltonian non_interacting(ComplexMatrix h_a, ComplexMatrix h_b);
  static BipartiteHamiltonian general(ComplexMatrix h, std::size_t d_a, std::size_t d_b);

  HamiltonianKind kind() const { return kind_; }
  bool interacting() const { return kind_ == HamiltonianKind::General; }
  const ComplexMatrix& total() const { return total_; }
  const ComplexMatrix& local_a() const;  // NonInteracting only
  const ComplexMatrix& local_b() const;
  std::size_t d_a() const { return d_a_; }
  std::size_t d_b() const { return d_b_; }
  std::size_t dim() const { return total_.dim(); }

  // max eigenvalue - min eigenvalue of the total Hamiltonian
  double spectral_span() const;

 private:
  HamiltonianKind kind_ = HamiltonianKind::General;
  ComplexMatrix h_a_, h_b_, total_;
  std::size_t d_a_ = 0, d_b_ = 0;
};

// Columns are orthonormal local basis vectors (rank-one projector sets).
struct LocalBasisPair {
  ComplexMatrix basis_a;
  ComplexMatrix basis_b;
};

LocalBasisPair computational_bases(std::size_t d_a, std::size_t d_b);

// chi = sum_ij p_ij P_i^A ⊗ P_j^B, stored as the joint table plus the bases.
struct ClassicalState {
  std::vector<double> p;  // row-major d_a x d_b
  std::size_t d_a = 0;
  std::size_t d_b = 0;
  LocalBasisPair bases;

  double at(std::size_t i, std::size_t j) const { return p[i * d_b + j]; }
  std::vector<double> marginal_a() const;  // row sums
  std::vector<double> marginal_b() const;  // column sums
  ComplexMatrix to_matrix() const;
  BipartiteState to_state() const;
};

ComplexMatrix partial_trace(const BipartiteState& s, Subsystem keep);
BipartiteState product_of_marginals(const BipartiteState& s);

ClassicalState dephase_by_product_basis(const BipartiteState& s, const LocalBasisPair& bases);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // p_i = squared Schmidt coefficients, descending
  LocalBasisPair bases;              // Schmidt vectors as basis columns
};

// Requires lambda_max(rho) >= 1 - kPurityTol, otherwise throws NotPure.
SchmidtDecomposition schmidt_decompose(const BipartiteState& s);

bool is_pure(const BipartiteState& s);

struct MarginalBases {
  LocalBasisPair bases;
  bool degenerate = false;  // an eigenvalue gap below kDegenerateGapTol
};

// Eigenbases of the reduced states, deterministic eigensolver convention.
MarginalBases marginal_eigenbases(const BipartiteState& s);

double energy(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian);
double energy(const BipartiteState& s, const BipartiteHamiltonian& h);
double energy(const ClassicalState& chi, const BipartiteHamiltonian& h);

// Ginibre sampling: rho = G G† / tr with G a dim x rank standard complex
// Gaussian matrix; full rank by default.
BipartiteState random_state(std::size_t d_a, std::size_t d_b, std::size_t rank, Rng& rng);
BipartiteState random_pure_state(std::size_t d_a, std::size_t d_b, Rng& rng);

// flat-Dirichlet joint table in the computational bases
ClassicalState random_classical(std::size_t d_a, std::size_t d_b, Rng& rng);

// i.i.d. uniform [0,1], sorted ascending
std::vector<double> random_local_spectra(std::size_t d, Rng& rng);

// Haar-ish unitary via Gram-Schmidt on a Ginibre matrix (deterministic in rng)
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

}  // namespace ergo
