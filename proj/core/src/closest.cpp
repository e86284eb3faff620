#include "ergo/closest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ergo/optim.hpp"
#include "ergo/rng.hpp"

namespace ergo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

struct Candidate {
  ClassicalState eta;
  double entropy = 0.0;
  double residual = 0.0;
  std::string origin;
};

// Penalty objective over basis angles relative to reference bases.
struct PenaltyObjective {
  const BipartiteState* s;
  const BipartiteHamiltonian* h;
  ComplexMatrix ref_a, ref_b;
  std::size_t na = 0, nb = 0;
  double e_target = 0.0;
  double kappa = 0.0;

  LocalBasisPair bases(const std::vector<double>& x) const {
    LocalBasisPair lb;
    lb.basis_a = ref_a * unitary_from_angles(s->d_a, x.data());
    lb.basis_b = ref_b * unitary_from_angles(s->d_b, x.data() + na);
    return lb;
  }

  double operator()(const std::vector<double>& x) const {
    const ClassicalState chi = dephase_by_product_basis(*s, bases(x));
    const double res = energy(chi, *h) - e_target;
    return shannon_entropy(chi.p) + kappa * res * res;
  }
};

class EtaSearch {
 public:
  EtaSearch(const BipartiteState& s, const BipartiteHamiltonian& h, const EtaSearchOptions& opts)
      : s_(s), h_(h), opts_(opts), e_target_(energy(s, h)) {}

  ConstrainedClassicalResult run() {
    if (opts_.use_structured) add_structured();
    if (opts_.use_curve && s_.d_a == 2 && s_.d_b == 2 && !h_.interacting()) curve_strategy();
    if (opts_.use_penalty) penalty_strategy();
    return select();
  }

 private:
  void add_bases(const LocalBasisPair& bases, const std::string& origin) {
    Candidate c;
    c.eta = dephase_by_product_basis(s_, bases);
    c.entropy = shannon_entropy(c.eta.p);
    c.residual = energy(c.eta, h_) - e_target_;
    c.origin = origin;
    candidates_.push_back(std::move(c));
  }

  void add_structured() {
    const HermitianEig rho_eig = hermitian_eig(s_.rho);
    if (rho_eig.eigenvalues.back() >= 1.0 - kPurityTol)
      add_bases(schmidt_decompose(s_).bases, "schmidt");
    if (!h_.interacting()) {
      const HermitianEig ea = hermitian_eig(h_.local_a());
      const HermitianEig eb = hermitian_eig(h_.local_b());
      add_bases({ea.eigenvectors, eb.eigenvectors}, "energy-basis");
    }
    add_bases(marginal_eigenbases(s_).bases, "marginal");
    for (const auto& seed : opts_.seed_candidates) add_bases(seed.bases, "seed-basis");
  }

  // Two-qubit numeric constraint-curve strategy: root-find the energy
  // constraint along the A-side polar angle for gridded B-side angles and the
  // A-side azimuth, then polish the best section by Nelder-Mead.
  void curve_strategy() {
    auto eval_point = [&](double theta_a, double phi_a, double theta_b,
                          double phi_b) -> ClassicalState {
      const double xa[2] = {theta_a, phi_a};
      const double xb[2] = {theta_b, phi_b};
      LocalBasisPair lb{unitary_from_angles(2, xa), unitary_from_angles(2, xb)};
      return dephase_by_product_basis(s_, lb);
    };
    auto residual_at = [&](double ta, double pa, double tb, double pb) {
      return energy(eval_point(ta, pa, tb, pb), h_) - e_target_;
    };

    // best entropy over the energy-feasible theta_a roots of one section
    auto section_entropy = [&](double pa, double tb, double pb,
                               double* best_ta) -> double {
      const int scan = 48;
      double best = std::numeric_limits<double>::infinity();
      double prev_t = 0.0, prev_g = residual_at(0.0, pa, tb, pb);
      double gmax = std::abs(prev_g);
      auto try_root = [&](double ta) {
        const ClassicalState chi = eval_point(ta, pa, tb, pb);
        const double ent = shannon_entropy(chi.p);
        if (ent < best) {
          best = ent;
          if (best_ta) *best_ta = ta;
        }
      };
      if (std::abs(prev_g) < 1e-12) try_root(prev_t);
      for (int i = 1; i <= scan; ++i) {
        const double t = kPi * i / scan;
        const double g = residual_at(t, pa, tb, pb);
        gmax = std::max(gmax, std::abs(g));
        if (std::abs(g) < 1e-12) {
          try_root(t);
        } else if (prev_g * g < 0.0) {
          double lo = prev_t, hi = t, glo = prev_g;
          for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double gm = residual_at(mid, pa, tb, pb);
            if (gm == 0.0) {
              lo = hi = mid;
              break;
            }
            if (glo * gm < 0.0) {
              hi = mid;
            } else {
              lo = mid;
              glo = gm;
            }
          }
          try_root(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_g = g;
      }
      // constraint independent of theta_a and already satisfied: pick best S
      if (!std::isfinite(best) && gmax < 1e-12) {
        for (int i = 0; i <= scan; ++i) try_root(kPi * i / scan);
      }
      return best;
    };

    double best_val = std::numeric_limits<double>::infinity();
    double best_x[4] = {0, 0, 0, 0};  // theta_a, phi_a, theta_b, phi_b
    const int tb_grid = 48;
    for (int ib = 0; ib <= tb_grid; ++ib) {
      const double tb = kPi * ib / tb_grid;
      for (const double pb : {0.0, kPi / 2, kPi, 3 * kPi / 2}) {
        for (const double pa : {0.0, kPi / 2, kPi, 3 * kPi / 2}) {
          double ta = 0.0;
          const double v = section_entropy(pa, tb, pb, &ta);
          if (v < best_val) {
            best_val = v;
            best_x[0] = ta;
            best_x[1] = pa;
            best_x[2] = tb;
            best_x[3] = pb;
          }
        }
      }
    }
    if (!std::isfinite(best_val)) return;

    // polish the section parameters; theta_a is re-root-found inside
    auto polish_obj = [&](const std::vector<double>& x) {
      return section_entropy(x[0], x[1], x[2], nullptr);
    };
    NelderMeadOptions nm;
    nm.tol = opts_.nm_tol;
    nm.step = 0.15;
    const NelderMeadResult r =
        nelder_mead(polish_obj, {best_x[1], best_x[2], best_x[3]}, nm);
    double ta = 0.0;
    if (section_entropy(r.x[0], r.x[1], r.x[2], &ta) <= best_val) {
      best_x[0] = ta;
      best_x[1] = r.x[0];
      best_x[2] = r.x[1];
      best_x[3] = r.x[2];
    }
    const double xa[2] = {best_x[0], best_x[1]};
    const double xb[2] = {best_x[2], best_x[3]};
    add_bases({unitary_from_angles(2, xa), unitary_from_angles(2, xb)}, "curve");
  }

  void penalty_strategy() {
    const std::size_t na = basis_angle_count(s_.d_a);
    const std::size_t nb = basis_angle_count(s_.d_b);
    const std::size_t nangles = na + nb;

    struct Start {
      ComplexMatrix ref_a, ref_b;
      std::vector<double> x;
    };
    std::vector<Start> starts;
    const ComplexMatrix id_a = ComplexMatrix::identity(s_.d_a);
    const ComplexMatrix id_b = ComplexMatrix::identity(s_.d_b);

    const MarginalBases marg = marginal_eigenbases(s_);
    starts.push_back({marg.bases.basis_a, marg.bases.basis_b,
                      std::vector<double>(nangles, 0.0)});
    if (!h_.interacting()) {
      const HermitianEig ea = hermitian_eig(h_.local_a());
      const HermitianEig eb = hermitian_eig(h_.local_b());
      starts.push_back({ea.eigenvectors, eb.eigenvectors, std::vector<double>(nangles, 0.0)});
    }
    for (const auto& seed : opts_.seed_candidates)
      starts.push_back(
          {seed.bases.basis_a, seed.bases.basis_b, std::vector<double>(nangles, 0.0)});

    Rng rng(opts_.seed);
    while (static_cast<int>(starts.size()) < opts_.multistarts) {
      std::vector<double> x(nangles);
      for (std::size_t k = 0; k < nangles; ++k)
        x[k] = rng.uniform(0.0, (k % 2 == 0) ? kPi : kTwoPi);
      starts.push_back({id_a, id_b, std::move(x)});
    }

    NelderMeadOptions nm;
    nm.tol = opts_.nm_tol;
    for (const auto& start : starts) {
      PenaltyObjective obj{&s_, &h_, start.ref_a, start.ref_b, na, nb, e_target_, 0.0};
      std::vector<double> x = start.x;
      for (const double kappa : {1e1, 1e3, 1e5, 1e7}) {
        obj.kappa = kappa;
        x = nelder_mead(obj, std::move(x), nm).x;
      }
      project_onto_constraint(obj, x);
      add_bases(obj.bases(x), "penalty");
      ++penalty_starts_;
    }
  }

  // Land the energy constraint exactly by bisecting the single angle with the
  // strongest energy response, leaving the entropy as untouched as possible.
  void project_onto_constraint(const PenaltyObjective& obj, std::vector<double>& x) const {
    auto g = [&](const std::vector<double>& y) {
      return energy(dephase_by_product_basis(s_, obj.bases(y)), h_) - e_target_;
    };
    double g0 = g(x);
    if (std::abs(g0) < 1e-13) return;

    // rank angles by |dE/dtheta|
    std::vector<std::pair<double, std::size_t>> slope(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      std::vector<double> y = x;
      y[k] += 1e-4;
      const double gp = g(y);
      y[k] -= 2e-4;
      slope[k] = {std::abs(gp - g(y)), k};
    }
    std::stable_sort(slope.begin(), slope.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    for (const auto& [mag, k] : slope) {
      if (mag < 1e-14) break;
      const double t0 = x[k];
      for (const double radius : {1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0, kPi}) {
        for (const double dir : {1.0, -1.0}) {
          std::vector<double> y = x;
          y[k] = t0 + dir * radius;
          const double g1 = g(y);
          if (g0 * g1 < 0.0) {
            double lo = t0, hi = y[k], glo = g0;
            for (int it = 0; it < 100 && std::abs(hi - lo) > 1e-15; ++it) {
              const double mid = 0.5 * (lo + hi);
              y[k] = mid;
              const double gm = g(y);
              if (gm == 0.0) {
                lo = hi = mid;
                break;
              }
              if (glo * gm < 0.0) {
                hi = mid;
              } else {
                lo = mid;
                glo = gm;
              }
            }
            x[k] = 0.5 * (lo + hi);
            return;
          }
        }
      }
    }
  }

  ConstrainedClassicalResult select() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates_)
      if (std::abs(c.residual) <= opts_.energy_tol) best = std::min(best, c.entropy);
    if (!std::isfinite(best))
      throw InfeasibleConstraint(
          "constrained_closest_classical: no dephasing meets the energy constraint");
    // exact-construction candidates registered first win numerical ties
    for (const auto& c : candidates_) {
      if (std::abs(c.residual) <= opts_.energy_tol && c.entropy <= best + 1e-9) {
        ConstrainedClassicalResult out;
        out.eta = c.eta;
        out.entropy = c.entropy;
        out.energy_residual = c.residual;
        out.multistart_count = penalty_starts_;
        out.origin = c.origin;
        return out;
      }
    }
    throw InfeasibleConstraint("constrained_closest_classical: selection failed");
  }

  const BipartiteState& s_;
  const BipartiteHamiltonian& h_;
  EtaSearchOptions opts_;
  double e_target_;
  std::vector<Candidate> candidates_;
  int penalty_starts_ = 0;
};

}  // namespace

ConstrainedClassicalResult constrained_closest_classical(const BipartiteState& s,
                                                         const BipartiteHamiltonian& h,
                                                         const EtaSearchOptions& opts) {
  if (s.d_a > 4 || s.d_b > 4)
    throw DimensionTooLarge("constrained_closest_classical: scope is d_a, d_b <= 4");
  if (h.dim() != s.rho.dim())
    throw DimensionMismatch("constrained_closest_classical: state/Hamiltonian mismatch");
  return EtaSearch(s, h, opts).run();
}

ClassicalState marginal_eigenbasis_dephasing(const BipartiteState& s, bool* degenerate) {
  const MarginalBases marg = marginal_eigenbases(s);
  if (degenerate) *degenerate = marg.degenerate;
  return dephase_by_product_basis(s, marg.bases);
}

namespace qubitpair {

BipartiteState model_state(double mu) {
  if (mu < 0.0 || mu > 1.0) throw ValidationError("qubitpair: mu must lie in [0, 1]");
  ComplexMatrix rho(4);
  // mu |0,+><0,+| occupies the upper 2x2 block
  rho(0, 0) = mu / 2;
  rho(0, 1) = mu / 2;
  rho(1, 0) = mu / 2;
  rho(1, 1) = mu / 2;
  rho(3, 3) = 1.0 - mu;
  return {rho, 2, 2};
}

BipartiteHamiltonian model_hamiltonian(double R, double epsilon) {
  if (R < 0.0 || epsilon < 0.0)
    throw ValidationError("qubitpair: R and epsilon must be non-negative");
  ComplexMatrix ha(2), hb(2);
  ha(1, 1) = R * epsilon;
  hb(1, 1) = epsilon;
  return BipartiteHamiltonian::non_interacting(ha, hb);
}

double constraint_curve_f(double a, double b, double mu, double R) {
  return 2.0 * (1.0 - a) * a * R * (2.0 * mu - 1.0) -
         2.0 * (1.0 - b) * b * (1.0 - mu) +
         (1.0 - 2.0 * b) * std::sqrt((1.0 - b) * b) * mu;
}

namespace {

// f with the B-basis azimuth cosine as a free parameter; c = 1 recovers the
// vanishing-azimuth section of constraint_curve_f.
double curve_f_c(double a, double b, double mu, double R, double c) {
  return 2.0 * (1.0 - a) * a * R * (2.0 * mu - 1.0) -
         2.0 * (1.0 - b) * b * (1.0 - mu) +
         (1.0 - 2.0 * b) * std::sqrt((1.0 - b) * b) * mu * c;
}

double family_entropy(double a, double b, double c, double mu) {
  const double hplus = 0.5 * (1.0 + 2.0 * std::sqrt(b * (1.0 - b)) * c);
  const double p[4] = {
      mu * a * hplus + (1.0 - mu) * (1.0 - a) * (1.0 - b),
      mu * a * (1.0 - hplus) + (1.0 - mu) * (1.0 - a) * b,
      mu * (1.0 - a) * hplus + (1.0 - mu) * a * (1.0 - b),
      mu * (1.0 - a) * (1.0 - hplus) + (1.0 - mu) * a * b,
  };
  double s = 0.0;
  for (const double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

// a-roots of the energy constraint for a fixed (b, c) section: bisected sign
// changes on a scan grid plus the closed-form quadratic roots.
std::vector<double> family_a_roots(double b, double c, double mu, double R) {
  std::vector<double> roots;
  const int scan = 64;
  double prev_a = 0.0, prev_f = curve_f_c(0.0, b, mu, R, c);
  if (std::abs(prev_f) < 1e-13) roots.push_back(0.0);
  for (int i = 1; i <= scan; ++i) {
    const double a = static_cast<double>(i) / scan;
    const double f = curve_f_c(a, b, mu, R, c);
    if (std::abs(f) < 1e-13) {
      roots.push_back(a);
    } else if (prev_f * f < 0.0) {
      double lo = prev_a, hi = a, flo = prev_f;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = curve_f_c(mid, b, mu, R, c);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_a = a;
    prev_f = f;
  }
  // closed form: f = A2 a(1-a) + K, catches tangency the scan cannot see
  const double a2 = 2.0 * R * (2.0 * mu - 1.0);
  const double k = curve_f_c(0.0, b, mu, R, c);
  if (std::abs(a2) > 1e-14) {
    const double g = -k / a2;
    if (g >= -1e-14 && g <= 0.25 + 1e-14) {
      const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * g));
      for (const double a : {0.5 * (1.0 - disc), 0.5 * (1.0 + disc)}) {
        bool dup = false;
        for (const double r : roots) dup = dup || std::abs(r - a) < 1e-9;
        if (!dup) roots.push_back(std::clamp(a, 0.0, 1.0));
      }
    }
  }
  // the roots pair up as a <-> 1-a with equal entropy (a reflection that
  // commutes with the fields); descending order makes the winner stable
  std::sort(roots.begin(), roots.end(), std::greater<double>());
  return roots;
}

LocalBasisPair family_bases(double a, double b, double beta_azimuth) {
  ComplexMatrix ba(2), bb(2);
  const double sa = std::sqrt(std::clamp(a, 0.0, 1.0));
  const double ca = std::sqrt(std::clamp(1.0 - a, 0.0, 1.0));
  ba(0, 0) = sa;
  ba(1, 0) = ca;
  ba(0, 1) = ca;
  ba(1, 1) = -sa;
  const double sb = std::sqrt(std::clamp(b, 0.0, 1.0));
  const double cb = std::sqrt(std::clamp(1.0 - b, 0.0, 1.0));
  const cx eb{std::cos(beta_azimuth), std::sin(beta_azimuth)};
  bb(0, 0) = sb;
  bb(1, 0) = cb * eb;
  bb(0, 1) = cb;
  bb(1, 1) = -sb * eb;
  return {ba, bb};
}

}  // namespace

ConstrainedClassicalResult constrained_eta(double mu, double R, double epsilon, int b_grid) {
  const BipartiteState s = model_state(mu);
  const BipartiteHamiltonian h = model_hamiltonian(R, epsilon);
  const double e_target = energy(s, h);

  std::vector<Candidate> candidates;
  auto add_bases = [&](const LocalBasisPair& bases, const std::string& origin) {
    Candidate c;
    c.eta = dephase_by_product_basis(s, bases);
    c.entropy = shannon_entropy(c.eta.p);
    c.residual = energy(c.eta, h) - e_target;
    c.origin = origin;
    candidates.push_back(std::move(c));
  };

  if (mu <= kPurityTol || mu >= 1.0 - kPurityTol)
    add_bases(schmidt_decompose(s).bases, "schmidt");
  add_bases(computational_bases(2, 2), "energy-basis");
  add_bases(marginal_eigenbases(s).bases, "marginal");

  if (mu > 0.5) {
    // Scan the constraint curve: b grid x azimuth-cosine grid, a bisected.
    // (b, c) -> (1-b, -c) relabels the same projector pair up to conjugation,
    // so c is canonicalized to [0, 1]; the optimum azimuth is re-discovered
    // inside that range rather than assumed to vanish.
    double best_s = std::numeric_limits<double>::infinity();
    double best_a = 0.0, best_b = 0.0, best_c = 1.0;
    auto scan_section = [&](double b, double c) {
      for (const double a : family_a_roots(b, c, mu, R)) {
        const double ent = family_entropy(a, b, c, mu);
        if (ent < best_s - 1e-12) {
          best_s = ent;
          best_a = a;
          best_b = b;
          best_c = c;
        }
      }
    };
    const int c_grid = 16;
    for (int ib = 0; ib < b_grid; ++ib) {
      const double b = static_cast<double>(ib) / (b_grid - 1);
      for (int ic = 0; ic <= c_grid; ++ic) scan_section(b, static_cast<double>(ic) / c_grid);
    }
    if (std::isfinite(best_s)) {
      // polish the (b, c) section; the optimum azimuth is re-discovered here
      auto section = [&](const std::vector<double>& x) {
        const double b = std::clamp(x[0], 0.0, 1.0);
        const double c = std::clamp(x[1], 0.0, 1.0);
        double v = std::numeric_limits<double>::infinity();
        for (const double a : family_a_roots(b, c, mu, R))
          v = std::min(v, family_entropy(a, b, c, mu));
        return v;
      };
      NelderMeadOptions nm;
      nm.tol = 1e-12;
      nm.step = 1.0 / (b_grid - 1);
      const NelderMeadResult r = nelder_mead(section, {best_b, best_c}, nm);
      if (std::isfinite(r.value) && r.value < best_s - 1e-12) {
        const double nb = std::clamp(r.x[0], 0.0, 1.0);
        const double nc = std::clamp(r.x[1], 0.0, 1.0);
        double root_best = std::numeric_limits<double>::infinity();
        double root_a = best_a;
        for (const double a : family_a_roots(nb, nc, mu, R)) {
          const double ent = family_entropy(a, nb, nc, mu);
          if (ent < root_best - 1e-12) {
            root_best = ent;
            root_a = a;
          }
        }
        if (root_best < best_s - 1e-12) {
          best_s = root_best;
          best_a = root_a;
          best_b = nb;
          best_c = nc;
        }
      }
      add_bases(family_bases(best_a, best_b, std::acos(best_c)), "curve");
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates)
    if (std::abs(c.residual) <= 1e-8) best = std::min(best, c.entropy);
  if (!std::isfinite(best))
    throw InfeasibleConstraint("qubitpair::constrained_eta: no feasible candidate");
  for (const auto& c : candidates) {
    if (std::abs(c.residual) <= 1e-8 && c.entropy <= best + 1e-9) {
      ConstrainedClassicalResult out;
      out.eta = c.eta;
      out.entropy = c.entropy;
      out.energy_residual = c.residual;
      out.multistart_count = b_grid;
      out.origin = c.origin;
      return out;
    }
  }
  throw InfeasibleConstraint("qubitpair::constrained_eta: selection failed");
}

double discord_exact(double mu) { return std::min(mu, 1.0 - mu) * std::log(2.0); }

double passive_energy_exact(double mu, double R, double epsilon) {
  return std::min(1.0, R) * epsilon * std::min(mu, 1.0 - mu);
}

double delta_exact_low_mu(double mu, double R, double epsilon) {
  return std::abs(1.0 - R) * epsilon * mu / 2.0;
}

}  // namespace qubitpair

BipartiteState horodecki_state(const HorodeckiFamily& fam) {
  if (fam.p < 0.0 || fam.p > 1.0) throw ValidationError("horodecki: p must lie in [0, 1]");
  if (fam.sign != 1 && fam.sign != -1) throw ValidationError("horodecki: sign must be ±1");
  ComplexMatrix rho(4);
  rho(0, 0) = 1.0 - fam.p;
  rho(1, 1) = fam.p / 2;
  rho(2, 2) = fam.p / 2;
  rho(1, 2) = fam.sign * fam.p / 2;
  rho(2, 1) = fam.sign * fam.p / 2;
  return {rho, 2, 2};
}

BipartiteState horodecki_closest_separable(const HorodeckiFamily& fam) {
  if (fam.p < 0.0 || fam.p > 1.0) throw ValidationError("horodecki: p must lie in [0, 1]");
  const double pp = fam.p / 2;
  const double qp = 1.0 - pp;
  ComplexMatrix sigma(4);
  sigma(0, 0) = qp * qp;
  sigma(1, 1) = pp * qp;
  sigma(2, 2) = pp * qp;
  sigma(1, 2) = fam.sign * pp * qp;
  sigma(2, 1) = fam.sign * pp * qp;
  sigma(3, 3) = pp * pp;
  return {sigma, 2, 2};
}

std::optional<HorodeckiFamily> detect_horodecki(const BipartiteState& s, double tol) {
  if (s.d_a != 2 || s.d_b != 2) return std::nullopt;
  const ComplexMatrix& m = s.rho;
  const double p = m(1, 1).real() + m(2, 2).real();
  const int sign = m(1, 2).real() >= 0.0 ? +1 : -1;
  HorodeckiFamily fam{std::clamp(p, 0.0, 1.0), sign};
  const BipartiteState ref = horodecki_state(fam);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (std::abs(m(i, j) - ref.rho(i, j)) > tol) return std::nullopt;
  return fam;
}

}  // namespace ergo
