#include "ergo/experiments.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ergo/io.hpp"
#include "ergo/rng.hpp"

namespace ergo {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["schema_version"] = kCsvSchemaVersion;
  j["seed"] = cfg.seed;
  j["n"] = cfg.n;
  j["d_a"] = cfg.d_a;
  j["d_b"] = cfg.d_b;
  j["mu_start"] = cfg.mu_start;
  j["mu_stop"] = cfg.mu_stop;
  j["mu_step"] = cfg.mu_step;
  j["R"] = cfg.R;
  j["epsilon"] = cfg.epsilon;
  j["beta"] = cfg.beta;
  j["output_format"] = cfg.output_format;
  j["shards"] = cfg.shards;
  return j;
}

std::string csv_cell(double v) {
  if (std::isnan(v)) return "";
  return format_double(v);
}

std::string csv_cell(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : "";
}

void append_report_header(std::string& out) {
  out +=
      "energy,ergotropy,coherence,delta,delta_T,delta_C_eta,delta_L,delta_prime,"
      "delta_E,tilde_T,tilde_D,tilde_E,gap_EG,free_energy_gap,T,D,C,D_prime,L,"
      "eta_entropy,eta_energy_residual,eta_multistarts,eta_origin,"
      "bound_T_low,bound_T_high,bound_delta_low,bound_delta_high,"
      "bound_prime_low,bound_prime_high,decomposition_residual,prime_decomp_residual,"
      "marginal_degenerate,hamiltonian_degenerate,infinite_term,discontinuity";
}

void append_report_row(std::string& out, const ContributionReport& rep, bool discontinuity) {
  out += csv_cell(rep.energy_value) + ',' + csv_cell(rep.ergotropy_value) + ',' +
         csv_cell(rep.coherence) + ',' + csv_cell(rep.delta) + ',' + csv_cell(rep.delta_T) +
         ',' + csv_cell(rep.delta_C_eta) + ',' + csv_cell(rep.delta_L_value) + ',' +
         csv_cell(rep.delta_prime_value) + ',' + csv_cell(rep.delta_E) + ',' +
         csv_cell(rep.tilde_T) + ',' + csv_cell(rep.tilde_D) + ',' + csv_cell(rep.tilde_E) +
         ',' + csv_cell(rep.gap_EG) + ',' + csv_cell(rep.free_energy_gap_value) + ',' +
         csv_cell(rep.measures.T) + ',' + csv_cell(rep.measures.D) + ',' +
         csv_cell(rep.measures.C) + ',' + csv_cell(rep.measures.D_prime) + ',' +
         csv_cell(rep.measures.L) + ',' + csv_cell(rep.eta_entropy) + ',' +
         csv_cell(rep.eta_energy_residual) + ',' + std::to_string(rep.eta_multistarts) + ',' +
         rep.eta_origin + ',' + csv_cell(rep.bounds_T.lower) + ',' +
         csv_cell(rep.bounds_T.upper) + ',' + csv_cell(rep.bounds_delta.lower) + ',' +
         csv_cell(rep.bounds_delta.upper) + ',' + csv_cell(rep.bounds_prime.lower) + ',' +
         csv_cell(rep.bounds_prime.upper) + ',' + csv_cell(rep.decomposition_residual) + ',' +
         csv_cell(rep.prime_decomposition_residual) + ',' +
         (rep.marginal_degenerate ? "1" : "0") + ',' + (rep.hamiltonian_degenerate ? "1" : "0") + ',' +
         (rep.infinite_term ? "1" : "0") + ',' +
         (discontinuity ? "1" : "0");
}

ordered_json report_to_json_obj(const ContributionReport& rep, bool discontinuity) {
  ordered_json j;
  auto put = [&](const char* key, double v) {
    if (std::isnan(v))
      j[key] = nullptr;
    else
      j[key] = v;
  };
  put("energy", rep.energy_value);
  put("ergotropy", rep.ergotropy_value);
  put("coherence", rep.coherence);
  put("delta", rep.delta);
  put("delta_T", rep.delta_T);
  put("delta_C_eta", rep.delta_C_eta);
  put("delta_L", rep.delta_L_value);
  put("delta_prime", rep.delta_prime_value);
  if (rep.delta_E.has_value())
    j["delta_E"] = *rep.delta_E;
  else
    j["delta_E"] = nullptr;
  put("tilde_T", rep.tilde_T);
  put("tilde_D", rep.tilde_D);
  if (rep.tilde_E.has_value())
    j["tilde_E"] = *rep.tilde_E;
  else
    j["tilde_E"] = nullptr;
  put("gap_EG", rep.gap_EG);
  put("free_energy_gap", rep.free_energy_gap_value);
  put("T", rep.measures.T);
  put("D", rep.measures.D);
  put("C", rep.measures.C);
  put("D_prime", rep.measures.D_prime);
  put("L", rep.measures.L);
  put("eta_entropy", rep.eta_entropy);
  put("eta_energy_residual", rep.eta_energy_residual);
  j["eta_multistarts"] = rep.eta_multistarts;
  j["eta_origin"] = rep.eta_origin;
  put("bound_T_low", rep.bounds_T.lower);
  put("bound_T_high", rep.bounds_T.upper);
  put("bound_delta_low", rep.bounds_delta.lower);
  put("bound_delta_high", rep.bounds_delta.upper);
  put("bound_prime_low", rep.bounds_prime.lower);
  put("bound_prime_high", rep.bounds_prime.upper);
  put("decomposition_residual", rep.decomposition_residual);
  put("prime_decomp_residual", rep.prime_decomposition_residual);
  j["marginal_degenerate"] = rep.marginal_degenerate;
  j["hamiltonian_degenerate"] = rep.hamiltonian_degenerate;
  j["infinite_term"] = rep.infinite_term;
  j["discontinuity"] = discontinuity;
  return j;
}

}  // namespace

std::string config_json(const ExperimentConfig& cfg) { return config_to_json(cfg).dump(); }

Fig1Result run_fig1(const ExperimentConfig& cfg) {
  if (cfg.mu_step <= 0.0) throw ValidationError("fig1: mu_step must be positive");
  Fig1Result out;
  out.config = cfg;
  out.mu_c = std::numeric_limits<double>::quiet_NaN();

  const BipartiteHamiltonian h = qubitpair::model_hamiltonian(cfg.R, cfg.epsilon);
  const long long count =
      static_cast<long long>(std::floor((cfg.mu_stop - cfg.mu_start) / cfg.mu_step + 1e-9)) + 1;

  for (long long k = 0; k < count; ++k) {
    const double mu = std::min(cfg.mu_start + static_cast<double>(k) * cfg.mu_step, 1.0);
    const BipartiteState s = qubitpair::model_state(mu);
    ReportOptions ropts;
    ropts.beta = cfg.beta;
    if (mu > 0.5) {
      // feed the family constraint-curve solution to the generic search
      const ConstrainedClassicalResult fam = qubitpair::constrained_eta(mu, cfg.R, cfg.epsilon);
      ropts.eta.seed_candidates.push_back(fam.eta);
    }
    SweepRecord rec;
    rec.mu = mu;
    rec.report = contribution_report(s, h, ropts);
    out.records.push_back(std::move(rec));
  }

  // eta branch switch between adjacent grid points marks the discontinuity
  for (std::size_t k = 1; k < out.records.size(); ++k) {
    const double jump = frobenius_distance(out.records[k - 1].report.eta_state.to_matrix(),
                                           out.records[k].report.eta_state.to_matrix());
    if (jump > 0.1) {
      out.records[k].discontinuity = true;
      out.records[k].report.discontinuity = true;
      if (std::isnan(out.mu_c) && out.records[k].mu > 0.5)
        out.mu_c = 0.5 * (out.records[k - 1].mu + out.records[k].mu);
    }
  }
  return out;
}

Fig2Result run_fig2(const ExperimentConfig& cfg) {
  if (cfg.d_a < 2 || cfg.d_b < 2) throw ValidationError("fig2: dims must be >= 2");
  if (cfg.n < 1) throw ValidationError("fig2: n must be >= 1");
  if (cfg.shards < 1) throw ValidationError("fig2: shards must be >= 1");
  Fig2Result out;
  out.config = cfg;

  for (std::size_t db = 2; db <= cfg.d_b; ++db) {
    const std::uint64_t base_seed =
        cfg.seed + static_cast<std::uint64_t>(db - 2) * static_cast<std::uint64_t>(cfg.shards);
    auto shard_count = [&](int shard) {
      const long long share = cfg.n / cfg.shards;
      return share + (shard < cfg.n % cfg.shards ? 1 : 0);
    };
    auto run_shard = [&, db](int shard) -> long long {
      Rng rng(base_seed + static_cast<std::uint64_t>(shard));
      long long negatives = 0;
      const long long todo = shard_count(shard);
      for (long long i = 0; i < todo; ++i) {
        const std::vector<double> p = rng.dirichlet_flat(cfg.d_a * db);
        const std::vector<double> ea = random_local_spectra(cfg.d_a, rng);
        const std::vector<double> eb = random_local_spectra(db, rng);
        if (delta_classical_spectral(p, ea, eb) < -1e-12) ++negatives;
      }
      return negatives;
    };

    long long negatives = 0;
    if (cfg.shards == 1) {
      negatives = run_shard(0);
    } else {
      std::vector<std::future<long long>> futures;
      futures.reserve(cfg.shards);
      for (int shard = 0; shard < cfg.shards; ++shard)
        futures.push_back(std::async(std::launch::async, run_shard, shard));
      for (auto& f : futures) negatives += f.get();  // index-ordered merge
    }

    Fig2Record rec;
    rec.d_a = cfg.d_a;
    rec.d_b = db;
    rec.n = cfg.n;
    rec.negatives = negatives;
    rec.estimate = static_cast<double>(negatives) / static_cast<double>(cfg.n);
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(cfg.n);
    const double phat = rec.estimate;
    const double denom = 1.0 + z * z / nn;
    const double center = (phat + z * z / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / nn + z * z / (4.0 * nn * nn)) / denom;
    rec.wilson_low = negatives == 0 ? 0.0 : std::max(0.0, center - half);
    rec.wilson_high = negatives == cfg.n ? 1.0 : std::min(1.0, center + half);
    out.records.push_back(rec);
  }
  return out;
}

ExamplesResult run_examples(const ExperimentConfig& cfg) {
  ExamplesResult out;
  out.config = cfg;
  const double eps = cfg.epsilon;

  auto add = [&](const std::string& name, double expected, double computed, double tol) {
    ExampleRow row;
    row.name = name;
    row.expected = expected;
    row.computed = computed;
    row.abs_error = std::abs(expected - computed);
    row.tolerance = tol;
    row.pass = row.abs_error <= tol;
    out.rows.push_back(row);
  };

  // closest-classical-state discord of the model family
  for (const double mu : {0.1, 0.3, 0.45, 0.5, 0.7, 0.9}) {
    const DiscordResult d = discord_and_closest_classical(qubitpair::model_state(mu));
    std::ostringstream name;
    name << "discord mu=" << mu;
    add(name.str(), qubitpair::discord_exact(mu), d.discord, 1e-4);
  }

  // passive-state energy of the model family
  for (const double mu : {0.25, 0.5, 0.75}) {
    for (const double R : {0.5, 1.0, 2.0}) {
      const BipartiteHamiltonian h = qubitpair::model_hamiltonian(R, eps);
      const ErgotropyResult er = passive_state(qubitpair::model_state(mu).rho, h.total());
      std::ostringstream name;
      name << "passive energy mu=" << mu << " R=" << R;
      add(name.str(), qubitpair::passive_energy_exact(mu, R, eps), er.energy_passive, 1e-10);
    }
  }

  // discord contribution, low-mu closed form, via the constrained optimizer
  for (const double mu : {0.1, 0.3, 0.5}) {
    for (const double R : {0.5, 2.0}) {
      const BipartiteState s = qubitpair::model_state(mu);
      const BipartiteHamiltonian h = qubitpair::model_hamiltonian(R, eps);
      const ConstrainedClassicalResult eta = constrained_closest_classical(s, h);
      std::ostringstream name;
      name << "delta mu=" << mu << " R=" << R;
      add(name.str(), qubitpair::delta_exact_low_mu(mu, R, eps), delta_discord(s, h, eta),
          1e-5);
    }
  }

  // degenerate fields: discord survives, the contribution dies
  {
    const BipartiteState s = qubitpair::model_state(0.3);
    const BipartiteHamiltonian h = qubitpair::model_hamiltonian(1.0, eps);
    const ConstrainedClassicalResult eta = constrained_closest_classical(s, h);
    add("delta mu=0.3 R=1 (degenerate)", 0.0, delta_discord(s, h, eta), 1e-9);
  }

  // dephasing coherence contribution matches delta below mu = 1/2
  {
    const BipartiteState s = qubitpair::model_state(0.4);
    const BipartiteHamiltonian h = qubitpair::model_hamiltonian(2.0, eps);
    add("coherence mu=0.4 R=2", qubitpair::delta_exact_low_mu(0.4, 2.0, eps),
        coherence_contribution(s.rho, h.total()), 1e-10);
  }

  // Horodecki family entanglement contribution
  {
    ComplexMatrix hl(2);
    hl(1, 1) = eps;
    const BipartiteHamiltonian h = BipartiteHamiltonian::non_interacting(hl, hl);
    for (const int sign : {+1, -1}) {
      const HorodeckiFamily fam{0.5, sign};
      std::ostringstream name;
      name << "delta_E Horodecki p=0.5 sign=" << (sign > 0 ? "+" : "-");
      add(name.str(), -0.0625 * eps, delta_entanglement(fam, h), 1e-10);
      const BipartiteState hs = horodecki_state(fam);
      const TildeContributions tilde =
          tilde_contributions(hs, h, discord_and_closest_classical(hs).chi, fam);
      std::ostringstream name2;
      name2 << "tilde_E Horodecki p=0.5 sign=" << (sign > 0 ? "+" : "-");
      add(name2.str(), -0.0625 * eps, *tilde.tilde_E, 1e-10);
    }
  }

  // 2x3 counterexample partial sums and the negative classical contribution
  {
    const std::vector<double> p = {0.27, 0.04, 0.23, 0.26, 0.03, 0.17};
    const std::vector<double> x = classical_partial_sums(p, 2, 3);
    add("counterexample x1", -0.0162, x[0], 1e-10);
    add("counterexample x3", 0.014, x[2], 1e-10);
    add("counterexample x5", 0.0022, x[4], 1e-10);
    add("counterexample x1+x3+x5", 0.0, x[0] + x[2] + x[4], 1e-12);
    const std::vector<double> ea = {0.0, 0.6};
    const std::vector<double> eb = {0.0, 0.6, 1.0};
    add("counterexample delta_C", -0.00324, delta_classical_spectral(p, ea, eb), 1e-12);
  }

  // Bell state correlation values
  {
    ComplexMatrix rho(4);
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    rho(1, 2) = 0.5;
    rho(2, 1) = 0.5;
    const BipartiteState bell{rho, 2, 2};
    add("Bell mutual information", 2.0 * std::log(2.0), mutual_information(bell), 1e-10);
    add("Bell discord", std::log(2.0), discord_and_closest_classical(bell).discord, 1e-6);
  }

  // pure-state discord is the Schmidt-weight entropy
  {
    ComplexMatrix rho(4);
    rho(0, 0) = 0.8;
    rho(3, 3) = 0.2;
    rho(0, 3) = std::sqrt(0.8 * 0.2);
    rho(3, 0) = std::sqrt(0.8 * 0.2);
    const BipartiteState tilted{rho, 2, 2};
    const double expected = -(0.8 * std::log(0.8) + 0.2 * std::log(0.2));
    add("pure-state discord (0.8, 0.2)", expected,
        discord_and_closest_classical(tilted).discord, 1e-6);
  }

  out.all_pass = true;
  for (const auto& row : out.rows) out.all_pass = out.all_pass && row.pass;
  return out;
}

std::string fig1_csv(const Fig1Result& r) {
  std::string out = "# config " + config_json(r.config) + "\n";
  out += "schema_version,seed,mu,R,epsilon,beta,";
  append_report_header(out);
  out += "\n";
  for (const auto& rec : r.records) {
    out += std::to_string(kCsvSchemaVersion) + ',' + std::to_string(r.config.seed) + ',' +
           format_double(rec.mu) + ',' + format_double(r.config.R) + ',' +
           format_double(r.config.epsilon) + ',' + format_double(rec.report.beta) + ',';
    append_report_row(out, rec.report, rec.discontinuity);
    out += "\n";
  }
  return out;
}

std::string fig1_json(const Fig1Result& r) {
  ordered_json j;
  j["config"] = config_to_json(r.config);
  if (std::isnan(r.mu_c))
    j["mu_c"] = nullptr;
  else
    j["mu_c"] = r.mu_c;
  j["records"] = ordered_json::array();
  for (const auto& rec : r.records) {
    ordered_json rj = report_to_json_obj(rec.report, rec.discontinuity);
    ordered_json full;
    full["mu"] = rec.mu;
    full["beta"] = rec.report.beta;
    for (auto& [key, value] : rj.items()) full[key] = value;
    j["records"].push_back(full);
  }
  return j.dump(2) + "\n";
}

std::string fig2_csv(const Fig2Result& r) {
  std::string out = "# config " + config_json(r.config) + "\n";
  out += "schema_version,seed,d_a,d_b,n,negatives,estimate,wilson_low,wilson_high\n";
  for (const auto& rec : r.records) {
    out += std::to_string(kCsvSchemaVersion) + ',' + std::to_string(r.config.seed) + ',' +
           std::to_string(rec.d_a) + ',' + std::to_string(rec.d_b) + ',' +
           std::to_string(rec.n) + ',' + std::to_string(rec.negatives) + ',' +
           format_double(rec.estimate) + ',' + format_double(rec.wilson_low) + ',' +
           format_double(rec.wilson_high) + "\n";
  }
  return out;
}

std::string fig2_json(const Fig2Result& r) {
  ordered_json j;
  j["config"] = config_to_json(r.config);
  j["records"] = ordered_json::array();
  for (const auto& rec : r.records) {
    ordered_json rj;
    rj["d_a"] = rec.d_a;
    rj["d_b"] = rec.d_b;
    rj["n"] = rec.n;
    rj["negatives"] = rec.negatives;
    rj["estimate"] = rec.estimate;
    rj["wilson_low"] = rec.wilson_low;
    rj["wilson_high"] = rec.wilson_high;
    j["records"].push_back(rj);
  }
  return j.dump(2) + "\n";
}

std::string examples_csv(const ExamplesResult& r) {
  std::string out = "# config " + config_json(r.config) + "\n";
  out += "schema_version,name,expected,computed,abs_error,tolerance,pass\n";
  for (const auto& row : r.rows) {
    out += std::to_string(kCsvSchemaVersion) + ',' + row.name + ',' +
           format_double(row.expected) + ',' + format_double(row.computed) + ',' +
           format_double(row.abs_error) + ',' + format_double(row.tolerance) + ',' +
           (row.pass ? "1" : "0") + "\n";
  }
  return out;
}

std::string examples_json(const ExamplesResult& r) {
  ordered_json j;
  j["config"] = config_to_json(r.config);
  j["all_pass"] = r.all_pass;
  j["rows"] = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json rj;
    rj["name"] = row.name;
    rj["expected"] = row.expected;
    rj["computed"] = row.computed;
    rj["abs_error"] = row.abs_error;
    rj["tolerance"] = row.tolerance;
    rj["pass"] = row.pass;
    j["rows"].push_back(rj);
  }
  return j.dump(2) + "\n";
}

}  // namespace ergo
