// Command-line front end: ergotropy and correlation-contribution reports for
// bipartite states, plus the figure sweeps and worked-example checks.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ergo/contrib.hpp"
#include "ergo/experiments.hpp"
#include "ergo/io.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ergo::ValidationError("cannot open output file " + out_path);
  f << text;
}

int run_selftest() {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  // eigensolver round trip on a fixed Hermitian matrix
  {
    ergo::ComplexMatrix m(3);
    m(0, 0) = 1.0;
    m(1, 1) = -0.5;
    m(2, 2) = 0.25;
    m(0, 1) = ergo::cx{0.3, 0.1};
    m(1, 0) = ergo::cx{0.3, -0.1};
    m(1, 2) = ergo::cx{-0.2, 0.4};
    m(2, 1) = ergo::cx{-0.2, -0.4};
    const ergo::HermitianEig eig = ergo::hermitian_eig(m);
    const ergo::ComplexMatrix back =
        ergo::from_eigensystem(eig.eigenvalues, eig.eigenvectors);
    check("eigendecomposition round trip", ergo::frobenius_distance(m, back) < 1e-9);
  }

  // passive-state permutation oracle at dim 4
  {
    ergo::Rng rng(7);
    const ergo::BipartiteState s = ergo::random_state(2, 2, 4, rng);
    const std::vector<double> eps = {0.0, 0.4, 0.9, 1.7};
    const ergo::ComplexMatrix h = ergo::ComplexMatrix::diag(eps);
    const double e_passive = ergo::passive_state(s.rho, h).energy_passive;
    std::vector<double> r = ergo::hermitian_eig(s.rho).eigenvalues;
    std::sort(r.begin(), r.end());
    double best = 1e300;
    std::vector<int> idx = {0, 1, 2, 3};
    do {
      double e = 0.0;
      for (int k = 0; k < 4; ++k) e += eps[k] * r[idx[k]];
      best = std::min(best, e);
    } while (std::next_permutation(idx.begin(), idx.end()));
    check("passive energy equals permutation minimum", std::abs(best - e_passive) < 1e-12);
  }

  // worked-example closed forms
  {
    ergo::ExperimentConfig cfg;
    const ergo::ExamplesResult ex = ergo::run_examples(cfg);
    for (const auto& row : ex.rows) check(row.name, row.pass);
  }

  std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergo: ergotropy-based correlation quantifiers for bipartite states"};
  app.require_subcommand(1);

  ergo::ExperimentConfig cfg;
  std::string state_path;
  std::string out_path;
  double mu = -1.0;  // <0: not supplied

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed recorded in every output");
    sub->add_option("--format", cfg.output_format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "Output file (stdout when omitted)");
    sub->add_option("--beta", cfg.beta, "Inverse temperature (default 1/spectral span)");
  };

  CLI::App* erg = app.add_subcommand("ergotropy", "Ergotropy of a state file");
  erg->add_option("--state", state_path, "JSON state file")->required();
  add_common(erg);

  CLI::App* rep = app.add_subcommand("report", "Full contribution report");
  rep->add_option("--state", state_path, "JSON state file (or use --mu/--R)");
  rep->add_option("--mu", mu, "Model-family mu in [0,1] when no state file is given");
  rep->add_option("--R", cfg.R, "Model-family local field ratio");
  rep->add_option("--epsilon", cfg.epsilon, "Energy unit of the model family");
  add_common(rep);

  CLI::App* fig1 = app.add_subcommand("fig1", "Model-family delta sweep over mu");
  fig1->add_option("--R", cfg.R, "Local field ratio (default 1)");
  fig1->add_option("--epsilon", cfg.epsilon, "Energy unit");
  fig1->add_option("--mu-start", cfg.mu_start, "Grid start (default 0)");
  fig1->add_option("--mu-stop", cfg.mu_stop, "Grid stop (default 1)");
  fig1->add_option("--mu-step", cfg.mu_step, "Grid step (default 0.005)");
  add_common(fig1);

  CLI::App* fig2 = app.add_subcommand("fig2", "Probability of negative delta_C vs d_B");
  fig2->add_option("--da", cfg.d_a, "Fixed d_A (default 2)");
  fig2->add_option("--db", cfg.d_b, "Largest d_B of the sweep (default 6)");
  fig2->add_option("--n", cfg.n, "Samples per d_B (default 100000)");
  fig2->add_option("--shards", cfg.shards, "Monte Carlo shards (default 1)");
  add_common(fig2);

  CLI::App* examples = app.add_subcommand("examples", "Closed-form worked-example table");
  examples->add_option("--epsilon", cfg.epsilon, "Energy unit");
  add_common(examples);

  app.add_subcommand("selftest", "Fast internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << ergo::error_json("cli", e.what());
    return 1;
  }

  try {
    if (app.got_subcommand("selftest")) return run_selftest();

    if (app.got_subcommand("ergotropy")) {
      const ergo::StateFile f = ergo::read_state_file(state_path);
      const ergo::ErgotropyResult er =
          ergo::passive_state(f.state.rho, f.hamiltonian.total());
      std::string text = "energy,passive_energy,ergotropy\n";
      text += ergo::format_double(er.energy_initial) + ',' +
              ergo::format_double(er.energy_passive) + ',' +
              ergo::format_double(er.ergotropy) + "\n";
      write_output(text, out_path);
      return 0;
    }

    if (app.got_subcommand("report")) {
      ergo::StateFile f;
      ergo::ReportOptions ropts;
      ropts.beta = cfg.beta;
      if (!state_path.empty()) {
        f = ergo::read_state_file(state_path);
      } else if (mu >= 0.0) {
        f.state = ergo::qubitpair::model_state(mu);
        f.hamiltonian = ergo::qubitpair::model_hamiltonian(cfg.R, cfg.epsilon);
        if (mu > 0.5)
          ropts.eta.seed_candidates.push_back(
              ergo::qubitpair::constrained_eta(mu, cfg.R, cfg.epsilon).eta);
      } else {
        throw ergo::ValidationError("report: provide --state or --mu");
      }
      const ergo::ContributionReport report =
          ergo::contribution_report(f.state, f.hamiltonian, ropts);
      write_output(cfg.output_format == "json" ? ergo::report_json(report)
                                               : ergo::report_csv(report),
                   out_path);
      return 0;
    }

    if (app.got_subcommand("fig1")) {
      const ergo::Fig1Result r = ergo::run_fig1(cfg);
      write_output(cfg.output_format == "json" ? ergo::fig1_json(r) : ergo::fig1_csv(r),
                   out_path);
      return 0;
    }

    if (app.got_subcommand("fig2")) {
      const ergo::Fig2Result r = ergo::run_fig2(cfg);
      write_output(cfg.output_format == "json" ? ergo::fig2_json(r) : ergo::fig2_csv(r),
                   out_path);
      return 0;
    }

    if (app.got_subcommand("examples")) {
      const ergo::ExamplesResult r = ergo::run_examples(cfg);
      write_output(cfg.output_format == "json" ? ergo::examples_json(r)
                                               : ergo::examples_csv(r),
                   out_path);
      return r.all_pass ? 0 : 2;
    }
  } catch (const ergo::NumericalError& e) {
    std::cerr << ergo::error_json("numerical", e.what());
    return 2;
  } catch (const ergo::ValidationError& e) {
    std::cerr << ergo::error_json("validation", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << ergo::error_json("internal", e.what());
    return 1;
  }
  return 0;
}
