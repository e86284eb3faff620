#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergo/contrib.hpp"

namespace ergo {

inline constexpr int kCsvSchemaVersion = 1;

struct ExperimentConfig {
  std::uint64_t seed = 12345;
  long long n = 100000;  // Monte Carlo samples per point
  std::size_t d_a = 2;
  std::size_t d_b = 6;  // fig2 sweeps d_b from 2 up to this value
  double mu_start = 0.0;
  double mu_stop = 1.0;
  double mu_step = 0.005;
  double R = 1.0;
  double epsilon = 1.0;
  double beta = 0.0;  // <= 0: per-state default 1 / spectral span
  std::string output_format = "csv";
  int shards = 1;
};

std::string config_json(const ExperimentConfig& cfg);

struct SweepRecord {
  double mu = 0.0;
  ContributionReport report;
  bool discontinuity = false;  // eta branch switch against the previous grid point
};

struct Fig1Result {
  ExperimentConfig config;
  std::vector<SweepRecord> records;
  double mu_c = 0.0;  // midpoint of the jump cell; NaN when no jump detected
};

// Sweeps the two-qubit model family over the mu grid, assembling the full
// contribution report per point, and locates the eta branch discontinuity.
Fig1Result run_fig1(const ExperimentConfig& cfg);

struct Fig2Record {
  std::size_t d_a = 0;
  std::size_t d_b = 0;
  long long n = 0;
  long long negatives = 0;  // occurrences of delta_C < -1e-12
  double estimate = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
};

struct Fig2Result {
  ExperimentConfig config;
  std::vector<Fig2Record> records;
};

// Monte Carlo probability of a negative classical contribution over random
// classical states and local spectra, per d_b, with Wilson 95% intervals.
Fig2Result run_fig2(const ExperimentConfig& cfg);

struct ExampleRow {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ExamplesResult {
  ExperimentConfig config;
  std::vector<ExampleRow> rows;
  bool all_pass = false;
};

// Recomputes every closed-form value of the worked examples next to the
// pipeline output and its absolute error.
ExamplesResult run_examples(const ExperimentConfig& cfg);

std::string fig1_csv(const Fig1Result& r);
std::string fig1_json(const Fig1Result& r);
std::string fig2_csv(const Fig2Result& r);
std::string fig2_json(const Fig2Result& r);
std::string examples_csv(const ExamplesResult& r);
std::string examples_json(const ExamplesResult& r);

}  // namespace ergo
