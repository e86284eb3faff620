#include <benchmark/benchmark.h>

#include "ergo/closest.hpp"
#include "ergo/contrib.hpp"
#include "ergo/entropy.hpp"
#include "ergo/ergotropy.hpp"
#include "ergo/rng.hpp"

namespace {

ergo::ComplexMatrix random_hermitian(std::size_t n, ergo::Rng& rng) {
  ergo::ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      const ergo::cx v{rng.normal(), rng.normal()};
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

void BM_HermitianEig(benchmark::State& state) {
  ergo::Rng rng(1);
  const ergo::ComplexMatrix m = random_hermitian(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ergo::hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_Ergotropy(benchmark::State& state) {
  ergo::Rng rng(2);
  const ergo::BipartiteState s = ergo::random_state(2, 3, 6, rng);
  const ergo::ComplexMatrix h = random_hermitian(6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ergo::ergotropy(s.rho, h));
}
BENCHMARK(BM_Ergotropy);

void BM_Discord2x2(benchmark::State& state) {
  ergo::Rng rng(3);
  const ergo::BipartiteState s = ergo::random_state(2, 2, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ergo::discord_and_closest_classical(s));
}
BENCHMARK(BM_Discord2x2)->Unit(benchmark::kMillisecond);

void BM_ConstrainedEta2x2(benchmark::State& state) {
  ergo::Rng rng(4);
  const ergo::BipartiteState s = ergo::random_state(2, 2, 4, rng);
  ergo::ComplexMatrix ha(2), hb(2);
  ha(1, 1) = 1.3;
  hb(1, 1) = 1.0;
  const ergo::BipartiteHamiltonian h = ergo::BipartiteHamiltonian::non_interacting(ha, hb);
  for (auto _ : state)
    benchmark::DoNotOptimize(ergo::constrained_closest_classical(s, h));
}
BENCHMARK(BM_ConstrainedEta2x2)->Unit(benchmark::kMillisecond);

void BM_DeltaClassicalSpectral(benchmark::State& state) {
  ergo::Rng rng(5);
  const std::vector<double> p = rng.dirichlet_flat(12);
  const std::vector<double> ea = ergo::random_local_spectra(2, rng);
  const std::vector<double> eb = ergo::random_local_spectra(6, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(ergo::delta_classical_spectral(p, ea, eb));
}
BENCHMARK(BM_DeltaClassicalSpectral);

void BM_FamilyCurveEta(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(ergo::qubitpair::constrained_eta(0.7, 1.0, 1.0));
}
BENCHMARK(BM_FamilyCurveEta)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
