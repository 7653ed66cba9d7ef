#include <benchmark/benchmark.h>

#include "pinvspec/clt.hpp"
#include "pinvspec/ensemble.hpp"
#include "pinvspec/monte_carlo.hpp"
#include "pinvspec/mp_solver.hpp"

using namespace pinvspec;

namespace {
const PopulationSpectrum kIso = PopulationSpectrum::point_mass(1.0);
}

static void BM_CompanionSolve(benchmark::State& state) {
  const Complex w(1.0, std::pow(10.0, -static_cast<double>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_companion(w, 2.0, kIso));
  }
}
BENCHMARK(BM_CompanionSolve)->DenseRange(0, 5);  // Im w from 1 down to 1e-5

static void BM_DensityGrid(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_limit_law(2.0, kIso, grid));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DensityGrid)->Arg(500)->Arg(2000)->Arg(8000);

static void BM_Pseudoinverse(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const SampleEnsemble e = build_ensemble(EntryLaw::gaussian(), kIso, p, p / 2, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pseudoinverse(e.S));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Pseudoinverse)->RangeMultiplier(2)->Range(25, 400)->Complexity();

static void BM_McReplicates(benchmark::State& state) {
  McConfig cfg;
  cfg.p = 200;
  cfg.n = 100;
  cfg.replications = static_cast<int>(state.range(0));
  cfg.master_seed = 7;
  cfg.threads = 2;
  cfg.proxy_grid = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_clt_experiment(cfg));
  }
}
BENCHMARK(BM_McReplicates)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_MeanQuadrature(benchmark::State& state) {
  const SpectralLimit lim = solve_limit_law(2.0, kIso, 1024);
  const RectContour contour = build_contour(lim, 0.1, 0.2, static_cast<int>(state.range(0)));
  const TestFunction g = TestFunction::monomial(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_non_centered(g, 2.0, kIso, 0.0, contour));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanQuadrature)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
