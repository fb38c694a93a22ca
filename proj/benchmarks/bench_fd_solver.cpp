#include <benchmark/benchmark.h>

#include "quadlaw/fd_solver.hpp"

using namespace quadlaw;

namespace {

PiecewiseInitialData standard_riemann() {
  return {ComponentData::step(-1, 1), ComponentData::step(2, 2),
          ComponentData::step(1, 1), ComponentData::step(0, 0)};
}

}  // namespace

static void BM_FDStep(benchmark::State& state) {
  const FDGrid grid{-4.0, 4.0, static_cast<int>(state.range(0)), 0.9};
  const Viscosities nu = Viscosities::from_gamma(0.5);
  FDState s = init_state(standard_riemann(), grid);
  const double dt = 0.5 * max_stable_dt(s, grid, nu);
  for (auto _ : state) {
    s = step(s, grid, nu, dt);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * grid.n_points() * 4);
}
BENCHMARK(BM_FDStep)->Arg(1000)->Arg(4000)->Arg(16000);

static void BM_FDRun(benchmark::State& state) {
  const FDGrid grid{-4.0, 4.0, 800, 0.9};
  const Viscosities nu = Viscosities::from_gamma(0.5);
  const PiecewiseInitialData data = standard_riemann();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(data, grid, nu, 0.05));
  }
}
BENCHMARK(BM_FDRun)->Unit(benchmark::kMillisecond);
