#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "quadlaw/distributions.hpp"

using namespace quadlaw;

namespace {

PiecewiseInitialData standard_riemann() {
  return {ComponentData::step(-1, 1), ComponentData::step(2, 2),
          ComponentData::step(1, 1), ComponentData::step(0, 0)};
}

const Primitives& shared_prims() {
  static const Primitives p = build_primitives(standard_riemann(), {});
  return p;
}

}  // namespace

static void BM_BuildPrimitives(benchmark::State& state) {
  const PiecewiseInitialData data = standard_riemann();
  for (auto _ : state) {
    Primitives p = build_primitives(data, {});
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_BuildPrimitives)->Unit(benchmark::kMillisecond);

static void BM_PrimitiveLookup(benchmark::State& state) {
  const Primitives& p = shared_prims();
  double x = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.U0_ext(x));
    x += 1e-4;
    if (x > 2.0) x = -2.0;
  }
}
BENCHMARK(BM_PrimitiveLookup);

// gamma sweep of the full field evaluation; the kernel scale sqrt(gamma t)
// sets the panel count.
static void BM_EvalFields(benchmark::State& state) {
  const double gamma = std::pow(10.0, -static_cast<double>(state.range(0)));
  const ViscousParams vp{gamma, {}, 1e-6};
  const Primitives& p = shared_prims();
  double x = -1.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_fields(p, vp, x, 1.0));
    x += 0.01;
    if (x > 1.2) x = -1.2;
  }
}
BENCHMARK(BM_EvalFields)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

static void BM_KernelMoments(benchmark::State& state) {
  const ViscousParams vp{0.01, {}, 1e-6};
  const Primitives& p = shared_prims();
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_kernel_moments(p, vp, 0.3, 0.9));
}
BENCHMARK(BM_KernelMoments)->Unit(benchmark::kMicrosecond);

static void BM_SampleGrid(benchmark::State& state) {
  const ViscousParams vp{0.3, {}, 1e-6};
  const Primitives& p = shared_prims();
  const GridSpec grid{-3.0, 3.0, 40, 0.1, 1.0, 10};
  const bool parallel = state.range(0) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_grid(p, vp, grid, parallel));
}
BENCHMARK(BM_SampleGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_MeasureMoments(benchmark::State& state) {
  auto prims = std::make_shared<Primitives>(
      build_primitives(standard_riemann(), {}));
  const QuadratureSpec quad{1e-8, 16384, 1.25};
  const EpsilonFamily fam = viscous_family(prims, quad, {-1.0, 1.0});
  const RiemannData rd{-1, 2, 1, 0, 1, 2, 1, 0};
  const DistributionalSolution ref = volpert_solution(rd, 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        measure_moments(fam, ref, 2, -1.0, 1.0, 0.4, 3e-3, quad));
}
BENCHMARK(BM_MeasureMoments)->Unit(benchmark::kMillisecond);

static void BM_ShadowResidual(benchmark::State& state) {
  const RiemannData rd{-1, 2, 1, 0, 1, 2, 1, 0};
  const EpsilonFamily fam = as_epsilon_family(shadow_wave(rd).first);
  const TestFunction phi = bump(-1.0, 1.0, 0.8, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(weak_residual_family(fam, phi, 0.01, {}));
}
BENCHMARK(BM_ShadowResidual)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
