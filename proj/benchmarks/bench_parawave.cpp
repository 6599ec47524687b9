// Microbenchmarks for the hot paths: spectral transforms, paradifferential
// application, the boundary solve, and a full evolution step.

#include <benchmark/benchmark.h>

#include "parawave/dn.hpp"
#include "parawave/dynamics.hpp"
#include "parawave/fft.hpp"
#include "parawave/paradiff.hpp"
#include "parawave/random_fields.hpp"

using namespace parawave;

namespace {

Field test_surface(const Grid& g, double steepness) {
  const CounterRng rng(7);
  return smooth_random_field(g, rng, 1, 3.0, steepness);
}

Field test_data(const Grid& g) {
  const CounterRng rng(7);
  return smooth_random_field(g, rng, 2, 5.0, 1.0);
}

void bm_fft_roundtrip(benchmark::State& state) {
  const Grid g(1, static_cast<int>(state.range(0)));
  const Field f = test_data(g);
  const auto& values = f.values();
  for (auto _ : state) {
    auto spec = detail::fft_forward(g, values);
    benchmark::DoNotOptimize(detail::fft_inverse(g, spec));
  }
}

void bm_paraproduct(benchmark::State& state) {
  const Grid g(1, static_cast<int>(state.range(0)));
  const Field a = test_surface(g, 0.3);
  const Field u = test_data(g);
  for (auto _ : state) benchmark::DoNotOptimize(paraproduct(a, u));
}

void bm_paradiff_order_one(benchmark::State& state) {
  const Grid g(1, static_cast<int>(state.range(0)));
  const Field eta = test_surface(g, 0.1);
  const auto lambda = dn_symbol(eta);
  const Field u = test_data(g);
  for (auto _ : state) benchmark::DoNotOptimize(paradiff_apply(lambda, u));
}

void bm_dn_solve(benchmark::State& state) {
  const Grid g(1, static_cast<int>(state.range(0)));
  const Field eta = test_surface(g, 0.05);
  const Field psi = test_data(g);
  const DnParams params;
  for (auto _ : state) benchmark::DoNotOptimize(dn_exact(eta, psi, params));
}

void bm_rk4_step(benchmark::State& state) {
  const Grid g(1, static_cast<int>(state.range(0)));
  const WaveState initial{test_surface(g, 0.05),
                          0.1 * test_surface(g, 0.5)};
  const WaveParams params;
  const double dt = 0.5 * cfl_limit(g, params.gravity);
  for (auto _ : state)
    benchmark::DoNotOptimize(step_rk4(initial, params, dt));
}

BENCHMARK(bm_fft_roundtrip)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK(bm_paraproduct)->Arg(128)->Arg(512);
BENCHMARK(bm_paradiff_order_one)->Arg(128)->Arg(512);
BENCHMARK(bm_dn_solve)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_rk4_step)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
