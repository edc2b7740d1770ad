#include <benchmark/benchmark.h>

#include "vesicle/dynamics.hpp"
#include "vesicle/random_fields.hpp"

using namespace vesicle;

namespace {

State seeded_state(int n) {
  const GridSpec g = GridSpec::cubic(n);
  State s = State::zero(g);
  s.u = random_divergence_free(g, 3, 301, 0.2);
  s.phi = random_band_limited(g, 3, 302, 0.1);
  s.phi.coeffs[0] = 0.2;
  return s;
}

ModelParams params() {
  ModelParams p;
  p.gamma = 0.1;
  p.eps = 0.1;
  p.M1 = 1.0;
  p.M2 = 1.0;
  return p;
}

void bm_rhs(benchmark::State& state) {
  const State s = seeded_state(int(state.range(0)));
  const ModelParams p = params();
  for (auto _ : state) benchmark::DoNotOptimize(rhs(s, p, nullptr));
}
BENCHMARK(bm_rhs)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void bm_step_heun(benchmark::State& state) {
  State s = seeded_state(int(state.range(0)));
  const ModelParams p = params();
  StepperConfig cfg;
  cfg.dt_max = 1e-4;
  for (auto _ : state) s = step(s, p, cfg, 1e-4);
}
BENCHMARK(bm_step_heun)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void bm_step_euler(benchmark::State& state) {
  State s = seeded_state(int(state.range(0)));
  const ModelParams p = params();
  StepperConfig cfg;
  cfg.integrator = Integrator::IfEuler;
  cfg.dt_max = 1e-4;
  for (auto _ : state) s = step(s, p, cfg, 1e-4);
}
BENCHMARK(bm_step_euler)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
