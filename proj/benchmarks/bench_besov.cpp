#include <benchmark/benchmark.h>

#include "vesicle/littlewood_paley.hpp"
#include "vesicle/random_fields.hpp"
#include "vesicle/spectral_ops.hpp"

using namespace vesicle;

namespace {

void bm_besov_norm(benchmark::State& state) {
  const GridSpec g = GridSpec::cubic(int(state.range(0)));
  const SpectralScalar f = random_band_limited(g, 4, 201, 0.3);
  const DyadicCutoffs cut = build_cutoffs(g);
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f, 0.0, cut));
}
BENCHMARK(bm_besov_norm)->Arg(32)->Arg(64);

void bm_vorticity_besov(benchmark::State& state) {
  const GridSpec g = GridSpec::cubic(int(state.range(0)));
  const SpectralVector u = random_divergence_free(g, 4, 202, 0.3);
  const DyadicCutoffs cut = build_cutoffs(g);
  for (auto _ : state) {
    const SpectralVector w = curl(u);
    benchmark::DoNotOptimize(besov_norm(w, -1.0, cut));
  }
}
BENCHMARK(bm_vorticity_besov)->Arg(32)->Arg(64);

void bm_sobolev_norm(benchmark::State& state) {
  const GridSpec g = GridSpec::cubic(int(state.range(0)));
  const SpectralScalar f = random_band_limited(g, 4, 203, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_norm(f, 2.0, false));
}
BENCHMARK(bm_sobolev_norm)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
