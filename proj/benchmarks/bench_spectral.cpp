#include <benchmark/benchmark.h>

#include "vesicle/fft.hpp"
#include "vesicle/random_fields.hpp"
#include "vesicle/spectral_ops.hpp"

using namespace vesicle;

namespace {

SpectralScalar seeded_scalar(int n, std::uint64_t seed) {
  return random_band_limited(GridSpec::cubic(n), 3, seed, 0.3);
}

void bm_inverse_transform(benchmark::State& state) {
  const SpectralScalar f = seeded_scalar(int(state.range(0)), 101);
  for (auto _ : state) benchmark::DoNotOptimize(inverse_transform(f));
  state.SetItemsProcessed(state.iterations() * f.grid.size());
}
BENCHMARK(bm_inverse_transform)->Arg(32)->Arg(64);

void bm_forward_transform(benchmark::State& state) {
  const SpectralScalar f = seeded_scalar(int(state.range(0)), 102);
  const RealVec samples = inverse_transform(f);
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(samples, f.grid));
  state.SetItemsProcessed(state.iterations() * f.grid.size());
}
BENCHMARK(bm_forward_transform)->Arg(32)->Arg(64);

void bm_padded_product(benchmark::State& state) {
  const SpectralScalar a = seeded_scalar(int(state.range(0)), 103);
  const SpectralScalar b = seeded_scalar(int(state.range(0)), 104);
  const SpectralScalar* fields[2] = {&a, &b};
  const auto mul = [](const double* v) { return v[0] * v[1]; };
  for (auto _ : state)
    benchmark::DoNotOptimize(pointwise_product(fields, 2, mul, DealiasRule::padded(3)));
}
BENCHMARK(bm_padded_product)->Arg(32)->Arg(64);

void bm_leray_project(benchmark::State& state) {
  const GridSpec g = GridSpec::cubic(int(state.range(0)));
  SpectralVector u(g);
  for (int j = 0; j < 3; ++j) u[j] = random_band_limited(g, 3, 105 + j, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(leray_project(u));
}
BENCHMARK(bm_leray_project)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
