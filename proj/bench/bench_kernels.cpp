#include <benchmark/benchmark.h>

#include "grasspenta/io.hpp"
#include "grasspenta/lax.hpp"
#include "grasspenta/pentamap.hpp"

using namespace grasspenta;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

const Lift& sample_lift() {
  static const Lift lift = random_regular_lift<Complex>(2, 5, 23, 7);
  return lift;
}

const Chain& sample_chain() {
  static const Chain chain = normalize_lift(sample_lift()).chain;
  return chain;
}

void BM_extract_invariants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(extract_invariants(sample_lift(), 1e-9, exec_of(state)));
}

void BM_map_geometric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(map_geometric(sample_lift(), default_tolerances(), exec_of(state)));
}

void BM_map_algebraic(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(map_algebraic_unnormalized(sample_chain(), default_tolerances(), exec_of(state)));
}

void BM_spectral_samples(benchmark::State& state) {
  std::vector<Complex> mus;
  for (int t = 0; t < 64; ++t) mus.push_back(std::polar(1.0, 0.1 * t));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_samples(sample_chain(), mus, exec_of(state)));
}

}  // namespace

// Arg 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_extract_invariants)->Arg(0)->Arg(1);
BENCHMARK(BM_map_geometric)->Arg(0)->Arg(1);
BENCHMARK(BM_map_algebraic)->Arg(0)->Arg(1);
BENCHMARK(BM_spectral_samples)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
