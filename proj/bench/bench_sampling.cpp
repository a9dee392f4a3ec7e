// Serial versus OpenMP evaluation of sampled kernels.
#include "crflat/normalization.hpp"
#include "crflat/sampling.hpp"
#include "crflat/sff.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

using namespace crflat;

const MapSpec& whitney() {
  static const MapSpec F = to_siegel(load_map(std::string(CRFLAT_FIXTURES) + "/whitney.map"));
  return F;
}

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::Parallel : Execution::Serial; }

void BM_Kappa0(benchmark::State& state) {
  auto points = halton_points(whitney().n, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kappa0(whitney(), points, {}, mode(state)).kappa0);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Flatness(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(flatness_verdict(whitney(), static_cast<int>(state.range(0)), {}, 1, mode(state)).verdict);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Kappa0)->ArgNames({"points", "parallel"})->ArgsProduct({{8, 32}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Flatness)->ArgNames({"points", "parallel"})->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
