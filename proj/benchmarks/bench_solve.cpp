#include <benchmark/benchmark.h>

#include "ffdm/fit.hpp"
#include "ffdm/kernel.hpp"
#include "ffdm/solve.hpp"

namespace {

const ffdm::FractionalParams kParams = ffdm::validate_params(1.5, 0.3);

void BM_WeightTable(benchmark::State& state) {
  const long kmax = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ffdm::build_weight_table(kParams, {}, kmax));
  }
  state.SetComplexityN(kmax);
}
BENCHMARK(BM_WeightTable)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_Assemble(benchmark::State& state) {
  const ffdm::Domain1D domain(0.0, 1.0, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ffdm::assemble(domain, kParams, {}, {2.0, 1.0}));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assemble)->RangeMultiplier(2)->Range(64, 2048)->Complexity(benchmark::oNSquared);

void BM_LuSolve(benchmark::State& state) {
  const auto system = ffdm::assemble(ffdm::Domain1D(0.0, 1.0, state.range(0)), kParams, {},
                                     {2.0, 1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ffdm::lu_solve(system));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LuSolve)
    ->RangeMultiplier(2)
    ->Range(64, 2048)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNCubed);

void BM_FitLoss(benchmark::State& state) {
  const ffdm::Domain1D domain(0.0, 1.0, 200);
  const auto truth = ffdm::solve_bvp(domain, ffdm::validate_params(0.35, -0.055), {}, {2.0, 1.0});
  ffdm::ObservedProfile profile{{}, 0.0, 1.0};
  for (long i = 0; i <= 200; i += 10) {
    profile.points.push_back({truth.nodes[i], truth.values[i]});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ffdm::loss(0.4, -0.05, profile, {2.0, 1.0}));
  }
}
BENCHMARK(BM_FitLoss)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
