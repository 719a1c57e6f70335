#include <benchmark/benchmark.h>

#include "nlact/sdp.hpp"
#include "nlact/states.hpp"

using namespace nlact;

static void BM_solve_witness_d2(benchmark::State& state) {
  const auto w = werner_witness_cost(2, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(solve_min_witness(w, {}));
  state.SetLabel("16x16, one PPT cut");
}
BENCHMARK(BM_solve_witness_d2)->Unit(benchmark::kMillisecond);

static void BM_solve_witness_d3(benchmark::State& state) {
  const auto w = werner_witness_cost(3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(solve_min_witness(w, {}));
  state.SetLabel("36x36, one PPT cut");
}
BENCHMARK(BM_solve_witness_d3)->Unit(benchmark::kMillisecond);

static void BM_critical_weight_d2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(critical_weight(2));
}
BENCHMARK(BM_critical_weight_d2)->Unit(benchmark::kMillisecond);
