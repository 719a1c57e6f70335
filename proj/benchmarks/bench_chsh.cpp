#include <benchmark/benchmark.h>

#include "nlact/chsh.hpp"
#include "nlact/filtering.hpp"
#include "nlact/random.hpp"
#include "nlact/states.hpp"

using namespace nlact;

static void BM_horodecki_chsh_max(benchmark::State& state) {
  auto rng = make_rng(11);
  const auto rho = random_state({{2}, {2}}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(horodecki_chsh_max(rho));
}
BENCHMARK(BM_horodecki_chsh_max);

static void BM_activation_witness(benchmark::State& state) {
  const auto anc = ancilla_rho();
  const auto rho = werner2(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(activation_witness(anc, rho));
}
BENCHMARK(BM_activation_witness);

static void BM_activate(benchmark::State& state) {
  const auto anc = ancilla_rho();
  const auto rho = werner2(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(activate(anc, rho));
}
BENCHMARK(BM_activate);

static void BM_popescu_threshold(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(popescu_threshold(d));
}
BENCHMARK(BM_popescu_threshold)->Arg(3)->Arg(6);

static void BM_optimize_filters(benchmark::State& state) {
  const auto rho = werner2(0.9);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_filters_chsh(rho, 2, 200));
}
BENCHMARK(BM_optimize_filters)->Unit(benchmark::kMillisecond);
