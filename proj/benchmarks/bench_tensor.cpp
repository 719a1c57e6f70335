#include <benchmark/benchmark.h>

#include "nlact/random.hpp"
#include "nlact/states.hpp"
#include "nlact/tensor.hpp"

using namespace nlact;

static void BM_kron_4x4(benchmark::State& state) {
  auto rng = make_rng(1);
  const auto a = random_state({{2}, {2}}, rng);
  const auto b = random_state({{2}, {2}}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_kron_4x4);

static void BM_partial_trace_16(benchmark::State& state) {
  auto rng = make_rng(2);
  const auto rho = random_state({{2, 2}, {2, 2}}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, {0, 2}));
}
BENCHMARK(BM_partial_trace_16);

static void BM_partial_transpose(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto rho = werner_d(d, 0.7);
  const auto legs = party_leg_indices(rho.layout, 1);
  for (auto _ : state) benchmark::DoNotOptimize(partial_transpose(rho, legs));
}
BENCHMARK(BM_partial_transpose)->Arg(2)->Arg(4)->Arg(6);

static void BM_permute_parties(benchmark::State& state) {
  auto rng = make_rng(3);
  const auto rho = random_state({{2, 2}, {2, 2}}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(permute_parties(rho, {2, 3, 0, 1}));
}
BENCHMARK(BM_permute_parties);

static void BM_hermitian_eig(benchmark::State& state) {
  auto rng = make_rng(4);
  const Eigen::MatrixXcd m = random_hermitian(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(m));
}
BENCHMARK(BM_hermitian_eig)->Arg(16)->Arg(36);

static void BM_project_psd(benchmark::State& state) {
  auto rng = make_rng(5);
  const Eigen::MatrixXcd m = random_hermitian(16, rng);
  for (auto _ : state) benchmark::DoNotOptimize(project_psd(m));
}
BENCHMARK(BM_project_psd);
