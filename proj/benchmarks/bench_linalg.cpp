#include <benchmark/benchmark.h>

#include "complobs/linalg.hpp"
#include "complobs/random.hpp"

using namespace complobs;

static void BM_Kron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(1, 0);
  const Matrix a = random_density(n, n, rng);
  const Matrix b = random_density(n, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kron(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Kron)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_PartialTrace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(2, 0);
  const LabeledOperator op(random_density(n * n * 2, n * n * 2, rng),
                           DimList{{"A", n}, {"B", n}, {"R", 2}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(op, {"A", "R"}));
  }
}
BENCHMARK(BM_PartialTrace)->DenseRange(2, 6, 2);

static void BM_MatrixSqrt(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(3, 0);
  const Matrix rho = random_density(n, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_sqrt_psd(rho));
  }
}
BENCHMARK(BM_MatrixSqrt)->RangeMultiplier(2)->Range(4, 64);

static void BM_Fidelity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(4, 0);
  const Matrix rho = random_density(n, n / 2 + 1, rng);
  const Matrix sigma = random_density(n, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity(rho, sigma));
  }
}
BENCHMARK(BM_Fidelity)->RangeMultiplier(2)->Range(4, 32);
