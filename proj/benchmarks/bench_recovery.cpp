#include <benchmark/benchmark.h>

#include "complobs/scenarios.hpp"
#include "complobs/theorems.hpp"

using namespace complobs;

static void BM_ComposeRecovery(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const PureState psi = haar_random_state(DimList{{"A", d}, {"B", d}, {"R", d}}, 21, 0);
  const OptimizedMeasurements m = optimize_recovery_measurements(psi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose_recovery(m.z.measurement, m.x.measurement));
  }
}
BENCHMARK(BM_ComposeRecovery)->DenseRange(2, 4);

static void BM_Theorem1Optimized(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const PureState psi = haar_random_state(DimList{{"A", d}, {"B", d}, {"R", d}}, 22, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorem1_certificate_optimized(psi));
  }
}
BENCHMARK(BM_Theorem1Optimized)->DenseRange(2, 3);

static void BM_Theorem2(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const PureState psi = haar_random_state(DimList{{"A", d}, {"B", d}, {"R", d}}, 23, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theorem2_certificate(psi));
  }
}
BENCHMARK(BM_Theorem2)->DenseRange(2, 3);

static void BM_DualityCheck(benchmark::State& state) {
  const PureState psi = haar_random_state(DimList{{"A", 2}, {"B", 2}, {"R", 2}}, 24, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(duality_check(psi));
  }
}
BENCHMARK(BM_DualityCheck);

static void BM_HaarState(benchmark::State& state) {
  const DimList dims{{"A", 3}, {"B", 3}, {"R", 3}};
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_random_state(dims, 25, i++));
  }
}
BENCHMARK(BM_HaarState);

BENCHMARK_MAIN();
