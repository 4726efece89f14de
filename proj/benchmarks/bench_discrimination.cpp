#include <benchmark/benchmark.h>

#include "complobs/measurements.hpp"
#include "complobs/random.hpp"

using namespace complobs;

namespace {

Ensemble random_ensemble(std::size_t dim, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  RealVector w = RealVector::Constant(static_cast<Eigen::Index>(n),
                                      1.0 / static_cast<double>(n));
  std::vector<LabeledOperator> members;
  for (std::size_t i = 0; i < n; ++i)
    members.emplace_back(random_density(dim, dim, rng), DimList{{"B", dim}});
  return Ensemble::validated(std::move(w), std::move(members));
}

}  // namespace

static void BM_Pgm(benchmark::State& state) {
  const Ensemble ens = random_ensemble(static_cast<std::size_t>(state.range(0)), 3, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pgm(ens));
  }
}
BENCHMARK(BM_Pgm)->RangeMultiplier(2)->Range(2, 16);

static void BM_Helstrom(benchmark::State& state) {
  const Ensemble ens = random_ensemble(static_cast<std::size_t>(state.range(0)), 2, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(helstrom_binary(ens));
  }
}
BENCHMARK(BM_Helstrom)->RangeMultiplier(2)->Range(2, 16);

static void BM_OptimizeMinError(benchmark::State& state) {
  const Ensemble ens = random_ensemble(static_cast<std::size_t>(state.range(0)),
                                       static_cast<std::size_t>(state.range(1)), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_min_error(ens));
  }
}
BENCHMARK(BM_OptimizeMinError)
    ->Args({2, 2})
    ->Args({4, 2})
    ->Args({4, 4})
    ->Args({9, 3})
    ->Args({16, 4});

static void BM_GridOracle(benchmark::State& state) {
  const Ensemble ens = random_ensemble(2, static_cast<std::size_t>(state.range(0)), 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qubit_grid_oracle(ens, 1e-2));
  }
}
BENCHMARK(BM_GridOracle)->DenseRange(2, 4);
