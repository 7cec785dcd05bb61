#include "linex/bench.hpp"
#include "linex/dbscan1d.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numbers>
#include <vector>

namespace {

// Sorted separated blocks, same workload as `linex bench`.
std::vector<double> sorted_blocks(std::size_t n) {
  auto points = linex::generate_separated_clusters(n, 42);
  std::sort(points.begin(), points.end());
  return points;
}

void BM_Dbscan1D(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto points = sorted_blocks(n);
  const linex::DbscanParams params{linex::separated_clusters_epsilon(n), 3,
                                   linex::BorderPolicy::FirstCluster};
  linex::Dbscan1D workspace(n);
  for (auto _ : state) {
    workspace.run(points, params);
    benchmark::DoNotOptimize(workspace.clusters().data());
  }
  state.SetComplexityN(state.range(0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Dbscan1D)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oN);

void BM_Dbscan1DCircular(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto points = linex::generate_uniform(n, 7);
  for (auto &x : points)
    x *= 2.0 * std::numbers::pi;
  std::sort(points.begin(), points.end());
  const linex::DbscanParams params{4.0 / static_cast<double>(n), 3,
                                   linex::BorderPolicy::FirstCluster};
  const linex::CircularDomain domain(2.0 * std::numbers::pi);
  linex::Dbscan1D workspace(n);
  for (auto _ : state) {
    workspace.run_circular(points, params, domain);
    benchmark::DoNotOptimize(workspace.clusters().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dbscan1DCircular)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oN);

void BM_SortThenCluster(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto raw = linex::generate_separated_clusters(n, 42);
  const linex::DbscanParams params{linex::separated_clusters_epsilon(n), 3,
                                   linex::BorderPolicy::FirstCluster};
  linex::Dbscan1D workspace(n);
  std::vector<double> points;
  for (auto _ : state) {
    points = raw;
    std::sort(points.begin(), points.end());
    workspace.run(points, params);
    benchmark::DoNotOptimize(workspace.clusters().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SortThenCluster)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oNLogN);

} // namespace
