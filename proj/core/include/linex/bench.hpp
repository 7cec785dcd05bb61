#pragma once

// Timing and counter experiments for dbscan_1d: scaling in N on a
// small-neighborhood generator, and sensitivity to epsilon on uniform data.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace linex {

struct BenchRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t min_points = 0;
  std::int64_t sort_time_ns = 0;    ///< mean over trials
  std::int64_t cluster_time_ns = 0; ///< mean over trials, neighborhoods included
  std::uint64_t neighborhood_steps = 0;
  std::uint64_t expand_touches = 0;
  std::size_t cluster_count = 0;

  std::uint64_t cluster_ops() const noexcept { return neighborhood_steps + expand_touches; }
};

struct BenchResult {
  std::string experiment;
  std::vector<BenchRow> rows;
};

/// Header `n,epsilon,min_points,sort_time_ns,cluster_time_ns,neighborhood_steps,expand_touches,cluster_count`.
void write_csv(const BenchResult &result, std::ostream &out);

/// sqrt(n) clusters of unit width, 10 units apart, points drawn uniformly
/// inside a uniformly chosen cluster. Unsorted.
std::vector<double> generate_separated_clusters(std::size_t n, std::uint64_t seed);
/// n values uniform in [0, 1). Unsorted.
std::vector<double> generate_uniform(std::size_t n, std::uint64_t seed);

/// Epsilon for generate_separated_clusters giving about ln(n)/2 neighbours per point.
double separated_clusters_epsilon(std::size_t n);

/// One row per size. Data is generated once per size, so counters are exact
/// and times are means over `trials` sort+cluster runs. Throws ParameterError
/// unless sizes are ascending and trials >= 1.
BenchResult bench_scaling(std::span<const std::size_t> sizes, std::size_t trials,
                          std::uint64_t seed, std::size_t min_points = 3);

/// One row per epsilon on a single uniform data set of size n.
BenchResult bench_epsilon_sweep(std::size_t n, std::span<const double> epsilons,
                                std::size_t trials, std::uint64_t seed,
                                std::size_t min_points = 3);

/// 1e-7, 1e-6, ..., 1e-3.
std::vector<double> default_epsilons();

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace linex
