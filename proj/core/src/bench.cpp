#include "linex/bench.hpp"

#include "linex/dbscan1d.hpp"
#include "linex/error.hpp"
#include "linex/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

namespace linex {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count();
}

BenchRow measure(std::span<const double> data, const DbscanParams &params, std::size_t trials) {
  std::vector<double> work(data.size());
  Dbscan1D workspace(data.size());
  std::int64_t sort_total = 0;
  std::int64_t cluster_total = 0;

  for (std::size_t t = 0; t < trials; ++t) {
    std::copy(data.begin(), data.end(), work.begin());
    const auto t0 = Clock::now();
    std::sort(work.begin(), work.end());
    const auto t1 = Clock::now();
    workspace.run(work, params);
    const auto t2 = Clock::now();
    sort_total += elapsed_ns(t0, t1);
    cluster_total += elapsed_ns(t1, t2);
  }

  const auto k = static_cast<std::int64_t>(trials);
  BenchRow row;
  row.n = data.size();
  row.epsilon = params.epsilon;
  row.min_points = params.min_points;
  row.sort_time_ns = sort_total / k;
  row.cluster_time_ns = cluster_total / k;
  row.neighborhood_steps = workspace.counters().neighborhood_steps;
  row.expand_touches = workspace.counters().expand_touches;
  row.cluster_count = workspace.clusters().size();
  return row;
}

} // namespace

void write_csv(const BenchResult &result, std::ostream &out) {
  out << "n,epsilon,min_points,sort_time_ns,cluster_time_ns,neighborhood_steps,expand_touches,"
         "cluster_count\n";
  const auto precision = out.precision(17);
  for (const auto &r : result.rows)
    out << r.n << ',' << r.epsilon << ',' << r.min_points << ',' << r.sort_time_ns << ','
        << r.cluster_time_ns << ',' << r.neighborhood_steps << ',' << r.expand_touches << ','
        << r.cluster_count << '\n';
  out.precision(precision);
}

std::vector<double> generate_separated_clusters(std::size_t n, std::uint64_t seed) {
  const auto k = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n)))));
  constexpr double width = 1.0;
  constexpr double pitch = 11.0 * width; // gap of 10 widths
  SplitMix64 rng(seed);
  std::vector<double> values(n);
  for (auto &v : values) {
    const auto c = rng.uniform_int(0, k - 1);
    v = pitch * static_cast<double>(c) + width * rng.uniform();
  }
  return values;
}

std::vector<double> generate_uniform(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> values(n);
  for (auto &v : values)
    v = rng.uniform();
  return values;
}

double separated_clusters_epsilon(std::size_t n) {
  const double m = std::max<double>(2.0, static_cast<double>(n));
  // Density inside a cluster is about sqrt(n) per unit width.
  return std::log(m) / (4.0 * std::sqrt(m));
}

BenchResult bench_scaling(std::span<const std::size_t> sizes, std::size_t trials,
                          std::uint64_t seed, std::size_t min_points) {
  if (trials < 1)
    throw ParameterError("trials must be at least 1");
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw ParameterError("sizes must be ascending");

  BenchResult result{"scaling", {}};
  SplitMix64 seeds(seed);
  for (const auto n : sizes) {
    const auto data = generate_separated_clusters(n, seeds.next());
    const DbscanParams params{separated_clusters_epsilon(n), min_points, BorderPolicy::FirstCluster};
    params.validate();
    result.rows.push_back(measure(data, params, trials));
  }
  return result;
}

BenchResult bench_epsilon_sweep(std::size_t n, std::span<const double> epsilons,
                                std::size_t trials, std::uint64_t seed, std::size_t min_points) {
  if (trials < 1)
    throw ParameterError("trials must be at least 1");
  BenchResult result{"epsilon-sweep", {}};
  const auto data = generate_uniform(n, seed);
  for (const double eps : epsilons) {
    const DbscanParams params{eps, min_points, BorderPolicy::FirstCluster};
    params.validate();
    result.rows.push_back(measure(data, params, trials));
  }
  return result;
}

std::vector<double> default_epsilons() { return {1e-7, 1e-6, 1e-5, 1e-4, 1e-3}; }

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ParameterError("slope needs at least two (x, y) pairs");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw DomainError("log-log slope needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  const auto n = static_cast<double>(x.size());
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0)
    throw DomainError("log-log slope needs distinct x values");
  return sxy / sxx;
}

} // namespace linex
