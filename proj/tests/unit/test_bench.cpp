#include "linex/bench.hpp"
#include "linex/dbscan1d.hpp"
#include "linex/error.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace linex;

TEST_CASE("csv layout", "[bench]") {
  BenchResult r{"scaling", {{10, 0.5, 3, 100, 200, 20, 15, 2}}};
  std::ostringstream out;
  write_csv(r, out);
  CHECK(out.str() ==
        "n,epsilon,min_points,sort_time_ns,cluster_time_ns,neighborhood_steps,expand_touches,"
        "cluster_count\n10,0.5,3,100,200,20,15,2\n");
}

TEST_CASE("separated cluster generator", "[bench]") {
  const auto x = generate_separated_clusters(10000, 1);
  CHECK(x.size() == 10000);
  CHECK(x == generate_separated_clusters(10000, 1));
  CHECK_FALSE(x == generate_separated_clusters(10000, 2));

  auto sorted = x;
  std::sort(sorted.begin(), sorted.end());
  const double eps = separated_clusters_epsilon(10000);
  const auto r = dbscan_1d(sorted, {eps, 3});
  // 100 blocks of unit width, 10 apart. Sparse spots may split a block but
  // no cluster can bridge a gap.
  CHECK(r.clusters.size() >= 100);
  for (const auto &c : r.clusters)
    CHECK(sorted[c.upper] - sorted[c.lower] <= 1.0);

  // Mean neighborhood stays under log N.
  const auto t = calculate_neighborhood(sorted, eps);
  double total = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    total += static_cast<double>(neighborhood_size(i, t));
  CHECK(total / static_cast<double>(t.size()) <= std::log(10000.0));
}

TEST_CASE("scaling counters are linear and deterministic", "[bench]") {
  const std::vector<std::size_t> sizes{10000, 20000, 40000};
  const auto a = bench_scaling(sizes, 1, 9);
  const auto b = bench_scaling(sizes, 1, 9);
  REQUIRE(a.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.rows[i].neighborhood_steps == b.rows[i].neighborhood_steps);
    CHECK(a.rows[i].expand_touches == b.rows[i].expand_touches);
    CHECK(a.rows[i].cluster_count == b.rows[i].cluster_count);
    CHECK(a.rows[i].sort_time_ns >= 0);
    CHECK(a.rows[i].cluster_time_ns >= 0);
    CHECK(a.rows[i].neighborhood_steps <= 2 * a.rows[i].n);
    CHECK(a.rows[i].expand_touches <= 2 * a.rows[i].n);
  }
  for (std::size_t i = 1; i < 3; ++i) {
    const double ratio = static_cast<double>(a.rows[i].cluster_ops()) /
                         static_cast<double>(a.rows[i - 1].cluster_ops());
    CHECK(ratio >= 1.9);
    CHECK(ratio <= 2.1);
  }
  CHECK_THROWS_AS(bench_scaling(std::vector<std::size_t>{10, 5}, 1, 0), ParameterError);
  CHECK_THROWS_AS(bench_scaling(sizes, 0, 0), ParameterError);
}

TEST_CASE("epsilon sweep", "[bench]") {
  const auto eps = default_epsilons();
  const auto r = bench_epsilon_sweep(50000, eps, 1, 4);
  REQUIRE(r.rows.size() == eps.size());
  std::uint64_t lo = UINT64_MAX;
  std::uint64_t hi = 0;
  for (const auto &row : r.rows) {
    lo = std::min(lo, row.cluster_ops());
    hi = std::max(hi, row.cluster_ops());
  }
  CHECK(static_cast<double>(hi) / static_cast<double>(lo) <= 2.0);

  // Below the smallest gap there are no core points at minPoints 2.
  const std::vector<double> tiny{1e-12};
  const auto none = bench_epsilon_sweep(1000, tiny, 1, 4, 2);
  CHECK(none.rows[0].cluster_count == 0);
  CHECK(none.rows[0].expand_touches == 0);
  CHECK(none.rows[0].neighborhood_steps == 2000);
}

TEST_CASE("log-log slope", "[bench]") {
  const std::vector<double> x{1, 10, 100};
  const std::vector<double> y{3, 30, 300};
  CHECK(loglog_slope(x, y) == Catch::Approx(1.0));
  const std::vector<double> y2{1, 100, 10000};
  CHECK(loglog_slope(x, y2) == Catch::Approx(2.0));
  CHECK_THROWS(loglog_slope(std::vector<double>{1}, std::vector<double>{1}));
}
