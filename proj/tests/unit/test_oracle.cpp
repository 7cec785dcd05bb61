#include "instances.hpp"
#include "oracle.hpp"

#include "linex/error.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace linex;
using namespace linex::oracle;
using Catch::Approx;
constexpr double kPi = std::numbers::pi;

TEST_CASE("naive neighborhood by definition", "[oracle]") {
  const std::vector<double> x{0, 1, 2, 10};
  CHECK(naive_neighborhood(x, 0, 1.5, Metric::linear()) == std::vector<std::size_t>{0, 1});
  CHECK(naive_neighborhood(x, 3, 1.5, Metric::linear()) == std::vector<std::size_t>{3});
  const std::vector<double> c{0, kPi / 4, kPi, 2 * kPi - kPi / 4};
  CHECK(naive_neighborhood(c, 3, kPi / 2, Metric::circular(2 * kPi)) ==
        std::vector<std::size_t>{0, 1, 3});
}

TEST_CASE("naive dbscan trivial cases", "[oracle]") {
  const std::vector<double> sparse{0, 2, 4, 6};
  const auto r = naive_dbscan(sparse, 1.0, 2, Metric::linear(), BorderPolicy::FirstCluster);
  CHECK(r.labels == std::vector<Label>(4, kNoise));
  CHECK(r.members.empty());

  // minPoints 1: connected components of the gap graph, in any input order.
  const std::vector<double> shuffled{5.0, 0.0, 5.5, 0.4, 9.0};
  const auto m = naive_dbscan(shuffled, 0.5, 1, Metric::linear(), BorderPolicy::FirstCluster);
  CHECK(m.labels == std::vector<Label>{1, 2, 1, 2, 3});
}

TEST_CASE("naive dbscan is mirror symmetric", "[oracle][fuzz]") {
  SplitMix64 rng(31);
  for (int k = 0; k < 200; ++k) {
    const bool circular = rng.bernoulli(0.5);
    const auto inst = testing::random_instance(rng, circular, 60);
    const Metric metric = circular ? Metric::circular(*inst.period) : Metric::linear();
    std::vector<double> mirrored;
    for (const double v : inst.values)
      mirrored.push_back(-v);
    const auto a = naive_dbscan(inst.values, inst.params.epsilon, inst.params.min_points, metric,
                                BorderPolicy::AllClusters);
    const auto b = naive_dbscan(mirrored, inst.params.epsilon, inst.params.min_points, metric,
                                BorderPolicy::AllClusters);
    auto sa = a.members;
    auto sb = b.members;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    CHECK(sa == sb);
    CHECK(a.core == b.core);
  }
}

TEST_CASE("naive closure is idempotent", "[oracle][fuzz]") {
  SplitMix64 rng(32);
  for (int k = 0; k < 200; ++k) {
    const auto inst = testing::random_instance(rng, false, 80);
    const auto r = naive_dbscan(inst.values, inst.params.epsilon, inst.params.min_points,
                                Metric::linear(), BorderPolicy::AllClusters);
    for (const auto &members : r.members) {
      std::vector<double> sub;
      for (const auto i : members)
        sub.push_back(inst.values[i]);
      const auto again = naive_dbscan(sub, inst.params.epsilon, inst.params.min_points,
                                      Metric::linear(), BorderPolicy::AllClusters);
      // Cores keep their whole neighbourhood inside the cluster.
      REQUIRE(again.members.size() >= 1);
      std::size_t covered = 0;
      for (const auto &m : again.members)
        covered += m.size();
      CHECK(again.members.size() == 1);
      CHECK(covered == members.size());
    }
  }
}

TEST_CASE("eigen_tls basic lines", "[oracle]") {
  const std::vector<Point2D> h{{0, 2}, {1, 2}, {5, 2}};
  const auto l = eigen_tls(h);
  CHECK(l.theta == Approx(kPi / 2));
  CHECK(l.d == Approx(2));
  const std::vector<Point2D> two{{1, 0}, {0, 1}};
  const auto t = eigen_tls(two);
  CHECK(t.d == Approx(std::sqrt(0.5)));
  CHECK(t.theta == Approx(kPi / 4));
  CHECK_THROWS_AS(eigen_tls(std::vector<Point2D>{{1, 1}, {1, 1}}), DegenerateError);
}
