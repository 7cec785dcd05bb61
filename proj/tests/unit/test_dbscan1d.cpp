#include "instances.hpp"
#include "oracle.hpp"

#include "linex/dbscan1d.hpp"
#include "linex/error.hpp"

#include <catch_amalgamated.hpp>

#include <numeric>

using namespace linex;
using Catch::Matchers::ContainsSubstring;

namespace {

std::vector<Index> idx(std::initializer_list<Index> v) { return v; }

} // namespace

TEST_CASE("neighborhood bounds on a small line", "[neighborhood]") {
  const std::vector<double> x{0, 1, 2, 10};
  const auto t = calculate_neighborhood(x, 1.5);
  CHECK(t.upper == idx({1, 2, 2, 3}));
  CHECK(t.lower == idx({0, 0, 1, 3}));
  CHECK(neighborhood_size(1, t) == 3);
  CHECK_THROWS_AS(neighborhood_size(4, t), BoundsError);
}

TEST_CASE("single point is its own neighborhood", "[neighborhood]") {
  const std::vector<double> x{5};
  for (const double eps : {0.0, 1.0, 1e9}) {
    const auto t = calculate_neighborhood(x, eps);
    CHECK(t.lower == idx({0}));
    CHECK(t.upper == idx({0}));
    CHECK(neighborhood_size(0, t) == 1);
  }
}

TEST_CASE("closed neighborhood at epsilon zero", "[neighborhood]") {
  const std::vector<double> x{0, 0, 0};
  const auto t = calculate_neighborhood(x, 0.0);
  CHECK(t.lower == idx({0, 0, 0}));
  CHECK(t.upper == idx({2, 2, 2}));
}

TEST_CASE("ties at exactly epsilon are included", "[neighborhood]") {
  const std::vector<double> x{0.0, 0.25, 0.75};
  const auto t = calculate_neighborhood(x, 0.5);
  CHECK(t.upper == idx({1, 2, 2}));
  CHECK(t.lower == idx({0, 0, 1}));
}

TEST_CASE("neighborhood rejects bad input", "[neighborhood]") {
  CHECK_THROWS_AS(calculate_neighborhood(std::vector<double>{1, 0}, 1.0), SortednessError);
  CHECK_THROWS_AS(calculate_neighborhood(std::vector<double>{0, NAN}, 1.0), DomainError);
  CHECK_THROWS_AS(calculate_neighborhood(std::vector<double>{0, 1}, -1.0), ParameterError);
  CHECK(calculate_neighborhood(std::vector<double>{}, 1.0).empty());
}

TEST_CASE("point set construction validates", "[pointset]") {
  CHECK_THROWS_AS(PointSet1D::from_sorted({2, 1}), SortednessError);
  CHECK_THROWS_AS(PointSet1D::from_sorted({0, INFINITY}), DomainError);
  CHECK_THROWS_AS(PointSet1D::sort({0, NAN}), DomainError);
  const auto s = PointSet1D::sort({3, 1, 2});
  CHECK(std::vector<double>(s.values().begin(), s.values().end()) == std::vector<double>{1, 2, 3});
}

TEST_CASE("params and policy parsing", "[params]") {
  CHECK_THROWS_AS((DbscanParams{-1.0, 1}.validate()), ParameterError);
  CHECK_THROWS_AS((DbscanParams{NAN, 1}.validate()), ParameterError);
  CHECK_THROWS_AS((DbscanParams{1.0, 0}.validate()), ParameterError);
  CHECK(parse_border_policy("first") == BorderPolicy::FirstCluster);
  CHECK(parse_border_policy("all") == BorderPolicy::AllClusters);
  CHECK(parse_border_policy("noise") == BorderPolicy::AsNoise);
  CHECK_THROWS_WITH(parse_border_policy("bogus"), ContainsSubstring("bogus"));
  CHECK(std::string(to_string(BorderPolicy::AllClusters)) == "all");
}

TEST_CASE("expand_cluster grows a range", "[expand]") {
  const std::vector<double> x{0, 0.1, 0.2, 5, 5.1, 5.2};
  const DbscanParams p{0.15, 2};
  const auto t = calculate_neighborhood(x, p.epsilon);
  std::vector<Label> labels(x.size(), kNotVisited);
  const auto c = expand_cluster(x, 0, t, labels, 1, p);
  CHECK(c == Cluster1D{1, 0, 2});
  CHECK(labels == std::vector<Label>{1, 1, 1, 0, 0, 0});

  SECTION("already visited point is refused") {
    CHECK_THROWS_AS(expand_cluster(x, 1, t, labels, 2, p), ContractError);
  }
}

TEST_CASE("expand_cluster reaches through a core chain", "[expand]") {
  const std::vector<double> x{0, 0.1, 0.25};
  const DbscanParams p{0.15, 2};
  const auto t = calculate_neighborhood(x, p.epsilon);
  std::vector<Label> labels(3, kNotVisited);
  CHECK(expand_cluster(x, 0, t, labels, 1, p) == Cluster1D{1, 0, 2});
}

TEST_CASE("expand_cluster singleton and non-core", "[expand]") {
  const std::vector<double> x{0, 10, 20};
  const auto t = calculate_neighborhood(x, 1.0);
  std::vector<Label> labels(3, kNotVisited);
  CHECK(expand_cluster(x, 1, t, labels, 1, DbscanParams{1.0, 1}) == Cluster1D{1, 1, 1});
  CHECK_THROWS_AS(expand_cluster(x, 0, t, labels, 2, DbscanParams{1.0, 2}), ContractError);
}

TEST_CASE("expand_cluster relabels noise as border", "[expand]") {
  // x_0 is not core and was marked noise by the scan before x_1 was reached.
  const std::vector<double> x{0.0, 0.125, 0.25, 0.375};
  const DbscanParams p{0.125, 3};
  const auto t = calculate_neighborhood(x, p.epsilon);
  std::vector<Label> labels{kNoise, kNotVisited, kNotVisited, kNotVisited};
  const auto c = expand_cluster(x, 1, t, labels, 1, p);
  CHECK(c == Cluster1D{1, 0, 3});
  CHECK(labels == std::vector<Label>{1, 1, 1, 1});
}

TEST_CASE("dbscan_1d examples", "[dbscan]") {
  SECTION("two separated groups") {
    const auto r = dbscan_1d(std::vector<double>{0, 0.1, 0.2, 5, 5.1, 5.2}, {0.15, 2});
    REQUIRE(r.clusters.size() == 2);
    CHECK(r.clusters[0] == Cluster1D{1, 0, 2});
    CHECK(r.clusters[1] == Cluster1D{2, 3, 5});
    CHECK(r.labels == std::vector<Label>{1, 1, 1, 2, 2, 2});
  }
  SECTION("isolated points are noise") {
    const auto r = dbscan_1d(std::vector<double>{0, 10, 20}, {1.0, 2});
    CHECK(r.clusters.empty());
    CHECK(r.labels == std::vector<Label>{kNoise, kNoise, kNoise});
  }
  SECTION("minPoints 1 gives gap runs") {
    const std::vector<double> x{0, 0.5, 1.0, 3, 3.2, 9};
    const auto r = dbscan_1d(x, {0.5, 1});
    CHECK(r.labels == std::vector<Label>{1, 1, 1, 2, 2, 3});
  }
  SECTION("empty input") {
    const auto r = dbscan_1d(std::vector<double>{}, {1.0, 2});
    CHECK(r.labels.empty());
    CHECK(r.clusters.empty());
  }
  SECTION("duplicates at epsilon zero") {
    const auto r = dbscan_1d(std::vector<double>{1, 1, 1, 2, 3, 3}, {0.0, 2});
    CHECK(r.labels == std::vector<Label>{1, 1, 1, kNoise, 2, 2});
  }
  SECTION("unsorted input is rejected") {
    CHECK_THROWS_AS(dbscan_1d(std::vector<double>{1, 0}, {1.0, 1}), SortednessError);
  }
}

TEST_CASE("border policies on a shared border point", "[dbscan][policy]") {
  // y_4 is within epsilon of the cores y_3 and y_5 but is not core itself.
  const std::vector<double> y{0, 0.125, 0.25, 0.375, 0.875, 1.375, 1.5, 1.625, 1.75};
  const auto t = calculate_neighborhood(y, 0.5);
  REQUIRE(neighborhood_size(4, t) == 3);

  SECTION("first") {
    const auto r = dbscan_1d(y, {0.5, 4, BorderPolicy::FirstCluster});
    CHECK(r.labels == std::vector<Label>{1, 1, 1, 1, 1, 2, 2, 2, 2});
    CHECK(r.clusters[0] == Cluster1D{1, 0, 4});
    CHECK(r.clusters[1] == Cluster1D{2, 5, 8});
  }
  SECTION("all") {
    const auto r = dbscan_1d(y, {0.5, 4, BorderPolicy::AllClusters});
    CHECK(r.labels == std::vector<Label>{1, 1, 1, 1, 1, 2, 2, 2, 2});
    CHECK(r.clusters[0] == Cluster1D{1, 0, 4});
    CHECK(r.clusters[1] == Cluster1D{2, 4, 8});
    CHECK(cluster_members(r.clusters[1], r.labels, BorderPolicy::AllClusters) ==
          std::vector<std::size_t>{4, 5, 6, 7, 8});
  }
  SECTION("noise") {
    const auto r = dbscan_1d(y, {0.5, 4, BorderPolicy::AsNoise});
    CHECK(r.labels == std::vector<Label>{1, 1, 1, 1, kNoise, 2, 2, 2, 2});
    CHECK(r.clusters[0] == Cluster1D{1, 0, 3});
    CHECK(r.clusters[1] == Cluster1D{2, 5, 8});
  }
}

TEST_CASE("workspace reuse gives identical results", "[workspace]") {
  SplitMix64 rng(7);
  Dbscan1D ws(256);
  for (int k = 0; k < 50; ++k) {
    const auto inst = testing::random_instance(rng, false);
    ws.run(inst.values, inst.params);
    const auto fresh = dbscan_1d(inst.values, inst.params);
    CHECK(std::vector<Label>(ws.labels().begin(), ws.labels().end()) == fresh.labels);
    CHECK(ws.clusters() == fresh.clusters);
  }
}

TEST_CASE("fuzz: oracle equivalence and invariants (linear)", "[fuzz]") {
  SplitMix64 rng(0x5eed1);
  for (int k = 0; k < 600; ++k) {
    const auto inst = testing::random_instance(rng, false);
    const auto &x = inst.values;
    const auto n = static_cast<Index>(x.size());
    const auto r = dbscan_1d(x, inst.params);
    const auto naive = oracle::naive_dbscan(x, inst.params.epsilon, inst.params.min_points,
                                            oracle::Metric::linear(), inst.params.border_policy);
    INFO("instance " << k << " n=" << n << " eps=" << inst.params.epsilon
                     << " minPts=" << inst.params.min_points << " policy="
                     << to_string(inst.params.border_policy));
    REQUIRE(r.labels == naive.labels);
    REQUIRE(r.clusters.size() == naive.members.size());
    for (std::size_t c = 0; c < r.clusters.size(); ++c) {
      CHECK(r.clusters[c].id == static_cast<Label>(c + 1));
      CHECK(cluster_members(r.clusters[c], r.labels, inst.params.border_policy) == naive.members[c]);
    }

    // Bounds: monotone and exact.
    const auto t = calculate_neighborhood(x, inst.params.epsilon);
    for (Index i = 0; i < n; ++i) {
      CHECK((t.lower[i] <= i && i <= t.upper[i]));
      if (i > 0) {
        CHECK(t.upper[i] >= t.upper[i - 1]);
        CHECK(t.lower[i] >= t.lower[i - 1]);
      }
      const auto hood = oracle::naive_neighborhood(x, i, inst.params.epsilon, oracle::Metric::linear());
      REQUIRE(!hood.empty());
      CHECK(static_cast<Index>(hood.front()) == t.lower[i]);
      CHECK(static_cast<Index>(hood.back()) == t.upper[i]);
      CHECK(static_cast<Index>(hood.size()) == neighborhood_size(i, t));
    }

    // Counters.
    CHECK(r.counters.neighborhood_steps == 2 * static_cast<std::uint64_t>(n));
    CHECK(r.counters.expand_touches <= 2 * static_cast<std::uint64_t>(n));

    // Coverage and disjointness.
    for (const auto label : r.labels)
      CHECK(label != kNotVisited);
    if (inst.params.border_policy != BorderPolicy::AllClusters)
      for (std::size_t c = 1; c < r.clusters.size(); ++c)
        CHECK(r.clusters[c - 1].upper < r.clusters[c].lower);

    // Lemma 2: each cluster equals the closure of any of its core points,
    // which is what the oracle's component search computes.
    for (std::size_t c = 0; c < r.clusters.size(); ++c)
      for (Index i = r.clusters[c].lower; i <= r.clusters[c].upper; ++i)
        if (naive.core[i])
          CHECK(r.labels[i] == static_cast<Label>(c + 1));
  }
}

TEST_CASE("reversal mirrors clusters", "[fuzz]") {
  SplitMix64 rng(99);
  for (int k = 0; k < 100; ++k) {
    auto inst = testing::random_instance(rng, false);
    inst.params.border_policy = BorderPolicy::AllClusters;
    std::vector<double> mirrored(inst.values.rbegin(), inst.values.rend());
    for (auto &v : mirrored)
      v = -v;
    const auto a = dbscan_1d(inst.values, inst.params);
    const auto b = dbscan_1d(mirrored, inst.params);
    REQUIRE(a.clusters.size() == b.clusters.size());
    const auto n = static_cast<Index>(inst.values.size());
    const auto m = a.clusters.size();
    for (std::size_t c = 0; c < m; ++c) {
      CHECK(a.clusters[c].lower == n - 1 - b.clusters[m - 1 - c].upper);
      CHECK(a.clusters[c].upper == n - 1 - b.clusters[m - 1 - c].lower);
    }
  }
}

TEST_CASE("recluster_subrange matches a fresh run", "[recluster]") {
  SplitMix64 rng(123);
  Dbscan1D ws(256);
  for (int k = 0; k < 100; ++k) {
    auto inst = testing::random_instance(rng, false);
    std::vector<std::size_t> perm(inst.values.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    // Re-key by a reversed copy and sort it with its permutation.
    std::vector<double> keys(inst.values.rbegin(), inst.values.rend());
    std::vector<std::pair<double, std::size_t>> scratch;
    sort_with_permutation(keys, perm, scratch);
    CHECK(std::is_sorted(keys.begin(), keys.end()));

    const auto clusters = recluster_subrange(keys, inst.params, ws);
    const auto fresh = dbscan_1d(keys, inst.params);
    CHECK(clusters == fresh.clusters);

    // With every point core, a larger epsilon only merges clusters.
    auto narrow = inst.params;
    narrow.min_points = 1;
    auto wider = narrow;
    wider.epsilon *= 2.0;
    const auto n1 = recluster_subrange(keys, narrow, ws).size();
    CHECK(recluster_subrange(keys, wider, ws).size() <= n1);

    for (const auto &c : recluster_subrange(keys, inst.params, ws)) {
      const auto members = translate_members(c, ws, perm);
      CHECK(std::is_sorted(members.begin(), members.end()));
      for (const auto m : members)
        CHECK(m < inst.values.size());
    }
  }
}

TEST_CASE("recluster of a too-small slice is all noise", "[recluster]") {
  Dbscan1D ws;
  const std::vector<double> slice{0.0, 0.01};
  CHECK(recluster_subrange(slice, {1.0, 3}, ws).empty());
  for (const auto l : ws.labels())
    CHECK(l == kNoise);
}

TEST_CASE("sort_with_permutation breaks ties by original index", "[recluster]") {
  std::vector<double> keys{2.0, 1.0, 2.0, 1.0};
  std::vector<std::size_t> perm{10, 11, 12, 13};
  std::vector<std::pair<double, std::size_t>> scratch;
  sort_with_permutation(keys, perm, scratch);
  CHECK(keys == std::vector<double>{1.0, 1.0, 2.0, 2.0});
  CHECK(perm == std::vector<std::size_t>{11, 13, 10, 12});
}
