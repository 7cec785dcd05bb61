#include "linex/dbscan1d.hpp"

#include "linex/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

namespace linex {

const char *to_string(BorderPolicy policy) noexcept {
  switch (policy) {
  case BorderPolicy::FirstCluster:
    return "first";
  case BorderPolicy::AllClusters:
    return "all";
  case BorderPolicy::AsNoise:
    return "noise";
  }
  return "?";
}

BorderPolicy parse_border_policy(const char *text) {
  const std::string s = text ? text : "";
  if (s == "first" || s == "FirstCluster")
    return BorderPolicy::FirstCluster;
  if (s == "all" || s == "AllClusters")
    return BorderPolicy::AllClusters;
  if (s == "noise" || s == "AsNoise")
    return BorderPolicy::AsNoise;
  throw ParameterError("unknown border policy '" + s + "' (expected first, all or noise)");
}

void require_sorted_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw DomainError("non-finite value at index " + std::to_string(i));
    if (i > 0 && values[i] < values[i - 1])
      throw SortednessError("input not sorted ascending at index " + std::to_string(i));
  }
}

PointSet1D PointSet1D::from_sorted(std::vector<double> values) {
  require_sorted_finite(values);
  return PointSet1D(std::move(values));
}

PointSet1D PointSet1D::sort(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw DomainError("non-finite value at index " + std::to_string(i));
  std::sort(values.begin(), values.end());
  return PointSet1D(std::move(values));
}

void DbscanParams::validate() const {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw ParameterError("epsilon must be finite and non-negative");
  if (min_points < 1)
    throw ParameterError("minPoints must be at least 1");
}

CircularDomain::CircularDomain(double period) : period_(period) {
  if (!std::isfinite(period) || period <= 0.0)
    throw ParameterError("circular period must be finite and positive");
}

double CircularDomain::distance(double a, double b) const noexcept {
  const double d = std::fabs(a - b);
  return std::min(d, period_ - d);
}

// ---------------------------------------------------------------------------
// Neighborhood bounds
// ---------------------------------------------------------------------------

void calculate_neighborhood(std::span<const double> points, double epsilon,
                            NeighborhoodTable &out, OpCounters *counters) {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw ParameterError("epsilon must be finite and non-negative");
  require_sorted_finite(points);

  const auto n = static_cast<Index>(points.size());
  out.lower.resize(points.size());
  out.upper.resize(points.size());
  std::uint64_t steps = 0;

  // Both pointers only ever advance, so each loop does exactly N steps. The
  // loops are written as merges (each iteration moves either the pointer or
  // i) so the data-dependent exit compiles without a branch.
  if (n == 0)
    return;
  for (Index i = 0, u = 0; i < n;) {
    const bool advance = (u < n) & (points[std::min(u, n - 1)] - points[i] <= epsilon);
    out.upper[i] = u - 1;
    u += advance;
    i += !advance;
    steps += advance;
  }
  for (Index i = n - 1, l = n - 1; i >= 0;) {
    const bool advance = (l >= 0) & (points[i] - points[std::max<Index>(l, 0)] <= epsilon);
    out.lower[i] = l + 1;
    l -= advance;
    i -= !advance;
    steps += advance;
  }

  if (counters)
    counters->neighborhood_steps += steps;
}

NeighborhoodTable calculate_neighborhood(std::span<const double> points, double epsilon,
                                         OpCounters *counters) {
  NeighborhoodTable table;
  calculate_neighborhood(points, epsilon, table, counters);
  return table;
}

namespace {

void require_circular(std::span<const double> points, double epsilon,
                      const CircularDomain &domain) {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw ParameterError("epsilon must be finite and non-negative");
  if (!(epsilon < domain.period() / 2.0))
    throw ParameterError("circular clustering requires epsilon < period / 2");
  require_sorted_finite(points);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i] < 0.0 || points[i] >= domain.period())
      throw DomainError("value at index " + std::to_string(i) + " outside [0, period)");
}

} // namespace

void calculate_neighborhood_circular(std::span<const double> points, double epsilon,
                                     const CircularDomain &domain, NeighborhoodTable &out,
                                     OpCounters *counters) {
  require_circular(points, epsilon, domain);

  const auto n = static_cast<Index>(points.size());
  const double period = domain.period();
  out.lower.resize(points.size());
  out.upper.resize(points.size());
  std::uint64_t steps = 0;

  // Forward distance from x_i to unwrapped index j in [i, i + N). Written as
  // |a - b| or period - |a - b| so it agrees bit-for-bit with
  // CircularDomain::distance on the same pair. Loops as in the linear case.
  const auto forward = [&](Index i, Index j) {
    const double xj = points[j < n ? j : j - n];
    return j < n ? xj - points[i] : period - (points[i] - xj);
  };
  const auto backward = [&](Index i, Index j) {
    const double xj = points[j >= 0 ? j : j + n];
    return j >= 0 ? points[i] - xj : period - (xj - points[i]);
  };

  for (Index i = 0, u = 0; i < n;) {
    const bool advance = (u < i + n) && forward(i, u) <= epsilon;
    out.upper[i] = u - 1;
    u += advance;
    i += !advance;
    steps += advance;
  }
  for (Index i = n - 1, l = n - 1; i >= 0;) {
    const bool advance = (l > i - n) && backward(i, l) <= epsilon;
    out.lower[i] = l + 1;
    l -= advance;
    i -= !advance;
    steps += advance;
  }

  if (counters)
    counters->neighborhood_steps += steps;
}

NeighborhoodTable calculate_neighborhood_circular(std::span<const double> points, double epsilon,
                                                  const CircularDomain &domain,
                                                  OpCounters *counters) {
  NeighborhoodTable table;
  calculate_neighborhood_circular(points, epsilon, domain, table, counters);
  return table;
}

Index neighborhood_size(std::size_t i, const NeighborhoodTable &table) {
  if (i >= table.size())
    throw BoundsError("index " + std::to_string(i) + " outside neighborhood table of size " +
                      std::to_string(table.size()));
  return table.upper[i] - table.lower[i] + 1;
}

// ---------------------------------------------------------------------------
// Cluster expansion
// ---------------------------------------------------------------------------

namespace {

template <bool Circular>
Cluster1D expand(std::size_t seed, const NeighborhoodTable &table, std::span<Label> labels,
                 Label id, std::size_t min_points, BorderPolicy policy, std::uint64_t &touches) {
  const auto n = static_cast<Index>(labels.size());
  const auto min_pts = static_cast<Index>(min_points);
  const auto p = static_cast<Index>(seed);

  const auto position = [n](Index j) -> std::size_t {
    if constexpr (Circular) {
      Index r = j % n;
      return static_cast<std::size_t>(r < 0 ? r + n : r);
    } else {
      (void)n;
      return static_cast<std::size_t>(j);
    }
  };
  const auto is_core = [&](std::size_t q) {
    return table.upper[q] - table.lower[q] + 1 >= min_pts;
  };

  labels[seed] = id;
  Index hi = table.upper[seed];
  Index lo = table.lower[seed];
  Index first = p;
  Index last = p;
  Index absorbed = 1;

  // Applies the policy to position j; returns whether j joins the cluster and,
  // through `core`, whether it was a fresh core point whose bounds extend the sweep.
  const auto visit = [&](Index j, bool &core) {
    ++touches;
    core = false;
    const std::size_t q = position(j);
    Label &c = labels[q];
    if (c == kNotVisited) {
      if (is_core(q)) {
        c = id;
        core = true;
        return true;
      }
      if (policy == BorderPolicy::AsNoise) {
        c = kNoise;
        return false;
      }
      c = id;
      return true;
    }
    if (c == kNoise) {
      if (policy == BorderPolicy::AsNoise)
        return false;
      c = id;
      return true;
    }
    // Border point already claimed by an earlier cluster.
    return policy == BorderPolicy::AllClusters && c != id;
  };

  // Upward: follow core points toward larger indices. In the circular case the
  // sweep stops one short of wrapping onto the seed.
  const Index up_limit = Circular ? p + n - 1 : n - 1;
  Index i = p + 1;
  for (; i <= hi && i <= up_limit; ++i) {
    bool core = false;
    if (!visit(i, core))
      continue;
    last = i;
    ++absorbed;
    if (core) {
      const std::size_t q = position(i);
      hi = std::max(hi, table.upper[q] + (i - static_cast<Index>(q)));
    }
  }
  const Index top = i - 1;

  // Downward: symmetric, and never reaches a position the upward sweep covered.
  const Index down_limit = Circular ? top - n + 1 : 0;
  for (Index j = p - 1; j >= lo && j >= down_limit; --j) {
    bool core = false;
    if (!visit(j, core))
      continue;
    first = j;
    ++absorbed;
    if (core) {
      const std::size_t q = position(j);
      lo = std::min(lo, table.lower[q] + (j - static_cast<Index>(q)));
    }
  }

  if constexpr (Circular) {
    if (absorbed == n)
      return {id, p, p + n - 1};
    Index shift = first % n;
    if (shift < 0)
      shift += n;
    shift -= first;
    return {id, first + shift, last + shift};
  } else {
    return {id, first, last};
  }
}

bool is_core(std::size_t p, const NeighborhoodTable &table, std::size_t min_points) {
  return neighborhood_size(p, table) >= static_cast<Index>(min_points);
}

void check_expand_args(std::span<const double> points, std::size_t p,
                       const NeighborhoodTable &table, std::span<const Label> labels,
                       Label cluster_id, const DbscanParams &params) {
  params.validate();
  if (table.size() != points.size() || labels.size() != points.size())
    throw ContractError("points, neighborhood table and labels differ in length");
  if (p >= points.size())
    throw BoundsError("core point index " + std::to_string(p) + " out of range");
  if (cluster_id < 1)
    throw ContractError("cluster id must be positive");
  if (labels[p] != kNotVisited)
    throw ContractError("expansion seed " + std::to_string(p) + " was already visited");
  if (!is_core(p, table, params.min_points))
    throw ContractError("expansion seed " + std::to_string(p) + " is not a core point");
}

} // namespace

Cluster1D expand_cluster(std::span<const double> points, std::size_t p,
                         const NeighborhoodTable &table, std::span<Label> labels,
                         Label cluster_id, const DbscanParams &params, OpCounters *counters) {
  check_expand_args(points, p, table, labels, cluster_id, params);
  std::uint64_t touches = 0;
  auto cluster = expand<false>(p, table, labels, cluster_id, params.min_points,
                               params.border_policy, touches);
  if (counters)
    counters->expand_touches += touches;
  return cluster;
}

Cluster1D expand_cluster_circular(std::span<const double> points, std::size_t p,
                                  const NeighborhoodTable &table, std::span<Label> labels,
                                  Label cluster_id, const DbscanParams &params,
                                  OpCounters *counters) {
  check_expand_args(points, p, table, labels, cluster_id, params);
  std::uint64_t touches = 0;
  auto cluster = expand<true>(p, table, labels, cluster_id, params.min_points,
                              params.border_policy, touches);
  if (counters)
    counters->expand_touches += touches;
  return cluster;
}

std::vector<std::size_t> cluster_members(const Cluster1D &cluster, std::span<const Label> labels,
                                         BorderPolicy policy) {
  std::vector<std::size_t> members;
  const auto n = static_cast<Index>(labels.size());
  if (n == 0 || cluster.length() <= 0)
    return members;
  members.reserve(static_cast<std::size_t>(cluster.length()));
  for (Index j = cluster.lower; j <= cluster.upper; ++j) {
    Index q = j % n;
    if (q < 0)
      q += n;
    const auto pos = static_cast<std::size_t>(q);
    if (policy == BorderPolicy::AllClusters || labels[pos] == cluster.id)
      members.push_back(pos);
  }
  return members;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

Dbscan1D::Dbscan1D(std::size_t capacity) { reserve(capacity); }

void Dbscan1D::reserve(std::size_t capacity) {
  table_.lower.reserve(capacity);
  table_.upper.reserve(capacity);
  labels_.reserve(capacity);
}

template <bool Circular>
void Dbscan1D::cluster_points(std::span<const double> points) {
  const std::size_t n = points.size();
  const auto min_pts = static_cast<Index>(params_.min_points);
  labels_.assign(n, kNotVisited);
  clusters_.clear();

  Label id = 1;
  std::uint64_t touches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels_[i] != kNotVisited)
      continue;
    if (table_.upper[i] - table_.lower[i] + 1 < min_pts) {
      labels_[i] = kNoise;
      continue;
    }
    clusters_.push_back(
        expand<Circular>(i, table_, labels_, id, params_.min_points, params_.border_policy, touches));
    ++id;
  }
  counters_.expand_touches += touches;
}

void Dbscan1D::run(std::span<const double> points, const DbscanParams &params) {
  params.validate();
  params_ = params;
  counters_ = {};
  calculate_neighborhood(points, params.epsilon, table_, &counters_);
  cluster_points<false>(points);
}

void Dbscan1D::run_circular(std::span<const double> points, const DbscanParams &params,
                            const CircularDomain &domain) {
  params.validate();
  params_ = params;
  counters_ = {};
  calculate_neighborhood_circular(points, params.epsilon, domain, table_, &counters_);
  cluster_points<true>(points);
}

Clustering dbscan_1d(std::span<const double> points, const DbscanParams &params) {
  Dbscan1D workspace(points.size());
  workspace.run(points, params);
  return workspace.result();
}

Clustering dbscan_1d_circular(std::span<const double> points, const DbscanParams &params,
                              const CircularDomain &domain) {
  Dbscan1D workspace(points.size());
  workspace.run_circular(points, params, domain);
  return workspace.result();
}

// ---------------------------------------------------------------------------
// Re-clustering
// ---------------------------------------------------------------------------

void sort_with_permutation(std::span<double> keys, std::span<std::size_t> permutation,
                           std::vector<std::pair<double, std::size_t>> &scratch) {
  if (keys.size() != permutation.size())
    throw ContractError("key slice and permutation differ in length");
  scratch.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    scratch[i] = {keys[i], permutation[i]};
  std::sort(scratch.begin(), scratch.end());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    keys[i] = scratch[i].first;
    permutation[i] = scratch[i].second;
  }
}

std::vector<Cluster1D> recluster_subrange(std::span<const double> slice,
                                          const DbscanParams &params, Dbscan1D &workspace) {
  workspace.run(slice, params);
  return workspace.clusters();
}

std::vector<std::size_t> translate_members(const Cluster1D &cluster, const Dbscan1D &workspace,
                                           std::span<const std::size_t> permutation) {
  if (permutation.size() != workspace.labels().size())
    throw ContractError("permutation does not match the last clustered slice");
  auto members = cluster_members(cluster, workspace.labels(), workspace.params().border_policy);
  for (auto &m : members)
    m = permutation[m];
  std::sort(members.begin(), members.end());
  return members;
}

} // namespace linex
