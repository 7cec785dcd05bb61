#pragma once

// Linear-time DBSCAN for sorted one-dimensional data.
//
// Points are consumed as an ascending sequence x_0 <= ... <= x_{N-1}. Because
// the data is sorted, every epsilon-neighborhood is a contiguous index range
// [l_i, u_i], and both bound tables come out of one two-pointer sweep each.
// Clusters are contiguous index ranges grown outward from a core point.
//
// The circular variant treats values as points on a circle of a given period
// (2*pi for directions, pi for undirected line angles). Bounds are then
// "unwrapped": index j refers to x_{j mod N}, so l_i may be negative and u_i
// may exceed N-1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace linex {

using Index = std::int64_t;

/// Per-point label: 0 = not visited, -1 = noise, k >= 1 = cluster id.
using Label = std::int32_t;
inline constexpr Label kNotVisited = 0;
inline constexpr Label kNoise = -1;

enum class BorderPolicy {
  FirstCluster, ///< border point joins the first cluster that reaches it
  AllClusters,  ///< border point joins every cluster that reaches it
  AsNoise,      ///< border points are labeled noise; clusters hold core points only
};

const char *to_string(BorderPolicy policy) noexcept;
/// Accepts "first", "all", "noise" (and the enumerator names). Throws ParameterError.
BorderPolicy parse_border_policy(const char *text);

/// Sorted, finite scalar samples. Construction validates; the object is
/// immutable afterwards and converts to a span for the clustering routines.
class PointSet1D {
public:
  PointSet1D() = default;

  /// Takes values that must already be ascending. Throws SortednessError or DomainError.
  static PointSet1D from_sorted(std::vector<double> values);
  /// Sorts the values first. Throws DomainError on NaN/infinity.
  static PointSet1D sort(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  operator std::span<const double>() const noexcept { return values_; }

private:
  explicit PointSet1D(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

struct DbscanParams {
  double epsilon = 0.0;
  std::size_t min_points = 1;
  BorderPolicy border_policy = BorderPolicy::FirstCluster;

  /// epsilon finite and >= 0, min_points >= 1. Throws ParameterError.
  void validate() const;
};

class CircularDomain {
public:
  /// Throws ParameterError unless period is finite and positive.
  explicit CircularDomain(double period);

  double period() const noexcept { return period_; }
  /// min(|a-b|, period-|a-b|) for a, b in [0, period).
  double distance(double a, double b) const noexcept;

private:
  double period_;
};

struct NeighborhoodTable {
  std::vector<Index> lower;
  std::vector<Index> upper;

  std::size_t size() const noexcept { return lower.size(); }
  bool empty() const noexcept { return lower.empty(); }
};

/// Instrumentation for the linear-work claim.
struct OpCounters {
  std::uint64_t neighborhood_steps = 0; ///< pointer advances while computing bounds
  std::uint64_t expand_touches = 0;     ///< points visited by all cluster expansions

  std::uint64_t total() const noexcept { return neighborhood_steps + expand_touches; }
  OpCounters &operator+=(const OpCounters &other) noexcept {
    neighborhood_steps += other.neighborhood_steps;
    expand_touches += other.expand_touches;
    return *this;
  }
};

/// Contiguous range of positions [lower, upper] in the sorted input. In the
/// circular case lower is in [0, N) and upper may reach lower + N - 1; position
/// j then means j mod N.
struct Cluster1D {
  Label id = 0;
  Index lower = 0;
  Index upper = -1;

  Index length() const noexcept { return upper - lower + 1; }
  friend bool operator==(const Cluster1D &, const Cluster1D &) = default;
};

struct Clustering {
  std::vector<Label> labels;
  std::vector<Cluster1D> clusters;
  OpCounters counters;
};

/// Throws SortednessError / DomainError if the values are unordered or non-finite.
void require_sorted_finite(std::span<const double> values);

NeighborhoodTable calculate_neighborhood(std::span<const double> points, double epsilon,
                                         OpCounters *counters = nullptr);
void calculate_neighborhood(std::span<const double> points, double epsilon,
                            NeighborhoodTable &out, OpCounters *counters = nullptr);

/// Requires epsilon < period / 2 (ParameterError) and values in [0, period) (DomainError).
NeighborhoodTable calculate_neighborhood_circular(std::span<const double> points, double epsilon,
                                                  const CircularDomain &domain,
                                                  OpCounters *counters = nullptr);
void calculate_neighborhood_circular(std::span<const double> points, double epsilon,
                                     const CircularDomain &domain, NeighborhoodTable &out,
                                     OpCounters *counters = nullptr);

/// u_i - l_i + 1. Throws BoundsError for i outside the table.
Index neighborhood_size(std::size_t i, const NeighborhoodTable &table);

/// Grows the cluster containing core point p and labels its members with
/// `cluster_id` according to the border policy. Work is linear in the range
/// swept. Throws ContractError if p is not a core point or was already visited.
Cluster1D expand_cluster(std::span<const double> points, std::size_t p,
                         const NeighborhoodTable &table, std::span<Label> labels,
                         Label cluster_id, const DbscanParams &params,
                         OpCounters *counters = nullptr);

/// Circular counterpart of expand_cluster; `table` must come from
/// calculate_neighborhood_circular. A chain that closes the circle yields one
/// cluster [p, p + N - 1].
Cluster1D expand_cluster_circular(std::span<const double> points, std::size_t p,
                                  const NeighborhoodTable &table, std::span<Label> labels,
                                  Label cluster_id, const DbscanParams &params,
                                  OpCounters *counters = nullptr);

Clustering dbscan_1d(std::span<const double> points, const DbscanParams &params);
Clustering dbscan_1d_circular(std::span<const double> points, const DbscanParams &params,
                              const CircularDomain &domain);

/// Positions (mod N, in range order) that belong to `cluster`. Under
/// AllClusters every position of the range is a member; otherwise members are
/// the positions carrying the cluster's label.
std::vector<std::size_t> cluster_members(const Cluster1D &cluster, std::span<const Label> labels,
                                         BorderPolicy policy);

/// Reusable scratch state (bound tables, labels, cluster list). Repeated runs
/// on inputs no larger than the reserved capacity do not allocate. One
/// instance per thread.
class Dbscan1D {
public:
  explicit Dbscan1D(std::size_t capacity = 0);

  void reserve(std::size_t capacity);

  /// Results stay valid until the next run on this instance.
  void run(std::span<const double> points, const DbscanParams &params);
  void run_circular(std::span<const double> points, const DbscanParams &params,
                    const CircularDomain &domain);

  std::span<const Label> labels() const noexcept { return labels_; }
  const std::vector<Cluster1D> &clusters() const noexcept { return clusters_; }
  const NeighborhoodTable &table() const noexcept { return table_; }
  const OpCounters &counters() const noexcept { return counters_; }
  const DbscanParams &params() const noexcept { return params_; }

  Clustering result() const { return {labels_, clusters_, counters_}; }

private:
  template <bool Circular>
  void cluster_points(std::span<const double> points);

  NeighborhoodTable table_;
  std::vector<Label> labels_;
  std::vector<Cluster1D> clusters_;
  OpCounters counters_;
  DbscanParams params_;
};

/// Stable co-sort of a key slice and its companion index permutation by
/// (key, original index). `scratch` is reused between calls.
void sort_with_permutation(std::span<double> keys, std::span<std::size_t> permutation,
                           std::vector<std::pair<double, std::size_t>> &scratch);

/// Clusters a slice that was previously one cluster, after the caller re-keyed
/// and re-sorted it. Runs in the caller's workspace; returned ranges are
/// relative to the slice, and `permutation` maps slice positions back to
/// original indices (see translate_members).
std::vector<Cluster1D> recluster_subrange(std::span<const double> slice,
                                          const DbscanParams &params, Dbscan1D &workspace);

/// Original indices of a recluster_subrange cluster, ascending.
std::vector<std::size_t> translate_members(const Cluster1D &cluster, const Dbscan1D &workspace,
                                           std::span<const std::size_t> permutation);

} // namespace linex
