#pragma once

// Two-stage line extraction from a 2D range scan.
//
// Stage 1 clusters scan points by local line angle on the period-pi circle, so
// parallel walls on opposite sides of the sensor fall into one angular
// cluster. Stage 2 splits each angular cluster by signed distance to the line
// through the origin at the cluster's mean angle, which separates parallel
// lines. Both stages are 1D DBSCAN runs on sorted keys.

#include "linex/dbscan1d.hpp"
#include "linex/geometry.hpp"
#include "linex/scan.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace linex {

/// Defaults suit 360-beam indoor scans with about 1% range noise.
struct SegmentationParams {
  double epsilon_theta = 0.08; ///< radians, must be < pi/2
  double epsilon_dist = 0.15;  ///< meters
  std::size_t min_points = 10;
  BorderPolicy border_policy = BorderPolicy::FirstCluster;

  /// Throws ParameterError.
  void validate() const;
};

/// Maps positions of a sorted key array back to original scan indices.
struct IndexPermutation {
  std::vector<std::size_t> to_original;

  std::size_t size() const noexcept { return to_original.size(); }
  std::size_t operator[](std::size_t sorted_position) const noexcept {
    return to_original[sorted_position];
  }
};

struct FeatureCluster {
  std::uint32_t id = 0;
  std::uint32_t angular_cluster = 0;     ///< id of the stage-1 cluster it came from
  std::vector<std::size_t> point_indices; ///< original scan indices, ascending
  double mean_theta = 0.0;                ///< mean line direction in [0, pi)
  bool mean_fallback = false;             ///< mean undefined; median member angle used
  std::optional<PolarLine> fitted_line;   ///< set by fit_cluster_lines
  std::string fit_error;                  ///< set when the fit failed
};

/// Per-stage wall time of the last run, nanoseconds.
struct SegmentationTimings {
  std::int64_t angle_ns = 0;
  std::int64_t angular_ns = 0;
  std::int64_t distance_ns = 0;
};

/// Pipeline with scratch memory sized once for the scan length. The scan's
/// theta and dist channels are overwritten by each run.
class AngularSegmenter {
public:
  explicit AngularSegmenter(SegmentationParams params, std::size_t expected_points = 0);

  /// Throws InsufficientDataError when fewer than max(3, minPoints) readings are valid.
  std::vector<FeatureCluster> segment(Scan &scan);

  /// Stage-1 clusters of the last run, in original scan indices.
  const std::vector<std::vector<std::size_t>> &angular_clusters() const noexcept {
    return angular_clusters_;
  }
  const SegmentationTimings &timings() const noexcept { return timings_; }
  const SegmentationParams &params() const noexcept { return params_; }

private:
  SegmentationParams params_;
  Dbscan1D angle_workspace_;
  Dbscan1D dist_workspace_;
  std::vector<double> keys_;
  IndexPermutation permutation_;
  std::vector<double> sub_keys_;
  std::vector<std::size_t> sub_permutation_;
  std::vector<double> member_angles_;
  std::vector<std::pair<double, std::size_t>> sort_scratch_;
  std::vector<std::vector<std::size_t>> angular_clusters_;
  SegmentationTimings timings_;
};

/// One-shot form of AngularSegmenter::segment. Does not fit lines.
std::vector<FeatureCluster> angular_segmentation(Scan &scan, const SegmentationParams &params);

/// Fits a TLS line to each cluster's member points. Clusters whose geometry is
/// degenerate keep `fitted_line` empty and carry the error message.
void fit_cluster_lines(const Scan &scan, std::vector<FeatureCluster> &clusters);

/// Per-point final cluster id (0 = noise) for a scan of `n` points. Under
/// AllClusters a shared point reports the lowest id.
std::vector<std::uint32_t> point_labels(std::size_t n, const std::vector<FeatureCluster> &clusters);

} // namespace linex
