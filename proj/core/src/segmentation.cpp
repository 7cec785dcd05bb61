#include "linex/segmentation.hpp"

#include "linex/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

namespace linex {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count();
}

} // namespace

void SegmentationParams::validate() const {
  if (!std::isfinite(epsilon_theta) || epsilon_theta <= 0.0)
    throw ParameterError("epsilon_theta must be positive");
  if (!(epsilon_theta < kPi / 2.0))
    throw ParameterError("epsilon_theta must be below pi/2 (line angles live on a period-pi circle)");
  if (!std::isfinite(epsilon_dist) || epsilon_dist <= 0.0)
    throw ParameterError("epsilon_dist must be positive");
  if (min_points < 1)
    throw ParameterError("minPoints must be at least 1");
}

AngularSegmenter::AngularSegmenter(SegmentationParams params, std::size_t expected_points)
    : params_(params), angle_workspace_(expected_points), dist_workspace_(expected_points) {
  params_.validate();
  keys_.reserve(expected_points);
  permutation_.to_original.reserve(expected_points);
  sub_keys_.reserve(expected_points);
  sub_permutation_.reserve(expected_points);
  member_angles_.reserve(expected_points);
  sort_scratch_.reserve(expected_points);
}

std::vector<FeatureCluster> AngularSegmenter::segment(Scan &scan) {
  const std::size_t n = scan.size();
  const std::size_t required = std::max<std::size_t>(3, params_.min_points);
  const std::size_t valid = scan.valid_count();
  if (valid < required)
    throw InsufficientDataError("segmentation needs at least " + std::to_string(required) +
                                " valid readings, got " + std::to_string(valid));

  timings_ = {};
  angular_clusters_.clear();

  const auto t0 = Clock::now();
  scan.theta = estimate_local_angles(scan);
  scan.dist.assign(n, kInvalidAngle);
  const auto t1 = Clock::now();

  // Stage 1: sort usable points by local angle and cluster on the pi-circle.
  keys_.clear();
  auto &perm = permutation_.to_original;
  perm.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (scan.valid[i] && !std::isnan(scan.theta[i])) {
      keys_.push_back(scan.theta[i]);
      perm.push_back(i);
    }
  }
  sort_with_permutation(keys_, perm, sort_scratch_);

  const DbscanParams angle_params{params_.epsilon_theta, params_.min_points,
                                  params_.border_policy};
  angle_workspace_.run_circular(keys_, angle_params, CircularDomain(kPi));
  const auto t2 = Clock::now();

  // Stage 2: within each angular cluster, split parallel lines by signed
  // distance to the through-origin line at the cluster's mean angle.
  const DbscanParams dist_params{params_.epsilon_dist, params_.min_points, params_.border_policy};
  std::vector<FeatureCluster> result;
  std::uint32_t next_id = 1;
  for (const auto &angular : angle_workspace_.clusters()) {
    const auto positions =
        cluster_members(angular, angle_workspace_.labels(), params_.border_policy);

    member_angles_.clear();
    for (const auto pos : positions)
      member_angles_.push_back(keys_[pos]);

    double mean = 0.0;
    bool fallback = false;
    try {
      mean = circular_mean(member_angles_, kPi);
    } catch (const UndefinedMeanError &) {
      mean = member_angles_[member_angles_.size() / 2];
      fallback = true;
    }
    const double normal = mean + kPi / 2.0;

    sub_keys_.clear();
    sub_permutation_.clear();
    for (const auto pos : positions) {
      const std::size_t original = perm[pos];
      const double d = signed_distance_to_origin_line(scan.point(original), normal);
      scan.dist[original] = d;
      sub_keys_.push_back(d);
      sub_permutation_.push_back(original);
    }
    sort_with_permutation(sub_keys_, sub_permutation_, sort_scratch_);

    auto &stage1 = angular_clusters_.emplace_back(sub_permutation_);
    std::sort(stage1.begin(), stage1.end());

    for (const auto &line : recluster_subrange(sub_keys_, dist_params, dist_workspace_)) {
      auto members = translate_members(line, dist_workspace_, sub_permutation_);
      if (members.size() < params_.min_points)
        continue;
      FeatureCluster feature;
      feature.id = next_id++;
      feature.angular_cluster = static_cast<std::uint32_t>(angular.id);
      feature.point_indices = std::move(members);
      feature.mean_theta = mean;
      feature.mean_fallback = fallback;
      result.push_back(std::move(feature));
    }
  }
  const auto t3 = Clock::now();

  timings_.angle_ns = elapsed_ns(t0, t1);
  timings_.angular_ns = elapsed_ns(t1, t2);
  timings_.distance_ns = elapsed_ns(t2, t3);
  return result;
}

std::vector<FeatureCluster> angular_segmentation(Scan &scan, const SegmentationParams &params) {
  AngularSegmenter segmenter(params, scan.size());
  return segmenter.segment(scan);
}

void fit_cluster_lines(const Scan &scan, std::vector<FeatureCluster> &clusters) {
  std::vector<Point2D> points;
  for (auto &cluster : clusters) {
    points.clear();
    for (const auto i : cluster.point_indices)
      points.push_back(scan.point(i));
    try {
      cluster.fitted_line = tls_fit(points);
      cluster.fit_error.clear();
    } catch (const Error &e) {
      cluster.fitted_line.reset();
      cluster.fit_error = e.what();
    }
  }
}

std::vector<std::uint32_t> point_labels(std::size_t n, const std::vector<FeatureCluster> &clusters) {
  std::vector<std::uint32_t> labels(n, 0);
  for (const auto &cluster : clusters)
    for (const auto i : cluster.point_indices)
      if (i < n && (labels[i] == 0 || cluster.id < labels[i]))
        labels[i] = cluster.id;
  return labels;
}

} // namespace linex
