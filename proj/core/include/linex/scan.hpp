#pragma once

#include "linex/geometry.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace linex {

inline constexpr double kInvalidAngle = std::numeric_limits<double>::quiet_NaN();

/// One 2D range scan, stored channel-wise. All channels have the same length.
///
/// `beam_angle`/`range` are the raw polar readings; `x`/`y` are derived from
/// them. `theta` and `dist` are scratch channels filled by segmentation
/// (local line angle, signed distance to the separating line); NaN until then.
class Scan {
public:
  Scan() = default;

  /// Throws StructuralError if the channel lengths differ, DomainError on
  /// non-finite readings or a negative range on a valid beam.
  static Scan from_polar(std::vector<double> beam_angle, std::vector<double> range,
                         std::vector<bool> valid, bool full_circle);
  /// All points valid; angle/range are recovered with atan2/hypot.
  static Scan from_cartesian(const std::vector<Point2D> &points, bool full_circle);

  std::size_t size() const noexcept { return x.size(); }
  Point2D point(std::size_t i) const noexcept { return {x[i], y[i]}; }
  std::size_t valid_count() const noexcept;

  /// Resets theta/dist to NaN.
  void clear_scratch();

  std::vector<double> beam_angle;
  std::vector<double> range;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> theta;
  std::vector<double> dist;
  std::vector<bool> valid;
  bool full_circle = false;

  friend bool operator==(const Scan &, const Scan &);
};

} // namespace linex
