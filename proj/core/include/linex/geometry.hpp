#pragma once

#include <span>
#include <vector>

namespace linex {

class Scan;

struct Point2D {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2D &, const Point2D &) = default;
};

/// Normal form x*cos(theta) + y*sin(theta) - d = 0.
///
/// Canonical form: d >= 0 and theta in [0, 2*pi) is the direction of the foot
/// of the perpendicular from the origin; for lines through the origin (d == 0)
/// theta is reduced to [0, pi).
struct PolarLine {
  double d = 0.0;
  double theta = 0.0;
};

/// A*x + B*y + C = 0 with A^2 + B^2 > 0.
struct GeneralLine {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Angles on a circle of the given period (2*pi for directions, pi for
/// undirected line angles). Entries must lie in [0, period).
struct AngleSet {
  std::vector<double> angles;
  double period = 0.0;
};

/// Wraps any finite angle into [0, period).
double wrap_angle(double angle, double period) noexcept;

/// Smallest separation of two angles on a circle of the given period.
double angular_distance(double a, double b, double period) noexcept;

/// Applies the canonicalization rule to a raw (d, theta) pair.
PolarLine canonicalize(double d, double theta) noexcept;

/// Divides by -sign(C)*sqrt(A^2 + B^2). Throws DegenerateError when A = B = 0.
PolarLine normalize_general_to_polar(const GeneralLine &line);

/// Unweighted total least squares fit.
///
/// With centroid (mx, my), the normal angle solves
///   tan(2*theta) = -2 * sum (my - y)(mx - x) / sum [(my - y)^2 - (mx - x)^2]
/// taken through atan2 and halved, and d = mx*cos(theta) + my*sin(theta).
/// Throws DegenerateError for fewer than two points or coincident points, and
/// OrientationUndefinedError when the scatter is isotropic.
PolarLine tls_fit(std::span<const Point2D> points);

/// Normal angle of the TLS line, in [-pi/2, pi/2], without computing d.
double tls_normal_angle(std::span<const Point2D> points);

/// x*cos(theta) + y*sin(theta): signed distance to the line through the origin
/// with normal angle theta.
double signed_distance_to_origin_line(const Point2D &p, double theta) noexcept;

/// Perpendicular distance from p to the line (always >= 0).
double distance_to_line(const Point2D &p, const PolarLine &line) noexcept;

/// Circular mean: each angle is scaled by 2*pi/period, the unit vectors are
/// summed, atan2 gives the mean direction, which is scaled back to [0, period).
/// Throws UndefinedMeanError for an empty set or a (near) zero resultant. For
/// span input the angles may be any finite values.
double circular_mean(const AngleSet &set);
double circular_mean(std::span<const double> angles, double period);

/// Per-point local line direction in [0, pi), NaN where undefined.
///
/// A TLS line is fitted to each triplet of consecutive valid readings and
/// its direction (normal + pi/2, taken mod pi) becomes the middle point's
/// estimate. Invalid readings split the scan into runs; run endpoints copy the
/// nearest interior estimate and runs shorter than three points get no
/// estimate. A full-circle scan whose first and last readings are valid is one
/// cyclic run. Throws InsufficientDataError with fewer than three valid readings.
std::vector<double> estimate_local_angles(const Scan &scan);

} // namespace linex
