#include "linex/geometry.hpp"

#include "linex/error.hpp"
#include "linex/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace linex {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative thresholds for "numerically zero".
constexpr double kIsotropyTolerance = 1e-12;
constexpr double kResultantTolerance = 1e-9;
// cos and sin, exact at the doubles nearest to multiples of pi/2 so that
// axis-aligned lines come out exact.
std::pair<double, double> cos_sin(double theta) noexcept {
  if (theta == 0.0)
    return {1.0, 0.0};
  if (theta == kPi / 2 || theta == -3 * kPi / 2)
    return {0.0, 1.0};
  if (theta == kPi || theta == -kPi)
    return {-1.0, 0.0};
  if (theta == -kPi / 2 || theta == 3 * kPi / 2)
    return {0.0, -1.0};
  return {std::cos(theta), std::sin(theta)};
}
} // namespace

double wrap_angle(double angle, double period) noexcept {
  double r = std::fmod(angle, period);
  if (r < 0.0)
    r += period;
  if (r >= period)
    r = 0.0;
  return r + 0.0; // no negative zero
}

double angular_distance(double a, double b, double period) noexcept {
  const double d = wrap_angle(a - b, period);
  return std::min(d, period - d);
}

PolarLine canonicalize(double d, double theta) noexcept {
  if (d < 0.0) {
    d = -d;
    theta += kPi;
  }
  if (d == 0.0)
    return {0.0, wrap_angle(theta, kPi)};
  return {d, wrap_angle(theta, kTwoPi)};
}

PolarLine normalize_general_to_polar(const GeneralLine &line) {
  const double norm = std::hypot(line.a, line.b);
  if (!(norm > 0.0) || !std::isfinite(norm) || !std::isfinite(line.c))
    throw DegenerateError("general line needs finite coefficients with A^2 + B^2 > 0");
  if (line.c == 0.0)
    return canonicalize(0.0, std::atan2(line.b, line.a));
  // Divisor |C| / -C * sqrt(A^2 + B^2) makes the constant term -d with d > 0.
  const double s = line.c > 0.0 ? -norm : norm;
  return canonicalize(-line.c / s, std::atan2(line.b / s, line.a / s));
}

double tls_normal_angle(std::span<const Point2D> points) {
  if (points.size() < 2)
    throw DegenerateError("line fit needs at least two points");

  bool coincident = true;
  double mx = 0.0;
  double my = 0.0;
  for (const auto &p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw DomainError("non-finite point in line fit");
    coincident = coincident && p == points.front();
    mx += p.x;
    my += p.y;
  }
  if (coincident)
    throw DegenerateError("line fit points all coincide");
  const auto n = static_cast<double>(points.size());
  mx /= n;
  my /= n;

  double sxy = 0.0;
  double syy_minus_sxx = 0.0;
  double spread = 0.0;
  for (const auto &p : points) {
    const double dx = mx - p.x;
    const double dy = my - p.y;
    sxy += dy * dx;
    syy_minus_sxx += dy * dy - dx * dx;
    spread += dy * dy + dx * dx;
  }

  const double num = -2.0 * sxy;
  const double den = syy_minus_sxx;
  if (std::hypot(num, den) <= kIsotropyTolerance * spread)
    throw OrientationUndefinedError("isotropic scatter: line orientation undefined");
  return 0.5 * std::atan2(num, den);
}

PolarLine tls_fit(std::span<const Point2D> points) {
  const double theta = tls_normal_angle(points);
  double mx = 0.0;
  double my = 0.0;
  for (const auto &p : points) {
    mx += p.x;
    my += p.y;
  }
  const auto n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  const auto [c, s] = cos_sin(theta);
  return canonicalize(mx * c + my * s, theta);
}

double signed_distance_to_origin_line(const Point2D &p, double theta) noexcept {
  const auto [c, s] = cos_sin(theta);
  return p.x * c + p.y * s;
}

double distance_to_line(const Point2D &p, const PolarLine &line) noexcept {
  return std::fabs(signed_distance_to_origin_line(p, line.theta) - line.d);
}

double circular_mean(std::span<const double> angles, double period) {
  if (!std::isfinite(period) || period <= 0.0)
    throw ParameterError("circular mean period must be finite and positive");
  if (angles.empty())
    throw UndefinedMeanError("circular mean of an empty set");
  const double scale = kTwoPi / period;
  double s = 0.0;
  double c = 0.0;
  for (const double a : angles) {
    s += std::sin(scale * a);
    c += std::cos(scale * a);
  }
  if (std::hypot(s, c) <= kResultantTolerance * static_cast<double>(angles.size()))
    throw UndefinedMeanError("circular mean undefined: resultant vector has zero length");
  const double mean = wrap_angle(std::atan2(s, c), kTwoPi) / scale;
  return mean < period ? mean : 0.0;
}

double circular_mean(const AngleSet &set) {
  if (!std::isfinite(set.period) || set.period <= 0.0)
    throw ParameterError("angle set period must be finite and positive");
  for (std::size_t i = 0; i < set.angles.size(); ++i)
    if (!(set.angles[i] >= 0.0 && set.angles[i] < set.period))
      throw DomainError("angle at index " + std::to_string(i) + " outside [0, period)");
  return circular_mean(set.angles, set.period);
}

// ---------------------------------------------------------------------------
// Local angle estimation
// ---------------------------------------------------------------------------

namespace {

double triplet_direction(const Scan &scan, std::size_t a, std::size_t b, std::size_t c) {
  const Point2D triplet[3] = {scan.point(a), scan.point(b), scan.point(c)};
  try {
    return wrap_angle(tls_normal_angle(triplet) + kPi / 2.0, kPi);
  } catch (const DegenerateError &) {
    return kInvalidAngle;
  } catch (const OrientationUndefinedError &) {
    return kInvalidAngle;
  }
}

} // namespace

std::vector<double> estimate_local_angles(const Scan &scan) {
  const std::size_t n = scan.size();
  std::vector<double> angles(n, kInvalidAngle);

  std::vector<std::size_t> valid;
  valid.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (scan.valid[i])
      valid.push_back(i);
  if (valid.size() < 3)
    throw InsufficientDataError("local angle estimation needs at least three valid readings, got " +
                                std::to_string(valid.size()));

  // Runs of adjacent valid beams, as [begin, end) into `valid`.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t begin = 0;
  for (std::size_t k = 1; k <= valid.size(); ++k) {
    if (k == valid.size() || valid[k] != valid[k - 1] + 1) {
      runs.emplace_back(begin, k);
      begin = k;
    }
  }

  if (scan.full_circle && valid.size() == n) {
    // Every beam valid: one cyclic run, every point has two neighbours.
    for (std::size_t k = 0; k < n; ++k)
      angles[k] = triplet_direction(scan, (k + n - 1) % n, k, (k + 1) % n);
    return angles;
  }

  std::vector<std::size_t> run;
  run.reserve(n);
  const bool join_seam = scan.full_circle && runs.size() > 1 && valid.front() == 0 &&
                         valid.back() == n - 1;
  for (std::size_t r = join_seam ? 1 : 0; r < runs.size(); ++r) {
    run.assign(valid.begin() + runs[r].first, valid.begin() + runs[r].second);
    if (join_seam && r + 1 == runs.size())
      run.insert(run.end(), valid.begin() + runs[0].first, valid.begin() + runs[0].second);

    const std::size_t m = run.size();
    if (m < 3)
      continue;
    for (std::size_t k = 1; k + 1 < m; ++k)
      angles[run[k]] = triplet_direction(scan, run[k - 1], run[k], run[k + 1]);
    angles[run.front()] = angles[run[1]];
    angles[run.back()] = angles[run[m - 2]];
  }
  return angles;
}

} // namespace linex
