#include "linex/scan.hpp"

#include "linex/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

namespace linex {

Scan Scan::from_polar(std::vector<double> beam_angle, std::vector<double> range,
                      std::vector<bool> valid, bool full_circle) {
  const std::size_t n = beam_angle.size();
  if (range.size() != n || valid.size() != n)
    throw StructuralError("scan channels differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(beam_angle[i]) || !std::isfinite(range[i]))
      throw DomainError("non-finite reading at beam " + std::to_string(i));
    if (valid[i] && range[i] < 0.0)
      throw DomainError("negative range on valid beam " + std::to_string(i));
  }

  Scan scan;
  scan.x.resize(n);
  scan.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    scan.x[i] = range[i] * std::cos(beam_angle[i]);
    scan.y[i] = range[i] * std::sin(beam_angle[i]);
  }
  scan.beam_angle = std::move(beam_angle);
  scan.range = std::move(range);
  scan.valid = std::move(valid);
  scan.full_circle = full_circle;
  scan.clear_scratch();
  return scan;
}

Scan Scan::from_cartesian(const std::vector<Point2D> &points, bool full_circle) {
  Scan scan;
  const std::size_t n = points.size();
  scan.beam_angle.resize(n);
  scan.range.resize(n);
  scan.x.resize(n);
  scan.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
      throw DomainError("non-finite point " + std::to_string(i));
    scan.x[i] = points[i].x;
    scan.y[i] = points[i].y;
    scan.beam_angle[i] = std::atan2(points[i].y, points[i].x);
    scan.range[i] = std::hypot(points[i].x, points[i].y);
  }
  scan.valid.assign(n, true);
  scan.full_circle = full_circle;
  scan.clear_scratch();
  return scan;
}

std::size_t Scan::valid_count() const noexcept {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), true));
}

void Scan::clear_scratch() {
  theta.assign(size(), kInvalidAngle);
  dist.assign(size(), kInvalidAngle);
}

namespace {

// Bitwise comparison so unset NaN scratch entries compare equal.
bool same_bits(const std::vector<double> &a, const std::vector<double> &b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

} // namespace

bool operator==(const Scan &a, const Scan &b) {
  return a.full_circle == b.full_circle && a.valid == b.valid &&
         same_bits(a.beam_angle, b.beam_angle) && same_bits(a.range, b.range) &&
         same_bits(a.x, b.x) && same_bits(a.y, b.y) && same_bits(a.theta, b.theta) &&
         same_bits(a.dist, b.dist);
}

} // namespace linex
