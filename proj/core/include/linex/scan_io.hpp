#pragma once

// Scan and point-list text formats, plus a seeded synthetic lidar.
//
// Scan file:
//   beams=<int> full_circle=<0|1>
//   <angle> <range> <valid>        one line per beam, angle in radians,
//   ...                            range in meters, valid 0 or 1
//
// Point list (input of `linex cluster`):
//   # circular period=<real>       optional, before the first value
//   <value>                        one scalar per line
//
// Blank lines and other lines starting with '#' are ignored in both formats.
// Reals are written in shortest round-trip form, so save/load is lossless.

#include "linex/geometry.hpp"
#include "linex/scan.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linex {

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);
/// Whole-token parse; std::nullopt if the token is not a real number.
std::optional<double> parse_real(std::string_view token);

void save_scan(const Scan &scan, std::ostream &out);
/// Throws ParseError (with line number) or StructuralError.
Scan load_scan(std::istream &in);
void save_scan_file(const Scan &scan, const std::filesystem::path &path);
Scan load_scan_file(const std::filesystem::path &path);

struct PointList {
  std::vector<double> values;
  std::optional<double> period; ///< set by a `# circular period=` header
};

void save_points(const PointList &points, std::ostream &out);
/// Throws ParseError.
PointList load_points(std::istream &in);
PointList load_points_file(const std::filesystem::path &path);

/// Polygonal room seen from a sensor pose. The scan is expressed in the sensor
/// frame: beam angle 0 points along the sensor heading.
struct RoomModel {
  std::vector<Point2D> vertices;
  Point2D sensor;
  double heading = 0.0;

  /// Square of the given side centered on the origin, sensor at the origin.
  static RoomModel square(double side);
  static RoomModel rectangle(double width, double height);
  /// "square:S", "rect:W,H" or "poly:x,y;x,y;...", optionally followed by
  /// "@x,y" or "@x,y,heading" for the sensor pose. Throws ModelError.
  static RoomModel parse(std::string_view spec);

  /// Simple polygon with at least three vertices and the sensor strictly
  /// inside. Throws ModelError.
  void validate() const;
};

struct NoiseModel {
  double range_sigma = 0.0; ///< relative standard deviation of the range
  double dropout = 0.0;     ///< probability that a beam is reported invalid
  std::uint64_t seed = 0;

  /// Throws ParameterError.
  void validate() const;
};

struct GeneratedScan {
  Scan scan;
  std::vector<int> wall; ///< edge index hit by each beam (edge k joins vertex k and k+1)
};

/// Ray-casts `beams` beams from the sensor. A field of view of 2*pi (or more)
/// gives a full-circle scan with beam k at 2*pi*k/beams; a narrower one spreads
/// the beams evenly over [-fov/2, fov/2]. Each range is multiplied by
/// (1 + sigma * z) with z standard normal, then the beam is dropped with the
/// dropout probability. Deterministic for a fixed seed.
GeneratedScan generate_scan(const RoomModel &room, std::size_t beams, const NoiseModel &noise,
                            double fov = 2.0 * std::numbers::pi);

/// Normal-form line of each room edge, in the sensor frame.
std::vector<PolarLine> wall_lines(const RoomModel &room);

} // namespace linex
