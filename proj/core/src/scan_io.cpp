#include "linex/scan_io.hpp"

#include "linex/error.hpp"
#include "linex/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace linex {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
      ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r')
      ++i;
    if (i > start)
      tokens.push_back(s.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return parts;
}

bool is_skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::optional<std::uint64_t> parse_count(std::string_view token) {
  std::uint64_t value = 0;
  const auto *end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    return std::nullopt;
  return value;
}

double cross(const Point2D &a, const Point2D &b) { return a.x * b.y - a.y * b.x; }
Point2D operator-(const Point2D &a, const Point2D &b) { return {a.x - b.x, a.y - b.y}; }

} // namespace

std::string format_real(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return ec == std::errc{} ? std::string(buffer, ptr) : std::string("nan");
}

std::optional<double> parse_real(std::string_view token) {
  if (!token.empty() && token.front() == '+')
    token.remove_prefix(1);
  double value = 0.0;
  const auto *end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || token.empty())
    return std::nullopt;
  return value;
}

// ---------------------------------------------------------------------------
// Scan files
// ---------------------------------------------------------------------------

void save_scan(const Scan &scan, std::ostream &out) {
  out << "beams=" << scan.size() << " full_circle=" << (scan.full_circle ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < scan.size(); ++i)
    out << format_real(scan.beam_angle[i]) << ' ' << format_real(scan.range[i]) << ' '
        << (scan.valid[i] ? 1 : 0) << '\n';
}

Scan load_scan(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::uint64_t> beams;
  bool full_circle = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line))
      continue;
    const auto tokens = split_ws(line);
    bool have_circle = false;
    for (const auto token : tokens) {
      if (token.starts_with("beams=")) {
        beams = parse_count(token.substr(6));
        if (!beams)
          throw ParseError(line_no, "bad beam count '" + std::string(token) + "'");
      } else if (token == "full_circle=0" || token == "full_circle=1") {
        full_circle = token.back() == '1';
        have_circle = true;
      } else {
        throw ParseError(line_no, "unexpected header token '" + std::string(token) + "'");
      }
    }
    if (!beams || !have_circle)
      throw ParseError(line_no, "header must be 'beams=<int> full_circle=<0|1>'");
    break;
  }
  if (!beams)
    throw ParseError(line_no + 1, "missing scan header");

  std::vector<double> angle;
  std::vector<double> range;
  std::vector<bool> valid;
  angle.reserve(*beams);
  range.reserve(*beams);
  valid.reserve(*beams);

  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line))
      continue;
    const auto tokens = split_ws(line);
    if (tokens.size() != 3)
      throw ParseError(line_no, "record must be '<angle> <range> <valid>'");
    const auto a = parse_real(tokens[0]);
    const auto r = parse_real(tokens[1]);
    if (!a || !std::isfinite(*a))
      throw ParseError(line_no, "bad beam angle '" + std::string(tokens[0]) + "'");
    if (!r || !std::isfinite(*r))
      throw ParseError(line_no, "bad range '" + std::string(tokens[1]) + "'");
    if (tokens[2] != "0" && tokens[2] != "1")
      throw ParseError(line_no, "valid flag must be 0 or 1");
    const bool ok = tokens[2] == "1";
    if (ok && *r < 0.0)
      throw ParseError(line_no, "negative range on a valid beam");
    angle.push_back(*a);
    range.push_back(*r);
    valid.push_back(ok);
  }

  if (angle.size() != *beams)
    throw StructuralError("header announces " + std::to_string(*beams) + " beams but " +
                          std::to_string(angle.size()) + " records follow");
  return Scan::from_polar(std::move(angle), std::move(range), std::move(valid), full_circle);
}

void save_scan_file(const Scan &scan, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot open '" + path.string() + "' for writing");
  save_scan(scan, out);
  if (!out)
    throw Error("write to '" + path.string() + "' failed");
}

Scan load_scan_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open '" + path.string() + "'");
  return load_scan(in);
}

// ---------------------------------------------------------------------------
// Point lists
// ---------------------------------------------------------------------------

void save_points(const PointList &points, std::ostream &out) {
  if (points.period)
    out << "# circular period=" << format_real(*points.period) << '\n';
  for (const double v : points.values)
    out << format_real(v) << '\n';
}

PointList load_points(std::istream &in) {
  PointList list;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty())
      continue;
    if (t.front() == '#') {
      const auto body = trim(t.substr(1));
      if (body.starts_with("circular")) {
        if (!list.values.empty())
          throw ParseError(line_no, "circular header must precede the values");
        const auto rest = trim(body.substr(8));
        if (!rest.starts_with("period="))
          throw ParseError(line_no, "expected '# circular period=<real>'");
        const auto period = parse_real(trim(rest.substr(7)));
        if (!period || !std::isfinite(*period) || *period <= 0.0)
          throw ParseError(line_no, "circular period must be a positive real");
        list.period = *period;
      }
      continue;
    }
    const auto value = parse_real(t);
    if (!value || !std::isfinite(*value))
      throw ParseError(line_no, "expected one finite real, got '" + std::string(t) + "'");
    list.values.push_back(*value);
  }
  return list;
}

PointList load_points_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open '" + path.string() + "'");
  return load_points(in);
}

// ---------------------------------------------------------------------------
// Room model and generator
// ---------------------------------------------------------------------------

RoomModel RoomModel::square(double side) { return rectangle(side, side); }

RoomModel RoomModel::rectangle(double width, double height) {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
    throw ModelError("room dimensions must be positive");
  const double w = width / 2.0;
  const double h = height / 2.0;
  RoomModel room;
  room.vertices = {{-w, -h}, {w, -h}, {w, h}, {-w, h}};
  return room;
}

RoomModel RoomModel::parse(std::string_view spec) {
  const auto bad = [&](const std::string &why) {
    return ModelError("room '" + std::string(spec) + "': " + why);
  };
  const auto reals = [&](std::string_view text) {
    std::vector<double> out;
    for (const auto part : split_on(text, ',')) {
      const auto v = parse_real(part);
      if (!v || !std::isfinite(*v))
        throw bad("expected a real, got '" + std::string(part) + "'");
      out.push_back(*v);
    }
    return out;
  };

  std::string_view shape = spec;
  std::string_view pose;
  if (const auto at = spec.find('@'); at != std::string_view::npos) {
    shape = spec.substr(0, at);
    pose = spec.substr(at + 1);
  }
  const auto colon = shape.find(':');
  if (colon == std::string_view::npos)
    throw bad("expected square:S, rect:W,H or poly:x,y;...");
  const auto kind = trim(shape.substr(0, colon));
  const auto args = trim(shape.substr(colon + 1));

  RoomModel room;
  if (kind == "square") {
    const auto v = reals(args);
    if (v.size() != 1)
      throw bad("square takes one side length");
    room = square(v[0]);
  } else if (kind == "rect") {
    const auto v = reals(args);
    if (v.size() != 2)
      throw bad("rect takes width,height");
    room = rectangle(v[0], v[1]);
  } else if (kind == "poly") {
    for (const auto vertex : split_on(args, ';')) {
      const auto v = reals(vertex);
      if (v.size() != 2)
        throw bad("polygon vertex must be x,y");
      room.vertices.push_back({v[0], v[1]});
    }
  } else {
    throw bad("unknown room kind '" + std::string(kind) + "'");
  }

  if (!pose.empty()) {
    const auto v = reals(pose);
    if (v.size() != 2 && v.size() != 3)
      throw bad("sensor pose must be x,y or x,y,heading");
    room.sensor = {v[0], v[1]};
    room.heading = v.size() == 3 ? v[2] : 0.0;
  }
  room.validate();
  return room;
}

namespace {

// Proper or touching intersection of segments [a, b] and [c, d].
bool segments_intersect(const Point2D &a, const Point2D &b, const Point2D &c, const Point2D &d) {
  const auto orient = [](const Point2D &p, const Point2D &q, const Point2D &r) {
    const double v = cross(q - p, r - p);
    return (v > 0.0) - (v < 0.0);
  };
  const auto on_segment = [](const Point2D &p, const Point2D &q, const Point2D &r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4)
    return true;
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

double distance_to_segment(const Point2D &p, const Point2D &a, const Point2D &b) {
  const Point2D ab = b - a;
  const Point2D ap = p - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  const double t = std::clamp((ap.x * ab.x + ap.y * ab.y) / len2, 0.0, 1.0);
  return std::hypot(ap.x - t * ab.x, ap.y - t * ab.y);
}

} // namespace

void RoomModel::validate() const {
  const std::size_t n = vertices.size();
  if (n < 3)
    throw ModelError("room polygon needs at least three vertices");
  for (const auto &v : vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw ModelError("room vertex is not finite");
  if (!std::isfinite(sensor.x) || !std::isfinite(sensor.y) || !std::isfinite(heading))
    throw ModelError("sensor pose is not finite");

  for (std::size_t i = 0; i < n; ++i) {
    const auto &a = vertices[i];
    const auto &b = vertices[(i + 1) % n];
    if (a == b)
      throw ModelError("room polygon has a zero-length edge");
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent)
        continue;
      if (segments_intersect(a, b, vertices[j], vertices[(j + 1) % n]))
        throw ModelError("room polygon is self-intersecting");
    }
  }

  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto &a = vertices[i];
    const auto &b = vertices[j];
    if ((a.y > sensor.y) != (b.y > sensor.y) &&
        sensor.x < (b.x - a.x) * (sensor.y - a.y) / (b.y - a.y) + a.x)
      inside = !inside;
  }
  if (!inside)
    throw ModelError("sensor lies outside the room");
  for (std::size_t i = 0; i < n; ++i)
    if (distance_to_segment(sensor, vertices[i], vertices[(i + 1) % n]) <= 1e-12)
      throw ModelError("sensor lies on a wall");
}

void NoiseModel::validate() const {
  if (!std::isfinite(range_sigma) || range_sigma < 0.0)
    throw ParameterError("range noise sigma must be non-negative");
  if (!(dropout >= 0.0 && dropout <= 1.0))
    throw ParameterError("dropout probability must be in [0, 1]");
}

GeneratedScan generate_scan(const RoomModel &room, std::size_t beams, const NoiseModel &noise,
                            double fov) {
  room.validate();
  noise.validate();
  if (beams < 1)
    throw ParameterError("scan needs at least one beam");
  if (!std::isfinite(fov) || fov <= 0.0)
    throw ParameterError("field of view must be positive");

  const bool full_circle = fov >= kTwoPi;
  const std::size_t n = room.vertices.size();
  SplitMix64 rng(noise.seed);

  std::vector<double> angle(beams);
  std::vector<double> range(beams);
  std::vector<bool> valid(beams);
  std::vector<int> wall(beams, -1);

  for (std::size_t k = 0; k < beams; ++k) {
    const double local = full_circle ? kTwoPi * static_cast<double>(k) / static_cast<double>(beams)
                         : beams == 1
                             ? 0.0
                             : -fov / 2.0 + fov * static_cast<double>(k) /
                                                static_cast<double>(beams - 1);
    const double world = room.heading + local;
    const Point2D dir{std::cos(world), std::sin(world)};

    double best = std::numeric_limits<double>::infinity();
    int best_edge = -1;
    for (std::size_t e = 0; e < n; ++e) {
      const Point2D a = room.vertices[e];
      const Point2D edge = room.vertices[(e + 1) % n] - a;
      const double denom = cross(dir, edge);
      if (denom == 0.0)
        continue;
      const Point2D rel = a - room.sensor;
      const double t = cross(rel, edge) / denom;
      const double s = cross(rel, dir) / denom;
      constexpr double slack = 1e-12;
      if (t > 0.0 && s >= -slack && s <= 1.0 + slack && t < best) {
        best = t;
        best_edge = static_cast<int>(e);
      }
    }
    if (best_edge < 0)
      throw ModelError("beam " + std::to_string(k) + " hits no wall");

    // Both draws are taken for every beam so the stream never depends on outcomes.
    const double z = rng.normal();
    const bool dropped = rng.bernoulli(noise.dropout);
    angle[k] = local;
    range[k] = std::max(0.0, best * (1.0 + noise.range_sigma * z));
    valid[k] = !dropped;
    wall[k] = best_edge;
  }

  return {Scan::from_polar(std::move(angle), std::move(range), std::move(valid), full_circle),
          std::move(wall)};
}

std::vector<PolarLine> wall_lines(const RoomModel &room) {
  const double c = std::cos(room.heading);
  const double s = std::sin(room.heading);
  const auto to_sensor = [&](const Point2D &p) {
    const Point2D rel = p - room.sensor;
    return Point2D{c * rel.x + s * rel.y, -s * rel.x + c * rel.y};
  };
  std::vector<PolarLine> lines;
  const std::size_t n = room.vertices.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Point2D p = to_sensor(room.vertices[e]);
    const Point2D q = to_sensor(room.vertices[(e + 1) % n]);
    lines.push_back(normalize_general_to_polar({p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y}));
  }
  return lines;
}

} // namespace linex
