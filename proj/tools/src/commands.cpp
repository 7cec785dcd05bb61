#include "linex_cli/commands.hpp"

#include "linex/bench.hpp"
#include "linex/dbscan1d.hpp"
#include "linex/error.hpp"
#include "linex/scan_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>

namespace linex::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count();
}

// Report and label sinks: stdout for both, or FILE and FILE.labels.
class Sinks {
public:
  Sinks(const std::string &output, std::ostream &out) {
    if (output.empty()) {
      report_ = &out;
      labels_ = &out;
      return;
    }
    report_file_ = open(output);
    labels_file_ = open(output + ".labels");
    report_ = report_file_.get();
    labels_ = labels_file_.get();
    split_ = true;
  }

  std::ostream &report() { return *report_; }
  std::ostream &labels() { return *labels_; }
  bool split() const { return split_; }

  void flush() {
    report_->flush();
    labels_->flush();
    if (!*report_ || !*labels_)
      throw Error("write failed");
  }

private:
  static std::unique_ptr<std::ofstream> open(const std::string &path) {
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f)
      throw Error("cannot open '" + path + "' for writing");
    return f;
  }

  std::unique_ptr<std::ofstream> report_file_;
  std::unique_ptr<std::ofstream> labels_file_;
  std::ostream *report_ = nullptr;
  std::ostream *labels_ = nullptr;
  bool split_ = false;
};

std::istream &open_input(const std::string &path, std::ifstream &file) {
  if (path == "-")
    return std::cin;
  file.open(path);
  if (!file)
    throw Error("cannot open '" + path + "'");
  return file;
}

// ---------------------------------------------------------------------------

struct ClusterArgs {
  std::string input;
  double epsilon = 0.0;
  std::size_t min_points = 2;
  std::optional<double> period;
  std::string border_policy = "first";
  std::string output;
};

int cmd_cluster(const ClusterArgs &a, std::ostream &out, std::ostream &err) {
  std::ifstream file;
  const PointList list = load_points(open_input(a.input, file));
  const DbscanParams params{a.epsilon, a.min_points, parse_border_policy(a.border_policy.c_str())};
  params.validate();
  const std::optional<double> period = a.period ? a.period : list.period;

  Sinks sinks(a.output, out);
  const std::size_t n = list.values.size();
  if (n == 0) {
    sinks.flush();
    return 0;
  }

  std::vector<double> keys = list.values;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::pair<double, std::size_t>> scratch;

  const auto t0 = Clock::now();
  sort_with_permutation(keys, perm, scratch);
  const auto t1 = Clock::now();
  Dbscan1D ws(n);
  if (period)
    ws.run_circular(keys, params, CircularDomain(*period));
  else
    ws.run(keys, params);
  const auto t2 = Clock::now();

  err << "sort_time_ns=" << elapsed_ns(t0, t1) << " cluster_time_ns=" << elapsed_ns(t1, t2)
      << " clusters=" << ws.clusters().size() << '\n';

  auto &report = sinks.report();
  report << "# clusters\n# id size lo hi\n";
  for (const auto &c : ws.clusters()) {
    const auto members = cluster_members(c, ws.labels(), params.border_policy);
    const auto nn = static_cast<Index>(n);
    report << c.id << ' ' << members.size() << ' ' << format_real(keys[c.lower % nn]) << ' '
           << format_real(keys[c.upper % nn]) << '\n';
  }

  std::vector<Label> labels(n);
  for (std::size_t pos = 0; pos < n; ++pos)
    labels[perm[pos]] = ws.labels()[pos];
  auto &lab = sinks.labels();
  if (!sinks.split())
    lab << "# labels\n";
  for (const auto l : labels)
    lab << l << '\n';
  sinks.flush();
  return 0;
}

// ---------------------------------------------------------------------------

struct SegmentArgs {
  std::string input;
  SegmentationParams params;
  std::string border_policy = "first";
  std::string output;
  std::size_t repeat = 1;
};

int cmd_segment(const SegmentArgs &a, std::ostream &out, std::ostream &err) {
  std::ifstream file;
  Scan scan = load_scan(open_input(a.input, file));
  SegmentationParams params = a.params;
  params.border_policy = parse_border_policy(a.border_policy.c_str());
  AngularSegmenter segmenter(params, scan.size());

  SegmentOutcome result;
  std::vector<std::int64_t> runs;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, a.repeat); ++r) {
    result = segment_pipeline(scan, segmenter);
    runs.push_back(result.pipeline_ns);
  }
  std::sort(runs.begin(), runs.end());

  err << "angle_ns=" << result.timings.angle_ns << " angular_ns=" << result.timings.angular_ns
      << " distance_ns=" << result.timings.distance_ns << " fit_ns=" << result.fit_ns
      << " pipeline_ns=" << result.pipeline_ns;
  if (runs.size() > 1)
    err << " median_pipeline_ns=" << runs[runs.size() / 2] << " runs=" << runs.size();
  err << " clusters=" << result.clusters.size() << '\n';

  Sinks sinks(a.output, out);
  auto &report = sinks.report();
  report << "# clusters\n# id size mean_theta d theta\n";
  for (const auto &c : result.clusters) {
    report << c.id << ' ' << c.point_indices.size() << ' ' << format_real(c.mean_theta) << ' ';
    if (c.fitted_line)
      report << format_real(c.fitted_line->d) << ' ' << format_real(c.fitted_line->theta);
    else
      report << "nan nan";
    if (c.mean_fallback)
      report << " # mean undefined, median member angle used";
    report << '\n';
  }
  auto &lab = sinks.labels();
  if (!sinks.split())
    lab << "# labels\n";
  for (const auto l : point_labels(scan.size(), result.clusters))
    lab << (l == 0 ? -1 : static_cast<long>(l)) << '\n';
  sinks.flush();
  return 0;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string room = "square:6";
  std::size_t beams = 360;
  NoiseModel noise;
  double fov = 2.0 * std::numbers::pi;
  std::string output;
  std::string truth;
};

int cmd_generate(const GenerateArgs &a, std::ostream &out, std::ostream &) {
  const auto room = RoomModel::parse(a.room);
  const auto g = generate_scan(room, a.beams, a.noise, a.fov);
  if (a.output.empty()) {
    save_scan(g.scan, out);
  } else {
    save_scan_file(g.scan, a.output);
  }
  if (!a.truth.empty()) {
    std::ofstream t(a.truth);
    if (!t)
      throw Error("cannot open '" + a.truth + "' for writing");
    t << "# beam wall\n";
    for (std::size_t i = 0; i < g.wall.size(); ++i)
      t << i << ' ' << g.wall[i] << '\n';
    const auto lines = wall_lines(room);
    for (std::size_t w = 0; w < lines.size(); ++w)
      t << "# wall " << w << " d=" << format_real(lines[w].d)
        << " theta=" << format_real(lines[w].theta) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string experiment;
  std::vector<std::size_t> sizes{10000, 100000, 1000000};
  std::size_t n = 1000000;
  std::vector<double> epsilons = default_epsilons();
  std::size_t trials = 3;
  std::size_t min_points = 3;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_bench(const BenchArgs &a, std::ostream &out, std::ostream &err) {
  BenchResult result;
  if (a.experiment == "scaling") {
    result = bench_scaling(a.sizes, a.trials, a.seed, a.min_points);
    if (result.rows.size() >= 2) {
      std::vector<double> x;
      std::vector<double> y;
      for (const auto &r : result.rows) {
        x.push_back(static_cast<double>(r.n));
        y.push_back(static_cast<double>(std::max<std::int64_t>(1, r.sort_time_ns + r.cluster_time_ns)));
      }
      err << "loglog_slope=" << loglog_slope(x, y) << '\n';
    }
  } else {
    result = bench_epsilon_sweep(a.n, a.epsilons, a.trials, a.seed, a.min_points);
  }
  if (a.output.empty()) {
    write_csv(result, out);
  } else {
    std::ofstream f(a.output);
    if (!f)
      throw Error("cannot open '" + a.output + "' for writing");
    write_csv(result, f);
    if (!f)
      throw Error("write to '" + a.output + "' failed");
  }
  return 0;
}

} // namespace

SegmentOutcome segment_pipeline(Scan &scan, AngularSegmenter &segmenter) {
  SegmentOutcome result;
  const auto t0 = Clock::now();
  result.clusters = segmenter.segment(scan);
  const auto t1 = Clock::now();
  fit_cluster_lines(scan, result.clusters);
  const auto t2 = Clock::now();
  result.timings = segmenter.timings();
  result.fit_ns = elapsed_ns(t1, t2);
  result.pipeline_ns = elapsed_ns(t0, t2);
  return result;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Sorted 1D DBSCAN and laser scan line extraction"};
  app.name(args.empty() ? "linex" : args.front());
  app.require_subcommand(1);

  ClusterArgs ca;
  auto *cluster = app.add_subcommand("cluster", "Cluster a list of scalars");
  cluster->add_option("input", ca.input, "Point list file ('-' for stdin)")->required();
  cluster->add_option("--epsilon", ca.epsilon, "Neighborhood radius")->required();
  cluster->add_option("--min-points", ca.min_points, "Core point threshold")->capture_default_str();
  cluster->add_option("--circular-period", ca.period, "Cluster on a circle of this period");
  cluster->add_option("--border-policy", ca.border_policy, "first, all or noise")
      ->check(CLI::IsMember({"first", "all", "noise"}))
      ->capture_default_str();
  cluster->add_option("--output", ca.output, "Report file; labels go to <file>.labels");

  SegmentArgs sa;
  auto *segment = app.add_subcommand("segment", "Extract line features from a scan file");
  segment->add_option("input", sa.input, "Scan file ('-' for stdin)")->required();
  segment->add_option("--eps-theta", sa.params.epsilon_theta, "Angular radius (radians)")
      ->capture_default_str();
  segment->add_option("--eps-dist", sa.params.epsilon_dist, "Distance radius (meters)")
      ->capture_default_str();
  segment->add_option("--min-points", sa.params.min_points, "Core point threshold, both stages")
      ->capture_default_str();
  segment->add_option("--border-policy", sa.border_policy, "first, all or noise")
      ->check(CLI::IsMember({"first", "all", "noise"}))
      ->capture_default_str();
  segment->add_option("--output", sa.output, "Report file; labels go to <file>.labels");
  segment->add_option("--repeat", sa.repeat, "Run the pipeline this many times and report the median")
      ->check(CLI::PositiveNumber);

  GenerateArgs ga;
  auto *generate = app.add_subcommand("generate", "Ray-cast a synthetic scan of a polygonal room");
  generate->add_option("--room", ga.room, "square:S, rect:W,H or poly:x,y;x,y;... [@x,y[,heading]]")
      ->capture_default_str();
  generate->add_option("--beams", ga.beams, "Number of beams")->capture_default_str();
  generate->add_option("--noise-sigma", ga.noise.range_sigma, "Relative range noise")
      ->capture_default_str();
  generate->add_option("--dropout", ga.noise.dropout, "Probability a beam is faulty")
      ->capture_default_str();
  generate->add_option("--seed", ga.noise.seed, "Generator seed")->capture_default_str();
  generate->add_option("--fov", ga.fov, "Field of view (radians); 2*pi for a full circle");
  generate->add_option("--output", ga.output, "Scan file (default stdout)");
  generate->add_option("--truth", ga.truth, "Write the wall hit by each beam to this file");

  BenchArgs ba;
  auto *bench = app.add_subcommand("bench", "Timing and counter experiments, CSV output");
  bench->add_option("--experiment", ba.experiment, "scaling or epsilon-sweep")
      ->required()
      ->check(CLI::IsMember({"scaling", "epsilon-sweep"}));
  bench->add_option("--sizes", ba.sizes, "Input sizes for scaling")->delimiter(',');
  bench->add_option("--n", ba.n, "Input size for epsilon-sweep")->capture_default_str();
  bench->add_option("--epsilons", ba.epsilons, "Epsilon values for epsilon-sweep")->delimiter(',');
  bench->add_option("--trials", ba.trials, "Runs averaged per row")->capture_default_str();
  bench->add_option("--min-points", ba.min_points, "Core point threshold")->capture_default_str();
  bench->add_option("--seed", ba.seed, "Data seed")->capture_default_str();
  bench->add_option("--output", ba.output, "CSV file (default stdout)");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rest);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  try {
    if (cluster->parsed())
      return cmd_cluster(ca, out, err);
    if (segment->parsed())
      return cmd_segment(sa, out, err);
    if (generate->parsed())
      return cmd_generate(ga, out, err);
    return cmd_bench(ba, out, err);
  } catch (const std::exception &e) {
    err << "linex: " << e.what() << '\n';
    return 1;
  }
}

} // namespace linex::cli
