#pragma once

// The `linex` command line: cluster, segment, generate, bench.
//
// Reports go to stdout (or --output FILE, with per-point labels in
// FILE.labels); timings and diagnostics go to the error stream. Noise is
// printed as label -1.

#include "linex/scan.hpp"
#include "linex/segmentation.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace linex::cli {

/// Runs the tool on argv-style arguments (args[0] is the program name) and
/// returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

struct SegmentOutcome {
  std::vector<FeatureCluster> clusters;
  SegmentationTimings timings;
  std::int64_t fit_ns = 0;
  std::int64_t pipeline_ns = 0; ///< angles through line fits, no I/O
};

/// What `linex segment` times: segmentation plus the per-cluster line fits.
SegmentOutcome segment_pipeline(Scan &scan, AngularSegmenter &segmenter);

} // namespace linex::cli
