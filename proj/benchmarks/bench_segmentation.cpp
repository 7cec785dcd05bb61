#include "linex/geometry.hpp"
#include "linex/scan_io.hpp"
#include "linex/segmentation.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_Segment360(benchmark::State &state) {
  const auto room = linex::RoomModel::square(6.0);
  auto scan = linex::generate_scan(room, 360, {0.01, 0.05, 1}).scan;
  linex::AngularSegmenter segmenter(linex::SegmentationParams{}, scan.size());
  for (auto _ : state) {
    auto clusters = segmenter.segment(scan);
    linex::fit_cluster_lines(scan, clusters);
    benchmark::DoNotOptimize(clusters.data());
  }
}
BENCHMARK(BM_Segment360);

void BM_LocalAngles360(benchmark::State &state) {
  const auto room = linex::RoomModel::square(6.0);
  const auto scan = linex::generate_scan(room, 360, {0.01, 0.05, 1}).scan;
  for (auto _ : state)
    benchmark::DoNotOptimize(linex::estimate_local_angles(scan).data());
}
BENCHMARK(BM_LocalAngles360);

} // namespace
