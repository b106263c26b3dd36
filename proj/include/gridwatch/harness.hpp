#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridwatch/core.hpp"
#include "gridwatch/grid.hpp"
#include "gridwatch/json_io.hpp"
#include "gridwatch/measures.hpp"
#include "gridwatch/mobile_planning.hpp"
#include "gridwatch/prep.hpp"
#include "gridwatch/rng.hpp"

namespace gridwatch {

struct BenchResult {
  std::string algo;
  std::int64_t total_poi = 0;
  std::int64_t observed_poi = 0;
  double coverage_ratio = 0.0;
  std::vector<std::int64_t> per_frame;   // observed POI per frame, deduplicated
  int min_frame = 0;                     // weakest frame (lowest index on ties)
  int max_gap = 0;                       // longest zero-coverage run
  double info_gain = 0.0;                // summed covered-cell intensities
  std::vector<std::int64_t> per_sensor;  // raw sightings per sensor, no dedup
  double wall_time_s = 0.0;              // filled by callers that time runs
};

BenchResult evaluate_static(const PlacementSet& placements, const HeatmapSeries& series,
                            double r, double theta);

// Sensors sit on their plan's node for each frame; the aggregate counts a cell
// once per frame however many sensors see it, per_sensor keeps the raw sums.
BenchResult evaluate_plan(const Plan& plan, const HeatmapSeries& series,
                          const WaypointGraph& graph, double r, double theta);

// Squared frame-to-frame difference, elementwise.
FrameGrid residual(const FrameGrid& from, const FrameGrid& to);

struct RoiNode {
  int row = 0;
  int col = 0;
  std::vector<std::pair<int, double>> scores;  // (frame-pair index, summed residual)
};

// Channel-summed residuals per consecutive frame pair; a cell keeps a score
// iff the sum meets the threshold.
std::vector<RoiNode> roi_extract(const std::vector<std::vector<FrameGrid>>& channels,
                                 double threshold = 0.5);

struct TemporalCoverage {
  std::vector<double> per_frame;  // sum of nearest-observer distances
  double total = 0.0;
  double average = 0.0;  // total / frame count, lower is better
};

TemporalCoverage temporal_coverage(const std::vector<ObserverNode>& observers,
                                   const std::vector<std::vector<EventPoint>>& frames,
                                   Metric metric = Metric::Euclidean);

struct InsertionResult {
  Point2 position;
  double score = 0.0;  // average temporal coverage with the candidate inserted
};

// Uniform candidate draws inside the region (default: bounding box of the
// observers and events); keeps the strict minimizer of the average score.
InsertionResult monte_carlo_insertion(const std::vector<ObserverNode>& observers,
                                      const std::vector<std::vector<EventPoint>>& frames,
                                      int trials, Rng& rng,
                                      std::optional<BBox> region = std::nullopt,
                                      Metric metric = Metric::Euclidean);

double ecr(std::int64_t covered_significant, std::int64_t total_significant);

// Masked channel-summed residuals accumulated into a weight grid, then fed
// through the convolution + selection pipeline. An empty mask admits all cells.
PrepResult wpr_select(const std::vector<std::vector<FrameGrid>>& channels,
                      const BinaryGrid& mask, double threshold, double r,
                      int max_circles);

// Shared dispatch for the static algorithms the CLI and benchmark matrix name.
struct StaticAlgoParams {
  int sensors = 10;
  double radius = 3.0;
  double eps = 3.0;      // dbscan family
  int min_pts = 2;       // dbscan family
  int min_count = 2;     // improved variants' recurrence floor
  std::uint64_t seed = 0;
};

PlacementSet run_static_algo(const std::string& algo, const EventSet& events,
                             int length, int width, const StaticAlgoParams& params);

// Densest clusters at the sensor radius, linked and bridged into a graph.
WaypointGraph waypoint_pipeline(const EventSet& events, double radius, int waypoints,
                                int links, double move_threshold);

struct BenchmarkOutput {
  Json report;      // {"rows":[...]}, one row per (seed, algo)
  std::string csv;  // same rows, fixed column order
};

BenchmarkOutput run_benchmark(const Json& config);

}  // namespace gridwatch
