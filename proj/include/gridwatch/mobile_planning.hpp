#pragma once

#include <vector>

#include "gridwatch/core.hpp"
#include "gridwatch/grid.hpp"
#include "gridwatch/prep.hpp"

namespace gridwatch {

// Planning runs on waypoint graphs whose node ids are exactly 0..N-1 (the
// waypoint pipeline produces this); every entry point validates and throws.

struct ActivationTable {
  Grid<double> W;                        // frame x node id, hot-cell counts
  std::vector<std::vector<int>> active;  // per frame: ids with W > 0, ascending
  std::vector<std::vector<int>> top_k;   // per frame: W desc, id asc, W > 0 only
};

// W[t][n] = cells of frame t at intensity >= theta within distance r of node n.
ActivationTable ted_activate(const HeatmapSeries& series, const WaypointGraph& graph,
                             double theta, double r, int k = 5);

struct Pathlet {
  int dest = 0;
  int hops = 0;
  std::vector<int> seq;  // seq.front() = source, seq.back() = dest
};

struct PathletTable {
  std::vector<std::vector<Pathlet>> by_node;  // source id -> pathlets, dest ascending
  int h_max = 0;
};

// Hop-limited shortest pathlets with a canonical sequence (lowest-id
// predecessor); always includes the 0-hop stay-pathlet.
PathletTable generate_pathlets(const WaypointGraph& graph, int h_max);

enum class RewardMode { Endpoint, Segment };

struct ScoredPath {
  std::vector<int> nodes;  // one node per frame
  std::vector<double> frame_rewards;
  double reward = 0.0;
};

// Frame-stepped path extension; beam keeps the best `beam` paths per
// (frame, endpoint) by (reward desc, lexicographic asc). beam <= 0 disables
// pruning. Output is sorted by the same order.
std::vector<ScoredPath> extend_temporal_paths(const PathletTable& pathlets,
                                              const Grid<double>& W, int frame_count,
                                              RewardMode mode, int beam = 64);

struct SensorPlan {
  int id = 0;
  std::vector<int> path;          // node per frame
  std::vector<double> rewards;    // reward collected per frame
};

struct Plan {
  std::vector<SensorPlan> sensors;
  double total = 0.0;
};

// Descending-reward scan; a path is accepted iff it shares no node id with
// the already accepted ones (or no (node, frame) pair when node_time_overlap
// allows revisits at different frames). Stops at num_sensors.
Plan select_paths(const std::vector<ScoredPath>& paths, int num_sensors,
                  bool node_time_overlap = false);

struct MobileParams {
  double theta = 0.9;
  double r = 2.0;
  int h_max = 2;
  int num_sensors = 3;
  RewardMode mode = RewardMode::Endpoint;
  int beam = 64;  // 0 = unlimited
  int top_k = 5;
  bool node_time_overlap = false;
};

Plan waitr_plan(const HeatmapSeries& series, const WaypointGraph& graph,
                const MobileParams& params);

// Per-frame argmax over reachable unclaimed nodes, one-hop look-ahead toward
// the best next-frame reward when every immediate reward is zero.
Plan greedy_mobile_plan(const HeatmapSeries& series, const WaypointGraph& graph,
                        const MobileParams& params);

}  // namespace gridwatch
