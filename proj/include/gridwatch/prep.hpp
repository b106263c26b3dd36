#pragma once

#include <vector>

#include "gridwatch/core.hpp"

namespace gridwatch {

using DensityGrid = Grid<double>;
using CoverageGrid = Grid<double>;

// Bins aggregate events onto the dataset lattice; entry = summed count.
DensityGrid point_density_heatmap(const EventSet& events, int length, int width);

// Disk kernel sum, K_ab = 1 iff sqrt(a^2+b^2) <= r, zero-padded boundary.
CoverageGrid kernel_convolution(const DensityGrid& density, double r);

struct PrepResult {
  PlacementSet placement;
  std::vector<double> captured;  // weight neutralized by each circle
};

// Repeated argmax of the coverage grid (ties row-major); each pick zeroes
// the density inside its disk and recomputes only the affected coverage
// entries, bit-identically to a full reconvolution.
PrepResult iterative_centroid_selection(const DensityGrid& density, double r,
                                        int max_circles);

// Per-point neighborhoods of radius r ranked by summed count; clusters are
// accepted greedily so the generating centers form an r-packing.
std::vector<Cluster> get_densest_clusters(const std::vector<EventPoint>& points,
                                          double r, int n);

struct WaypointNode {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double count = 0.0;  // capture weight; 0 marks a bridge node
};

struct WaypointEdge {
  int u = 0;  // u < v
  int v = 0;
  double dist = 0.0;
};

struct WaypointGraph {
  std::vector<WaypointNode> nodes;
  std::vector<WaypointEdge> edges;
  int n_links = 3;
  double move_threshold = 5.0;
};

std::vector<WaypointNode> waypoints_from_clusters(const std::vector<Cluster>& clusters);

// Each node links to its n_links nearest others (self excluded); edges are
// canonicalized min-id-first and deduplicated. Edges longer than
// move_threshold are split by evenly spaced bridge nodes until every
// sub-edge fits the threshold.
WaypointGraph build_waypoint_graph(const std::vector<WaypointNode>& waypoints,
                                   int n_links, double move_threshold);

}  // namespace gridwatch
