#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gridwatch/core.hpp"

namespace gridwatch {

struct SpatialEdge {
  int u = 0;  // u < v
  int v = 0;
  double length = 0.0;
};

struct SpatialGraph {
  std::map<int, Point2> nodes;
  std::vector<SpatialEdge> edges;
  double theta = 0.0;  // distance threshold the edge set was built with
};

// Edges connect every node pair with distance <= theta.
SpatialGraph build_spatial_graph(const std::vector<ObserverNode>& nodes, double theta);

int myopic_degree(int node_id, const SpatialGraph& g, double theta);

// Inverse summed distance to all other nodes; +inf when every other node
// coincides with this one. Throws on single-node graphs.
double spatial_closeness(int node_id, const SpatialGraph& g);

std::int64_t count_feasible_edges(const SpatialGraph& g, double theta);
double spatial_edge_density(const SpatialGraph& g, std::int64_t feasible_edges);

double edge_length_proportion(const SpatialEdge& e, const SpatialGraph& g);

double spatial_clustering_coefficient(int node_id, const SpatialGraph& g,
                                      double threshold_distance);

struct BBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

struct Resilience {
  double rs = 0.0;  // surviving generators / all generators
  std::map<int, std::int64_t> segment_cells_before;
  std::map<int, std::int64_t> segment_cells_after;
};

// Voronoi segments over a resolution x resolution lattice of cell centers;
// each cell maps to its nearest node, ties to the lowest id.
Resilience spatial_resilience(const std::map<int, Point2>& nodes,
                              const std::vector<int>& removed_ids, const BBox& region,
                              int resolution = 200);

}  // namespace gridwatch
