#include "gridwatch/measures.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace gridwatch {

SpatialGraph build_spatial_graph(const std::vector<ObserverNode>& nodes, double theta) {
  if (theta < 0.0) throw std::invalid_argument("build_spatial_graph: negative theta");
  SpatialGraph g;
  g.theta = theta;
  for (const ObserverNode& n : nodes) {
    if (!g.nodes.emplace(n.id, n.position()).second)
      throw std::invalid_argument("build_spatial_graph: duplicate node id");
  }
  for (auto i = g.nodes.begin(); i != g.nodes.end(); ++i)
    for (auto j = std::next(i); j != g.nodes.end(); ++j) {
      const double d = euclidean_distance(i->second, j->second);
      if (d <= theta) g.edges.push_back({i->first, j->first, d});
    }
  return g;
}

int myopic_degree(int node_id, const SpatialGraph& g, double theta) {
  const Point2& p = g.nodes.at(node_id);
  int degree = 0;
  for (const auto& [id, q] : g.nodes)
    if (id != node_id && euclidean_distance(p, q) <= theta) ++degree;
  return degree;
}

double spatial_closeness(int node_id, const SpatialGraph& g) {
  if (g.nodes.size() < 2)
    throw std::invalid_argument("spatial_closeness: undefined on single-node graph");
  const Point2& p = g.nodes.at(node_id);
  double sum = 0.0;
  for (const auto& [id, q] : g.nodes)
    if (id != node_id) sum += euclidean_distance(p, q);
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / sum;
}

std::int64_t count_feasible_edges(const SpatialGraph& g, double theta) {
  std::int64_t feasible = 0;
  for (auto i = g.nodes.begin(); i != g.nodes.end(); ++i)
    for (auto j = std::next(i); j != g.nodes.end(); ++j)
      if (euclidean_distance(i->second, j->second) <= theta) ++feasible;
  return feasible;
}

double spatial_edge_density(const SpatialGraph& g, std::int64_t feasible_edges) {
  const auto actual = static_cast<std::int64_t>(g.edges.size());
  if (feasible_edges < actual)
    throw std::invalid_argument("spatial_edge_density: feasible < actual");
  if (feasible_edges == 0) return 0.0;
  return static_cast<double>(actual) / static_cast<double>(feasible_edges);
}

double edge_length_proportion(const SpatialEdge& e, const SpatialGraph& g) {
  double total = 0.0;
  for (const SpatialEdge& other : g.edges) total += other.length;
  if (total == 0.0) return 0.0;
  return e.length / total;
}

double spatial_clustering_coefficient(int node_id, const SpatialGraph& g,
                                      double threshold_distance) {
  const Point2& p = g.nodes.at(node_id);
  std::vector<int> adjacent;
  std::set<std::pair<int, int>> edge_set;
  for (const SpatialEdge& e : g.edges) {
    edge_set.emplace(e.u, e.v);
    if (e.u == node_id) adjacent.push_back(e.v);
    if (e.v == node_id) adjacent.push_back(e.u);
  }
  std::sort(adjacent.begin(), adjacent.end());

  // Denominator: adjacent pairs spatially close on all three sides.
  // Numerator: those pairs that are also closed by an actual (u,w) edge.
  std::int64_t close_pairs = 0, closed_triplets = 0;
  for (std::size_t a = 0; a < adjacent.size(); ++a)
    for (std::size_t b = a + 1; b < adjacent.size(); ++b) {
      const int u = adjacent[a], w = adjacent[b];
      const Point2& pu = g.nodes.at(u);
      const Point2& pw = g.nodes.at(w);
      const bool all_close = euclidean_distance(p, pu) < threshold_distance &&
                             euclidean_distance(p, pw) < threshold_distance &&
                             euclidean_distance(pu, pw) < threshold_distance;
      if (!all_close) continue;
      ++close_pairs;
      if (edge_set.count({std::min(u, w), std::max(u, w)})) ++closed_triplets;
    }
  if (close_pairs == 0) return 0.0;
  return static_cast<double>(closed_triplets) / static_cast<double>(close_pairs);
}

Resilience spatial_resilience(const std::map<int, Point2>& nodes,
                              const std::vector<int>& removed_ids, const BBox& region,
                              int resolution) {
  if (nodes.empty()) throw std::invalid_argument("spatial_resilience: empty node set");
  if (resolution < 1) throw std::invalid_argument("spatial_resilience: resolution < 1");

  std::set<int> removed;
  for (int id : removed_ids)
    if (nodes.count(id)) removed.insert(id);

  std::map<int, Point2> survivors;
  for (const auto& [id, p] : nodes)
    if (!removed.count(id)) survivors[id] = p;

  auto assign_lattice = [&](const std::map<int, Point2>& generators) {
    std::map<int, std::int64_t> cells;
    for (const auto& [id, p] : generators) cells[id] = 0;
    if (generators.empty()) return cells;
    const double step_x = (region.max_x - region.min_x) / resolution;
    const double step_y = (region.max_y - region.min_y) / resolution;
    for (int i = 0; i < resolution; ++i)
      for (int j = 0; j < resolution; ++j) {
        const Point2 sample{region.min_x + (i + 0.5) * step_x,
                            region.min_y + (j + 0.5) * step_y};
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& [id, p] : generators) {
          const double d = euclidean_distance(sample, p);
          if (d < best_d) {  // map iteration is id-ascending, so ties keep the lowest id
            best = id;
            best_d = d;
          }
        }
        ++cells[best];
      }
    return cells;
  };

  Resilience res;
  res.segment_cells_before = assign_lattice(nodes);
  res.segment_cells_after = assign_lattice(survivors);
  res.rs = static_cast<double>(survivors.size()) / static_cast<double>(nodes.size());
  return res;
}

}  // namespace gridwatch
