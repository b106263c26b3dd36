#include "gridwatch/prep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gridwatch {

DensityGrid point_density_heatmap(const EventSet& events, int length, int width) {
  if (length < 1 || width < 1)
    throw std::invalid_argument("point_density_heatmap: invalid lattice dims");
  DensityGrid density = DensityGrid::Zero(length, width);
  for (const EventPoint& e : events.aggregate) {
    if (e.row < 0 || e.row >= length || e.col < 0 || e.col >= width)
      throw std::invalid_argument("point_density_heatmap: event outside lattice");
    density(e.row, e.col) += e.count;
  }
  return density;
}

namespace {

// Offsets within the disk, fixed row-major order: summation order is part of
// the bit-exactness contract between full and incremental convolution.
std::vector<std::pair<int, int>> disk_offsets(double r) {
  std::vector<std::pair<int, int>> offsets;
  const int reach = static_cast<int>(std::floor(r));
  for (int a = -reach; a <= reach; ++a)
    for (int b = -reach; b <= reach; ++b)
      if (std::sqrt(static_cast<double>(a * a + b * b)) <= r)
        offsets.emplace_back(a, b);
  return offsets;
}

double disk_sum(const DensityGrid& density, int i, int j,
                const std::vector<std::pair<int, int>>& offsets) {
  double sum = 0.0;
  for (const auto& [a, b] : offsets) {
    const int r = i + a, c = j + b;
    if (r < 0 || r >= density.rows() || c < 0 || c >= density.cols()) continue;
    sum += density(r, c);
  }
  return sum;
}

}  // namespace

CoverageGrid kernel_convolution(const DensityGrid& density, double r) {
  if (r < 0.0) throw std::invalid_argument("kernel_convolution: negative radius");
  const auto offsets = disk_offsets(r);
  CoverageGrid coverage(density.rows(), density.cols());
  for (int i = 0; i < density.rows(); ++i)
    for (int j = 0; j < density.cols(); ++j)
      coverage(i, j) = disk_sum(density, i, j, offsets);
  return coverage;
}

PrepResult iterative_centroid_selection(const DensityGrid& density_in, double r,
                                        int max_circles) {
  if (max_circles <= 0)
    throw std::invalid_argument("iterative_centroid_selection: max_circles must be > 0");
  if (r < 0.0)
    throw std::invalid_argument("iterative_centroid_selection: negative radius");

  DensityGrid density = density_in;
  const auto offsets = disk_offsets(r);
  CoverageGrid coverage = kernel_convolution(density, r);
  const int rows = static_cast<int>(density.rows());
  const int cols = static_cast<int>(density.cols());
  const int reach = static_cast<int>(std::floor(r));

  PrepResult result;
  result.placement.radius = r;
  for (int circle = 0; circle < max_circles; ++circle) {
    int best_i = 0, best_j = 0;
    double best = 0.0;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (coverage(i, j) > best) {  // strict: ties keep the row-major first
          best = coverage(i, j);
          best_i = i;
          best_j = j;
        }
    if (best == 0.0) break;

    result.placement.observers.push_back({circle, static_cast<double>(best_i),
                                          static_cast<double>(best_j), r});
    result.captured.push_back(best);

    for (const auto& [a, b] : offsets) {
      const int i = best_i + a, j = best_j + b;
      if (i >= 0 && i < rows && j >= 0 && j < cols) density(i, j) = 0.0;
    }
    // Only entries within 2r of the pick can see zeroed cells; recomputing
    // them from scratch reproduces the full reconvolution bit for bit.
    for (int i = std::max(0, best_i - 2 * reach); i <= std::min(rows - 1, best_i + 2 * reach); ++i)
      for (int j = std::max(0, best_j - 2 * reach); j <= std::min(cols - 1, best_j + 2 * reach); ++j)
        coverage(i, j) = disk_sum(density, i, j, offsets);
  }
  return result;
}

std::vector<Cluster> get_densest_clusters(const std::vector<EventPoint>& points,
                                          double r, int n) {
  if (r < 0.0) throw std::invalid_argument("get_densest_clusters: negative radius");
  if (n < 0) throw std::invalid_argument("get_densest_clusters: negative n");

  std::vector<Cluster> candidates(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    Cluster& c = candidates[p];
    c.cx = points[p].row;
    c.cy = points[p].col;
    for (std::size_t q = 0; q < points.size(); ++q)
      if (euclidean_distance(points[p].position(), points[q].position()) <= r) {
        c.members.push_back(static_cast<int>(q));
        c.density += points[q].count;
      }
  }
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (candidates[a].density != candidates[b].density)
      return candidates[a].density > candidates[b].density;
    return a < b;
  });

  std::vector<Cluster> accepted;
  for (int id : order) {
    if (static_cast<int>(accepted.size()) == n) break;
    const Point2 center{candidates[id].cx, candidates[id].cy};
    bool clear = true;
    for (const Cluster& prior : accepted)
      if (euclidean_distance(center, {prior.cx, prior.cy}) <= r) {
        clear = false;
        break;
      }
    if (clear) accepted.push_back(candidates[id]);
  }
  return accepted;
}

std::vector<WaypointNode> waypoints_from_clusters(const std::vector<Cluster>& clusters) {
  std::vector<WaypointNode> nodes;
  for (std::size_t i = 0; i < clusters.size(); ++i)
    nodes.push_back({static_cast<int>(i), clusters[i].cx, clusters[i].cy,
                     clusters[i].density});
  return nodes;
}

WaypointGraph build_waypoint_graph(const std::vector<WaypointNode>& waypoints,
                                   int n_links, double move_threshold) {
  if (n_links < 0) throw std::invalid_argument("build_waypoint_graph: negative n_links");
  if (move_threshold <= 0.0)
    throw std::invalid_argument("build_waypoint_graph: move_threshold must be > 0");

  WaypointGraph graph;
  graph.nodes = waypoints;
  graph.n_links = n_links;
  graph.move_threshold = move_threshold;
  const int m = static_cast<int>(waypoints.size());
  {
    std::set<int> ids;
    for (const WaypointNode& w : waypoints)
      if (!ids.insert(w.id).second)
        throw std::invalid_argument("build_waypoint_graph: duplicate node id");
  }
  if (m < 2) return graph;

  // n nearest neighbors per node; DM_ii treated as infinite via self-skip.
  std::set<std::pair<int, int>> unique_edges;  // by vector index, lo first
  for (int i = 0; i < m; ++i) {
    std::vector<int> order;
    for (int j = 0; j < m; ++j)
      if (j != i) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = euclidean_distance({waypoints[i].x, waypoints[i].y},
                                           {waypoints[a].x, waypoints[a].y});
      const double db = euclidean_distance({waypoints[i].x, waypoints[i].y},
                                           {waypoints[b].x, waypoints[b].y});
      if (da != db) return da < db;
      return a < b;
    });
    for (int k = 0; k < std::min(n_links, m - 1); ++k)
      unique_edges.insert({std::min(i, order[k]), std::max(i, order[k])});
  }

  // Canonical edge order (min id first, then ascending) fixes bridge ids.
  std::vector<std::pair<int, int>> edge_list;
  for (const auto& [i, j] : unique_edges) {
    if (waypoints[i].id <= waypoints[j].id) edge_list.emplace_back(i, j);
    else edge_list.emplace_back(j, i);
  }
  std::sort(edge_list.begin(), edge_list.end(),
            [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
              return std::pair(waypoints[a.first].id, waypoints[a.second].id) <
                     std::pair(waypoints[b.first].id, waypoints[b.second].id);
            });

  int next_id = 0;
  for (const WaypointNode& w : waypoints) next_id = std::max(next_id, w.id + 1);

  for (const auto& [i, j] : edge_list) {
    const Point2 a{waypoints[i].x, waypoints[i].y};
    const Point2 b{waypoints[j].x, waypoints[j].y};
    const double dist = euclidean_distance(a, b);
    if (dist <= move_threshold) {
      graph.edges.push_back({std::min(waypoints[i].id, waypoints[j].id),
                             std::max(waypoints[i].id, waypoints[j].id), dist});
      continue;
    }
    // k evenly spaced bridge nodes give k+1 sub-edges within the threshold.
    const int k = static_cast<int>(std::ceil(dist / move_threshold - 1e-9)) - 1;
    int prev_id = waypoints[i].id;
    Point2 prev = a;
    for (int step = 1; step <= k; ++step) {
      const double f = static_cast<double>(step) / (k + 1);
      const Point2 mid{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
      const int mid_id = next_id++;
      graph.nodes.push_back({mid_id, mid.x, mid.y, 0.0});
      graph.edges.push_back({std::min(prev_id, mid_id), std::max(prev_id, mid_id),
                             euclidean_distance(prev, mid)});
      prev_id = mid_id;
      prev = mid;
    }
    graph.edges.push_back({std::min(prev_id, waypoints[j].id),
                           std::max(prev_id, waypoints[j].id),
                           euclidean_distance(prev, b)});
  }
  return graph;
}

}  // namespace gridwatch
