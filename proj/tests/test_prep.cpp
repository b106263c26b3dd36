#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "gridwatch/prep.hpp"
#include "gridwatch/rng.hpp"
#include "gridwatch/static_placement.hpp"

using namespace gridwatch;

namespace {

// Mirrors the production offset order exactly; bitwise comparison below
// depends on summing in the same sequence.
CoverageGrid naive_convolution(const DensityGrid& density, double r) {
  const int reach = static_cast<int>(std::floor(r));
  CoverageGrid out(density.rows(), density.cols());
  for (int i = 0; i < density.rows(); ++i)
    for (int j = 0; j < density.cols(); ++j) {
      double sum = 0.0;
      for (int a = -reach; a <= reach; ++a)
        for (int b = -reach; b <= reach; ++b) {
          if (std::sqrt(static_cast<double>(a * a + b * b)) > r) continue;
          const int y = i + a, x = j + b;
          if (y < 0 || y >= density.rows() || x < 0 || x >= density.cols()) continue;
          sum += density(y, x);
        }
      out(i, j) = sum;
    }
  return out;
}

// Reference selection that reconvolves the whole lattice after every pick.
PrepResult full_reconvolution_selection(DensityGrid density, double r, int max_circles) {
  PrepResult res;
  res.placement.radius = r;
  const int reach = static_cast<int>(std::floor(r));
  for (int circle = 0; circle < max_circles; ++circle) {
    const CoverageGrid cov = kernel_convolution(density, r);
    int bi = 0, bj = 0;
    double best = 0.0;
    for (int i = 0; i < cov.rows(); ++i)
      for (int j = 0; j < cov.cols(); ++j)
        if (cov(i, j) > best) {
          best = cov(i, j);
          bi = i;
          bj = j;
        }
    if (best == 0.0) break;
    res.placement.observers.push_back(
        {circle, static_cast<double>(bi), static_cast<double>(bj), r});
    res.captured.push_back(best);
    for (int a = -reach; a <= reach; ++a)
      for (int b = -reach; b <= reach; ++b) {
        if (std::sqrt(static_cast<double>(a * a + b * b)) > r) continue;
        const int y = bi + a, x = bj + b;
        if (y >= 0 && y < density.rows() && x >= 0 && x < density.cols())
          density(y, x) = 0.0;
      }
  }
  return res;
}

EventSet make_events(std::vector<EventPoint> pts) {
  EventSet ev;
  ev.theta = 0.9;
  ev.aggregate = std::move(pts);
  return ev;
}

}  // namespace

TEST_CASE("point density heatmap places counts and conserves mass") {
  const EventSet empty = make_events({});
  const DensityGrid zero = point_density_heatmap(empty, 4, 6);
  CHECK(zero.rows() == 4);
  CHECK(zero.cols() == 6);
  CHECK(zero.sum() == 0.0);

  const EventSet ev = make_events({{1, 2, kAggregateFrame, 3, 1.0},
                                   {1, 2, kAggregateFrame, 2, 1.0},
                                   {3, 0, kAggregateFrame, 7, 1.0}});
  const DensityGrid d = point_density_heatmap(ev, 5, 5);
  CHECK(d(1, 2) == 5.0);
  CHECK(d(3, 0) == 7.0);
  CHECK(d.sum() == 12.0);

  CHECK_THROWS_AS(point_density_heatmap(ev, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(point_density_heatmap(empty, 0, 5), std::invalid_argument);
}

TEST_CASE("kernel convolution: unit point at r=1 spreads to the plus shape") {
  DensityGrid d = DensityGrid::Zero(5, 5);
  d(2, 2) = 1.0;
  const CoverageGrid cov = kernel_convolution(d, 1.0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const bool in_plus = std::abs(i - 2) + std::abs(j - 2) <= 1;
      CHECK(cov(i, j) == (in_plus ? 1.0 : 0.0));
    }
  CHECK(cov.sum() == 5.0);

  const CoverageGrid none = kernel_convolution(DensityGrid::Zero(3, 3), 2.0);
  CHECK(none.sum() == 0.0);
  CHECK_THROWS_AS(kernel_convolution(d, -1.0), std::invalid_argument);
}

TEST_CASE("kernel convolution matches the naive disk sum bit for bit") {
  Rng rng(401);
  for (double r : {1.0, 2.0, 3.0, 1.5, 2.5}) {
    DensityGrid d(20, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j)
        d(i, j) = rng.below(4) == 0 ? rng.uniform(0.0, 9.0) : 0.0;
    const CoverageGrid fast = kernel_convolution(d, r);
    const CoverageGrid slow = naive_convolution(d, r);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j)
        CHECK(fast(i, j) == slow(i, j));
  }
}

TEST_CASE("iterative selection: one cluster stops after one circle") {
  DensityGrid d = DensityGrid::Zero(7, 7);
  d(3, 3) = 3.0;
  const PrepResult res = iterative_centroid_selection(d, 1.0, 3);
  REQUIRE(res.placement.observers.size() == 1);
  // Coverage 3 plateaus over the plus shape; row-major scan stops at (2,3).
  CHECK(res.placement.observers[0].x == 2.0);
  CHECK(res.placement.observers[0].y == 3.0);
  REQUIRE(res.captured.size() == 1);
  CHECK(res.captured[0] == 3.0);

  CHECK_THROWS_AS(iterative_centroid_selection(d, 1.0, 0), std::invalid_argument);
}

TEST_CASE("iterative selection: heavier far cluster goes first") {
  DensityGrid d = DensityGrid::Zero(12, 12);
  d(2, 2) = 3.0;
  d(9, 9) = 5.0;
  const PrepResult res = iterative_centroid_selection(d, 1.5, 4);
  REQUIRE(res.placement.observers.size() == 2);
  // r=1.5 admits the full 3x3 block, so each argmax lands one cell up-left.
  CHECK(res.placement.observers[0].x == 8.0);
  CHECK(res.placement.observers[0].y == 8.0);
  CHECK(res.placement.observers[1].x == 1.0);
  CHECK(res.placement.observers[1].y == 1.0);
  CHECK(res.captured == std::vector<double>{5.0, 3.0});
}

TEST_CASE("iterative selection: equal maxima resolve to the row-major first") {
  DensityGrid d = DensityGrid::Zero(6, 6);
  d(1, 4) = 2.0;
  d(4, 1) = 2.0;
  const PrepResult res = iterative_centroid_selection(d, 0.0, 2);
  REQUIRE(res.placement.observers.size() == 2);
  CHECK(res.placement.observers[0].x == 1.0);
  CHECK(res.placement.observers[0].y == 4.0);
  CHECK(res.placement.observers[1].x == 4.0);
  CHECK(res.placement.observers[1].y == 1.0);
}

TEST_CASE("iterative selection equals the full-reconvolution reference exactly") {
  Rng rng(777);
  for (int trial = 0; trial < 12; ++trial) {
    const double r = (trial % 3 == 0) ? 1.0 : (trial % 3 == 1) ? 2.0 : 2.5;
    DensityGrid d(15, 15);
    for (int i = 0; i < 15; ++i)
      for (int j = 0; j < 15; ++j)
        d(i, j) = rng.below(3) == 0 ? rng.uniform(0.0, 5.0) : 0.0;

    const PrepResult fast = iterative_centroid_selection(d, r, 6);
    const PrepResult slow = full_reconvolution_selection(d, r, 6);
    REQUIRE(fast.placement.observers.size() == slow.placement.observers.size());
    for (std::size_t k = 0; k < fast.placement.observers.size(); ++k) {
      CHECK(fast.placement.observers[k].x == slow.placement.observers[k].x);
      CHECK(fast.placement.observers[k].y == slow.placement.observers[k].y);
      CHECK(fast.captured[k] == slow.captured[k]);
    }
    for (std::size_t k = 1; k < fast.captured.size(); ++k)
      CHECK(fast.captured[k] <= fast.captured[k - 1]);
  }
}

TEST_CASE("iterative selection agrees with greedy when greedy sees every cell") {
  Rng rng(2024);
  const int side = 12;
  int compared = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const double r = trial % 2 == 0 ? 1.0 : 2.0;
    DensityGrid d(side, side);
    std::vector<EventPoint> all_cells;
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) {
        const int count = rng.below(5) == 0 ? static_cast<int>(rng.below(9)) + 1 : 0;
        d(i, j) = count;
        all_cells.push_back({i, j, kAggregateFrame, count, 1.0});
      }

    const PrepResult prep = iterative_centroid_selection(d, r, 3);
    bool separated = true;
    for (std::size_t a = 0; a < prep.placement.observers.size() && separated; ++a)
      for (std::size_t b = a + 1; b < prep.placement.observers.size(); ++b) {
        const auto& oa = prep.placement.observers[a];
        const auto& ob = prep.placement.observers[b];
        if (euclidean_distance({oa.x, oa.y}, {ob.x, ob.y}) <= r) {
          separated = false;
          break;
        }
      }
    // Picks inside an earlier disk leave greedy's shrunken candidate set;
    // the two methods are only defined to coincide on separated picks.
    if (!separated) continue;
    ++compared;

    const GreedyResult greedy = greedy_placement(all_cells, r, 3);
    REQUIRE(prep.placement.observers.size() == greedy.placement.observers.size());
    for (std::size_t k = 0; k < prep.placement.observers.size(); ++k) {
      CHECK(prep.placement.observers[k].x == greedy.placement.observers[k].x);
      CHECK(prep.placement.observers[k].y == greedy.placement.observers[k].y);
      CHECK(prep.captured[k] == static_cast<double>(greedy.covered[k]));
    }
  }
  CHECK(compared >= 8);
}

TEST_CASE("densest clusters: scan oracle, packing, and ordering") {
  Rng rng(99);
  std::vector<EventPoint> pts;
  for (int i = 0; i < 60; ++i)
    pts.push_back({static_cast<int>(rng.below(20)), static_cast<int>(rng.below(20)),
                   kAggregateFrame, static_cast<int>(rng.below(6)) + 1, 1.0});
  const double r = 3.0;

  const auto clusters = get_densest_clusters(pts, r, 4);
  REQUIRE(!clusters.empty());

  double best_density = 0.0;
  int best_idx = -1;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    double density = 0.0;
    for (const EventPoint& q : pts)
      if (euclidean_distance(pts[p].position(), q.position()) <= r) density += q.count;
    if (density > best_density) {
      best_density = density;
      best_idx = static_cast<int>(p);
    }
  }
  CHECK(clusters[0].density == best_density);
  CHECK(clusters[0].cx == pts[best_idx].position().x);
  CHECK(clusters[0].cy == pts[best_idx].position().y);

  for (std::size_t a = 0; a < clusters.size(); ++a) {
    if (a + 1 < clusters.size()) CHECK(clusters[a].density >= clusters[a + 1].density);
    double member_mass = 0.0;
    for (int m : clusters[a].members) member_mass += pts[m].count;
    CHECK(clusters[a].density == member_mass);
    for (std::size_t b = a + 1; b < clusters.size(); ++b)
      CHECK(euclidean_distance({clusters[a].cx, clusters[a].cy},
                               {clusters[b].cx, clusters[b].cy}) > r);
  }
}

TEST_CASE("densest clusters: mutually close points collapse to one cluster") {
  const std::vector<EventPoint> pts = {{0, 0, kAggregateFrame, 2, 1.0},
                                       {0, 1, kAggregateFrame, 3, 1.0},
                                       {1, 0, kAggregateFrame, 1, 1.0}};
  const auto clusters = get_densest_clusters(pts, 2.0, 3);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].density == 6.0);
  CHECK(clusters[0].members.size() == 3);
}

TEST_CASE("waypoints from clusters carry center and density") {
  std::vector<Cluster> clusters(2);
  clusters[0].cx = 1.0;
  clusters[0].cy = 2.0;
  clusters[0].density = 9.0;
  clusters[1].cx = 8.0;
  clusters[1].cy = 3.0;
  clusters[1].density = 4.0;
  const auto nodes = waypoints_from_clusters(clusters);
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0].id == 0);
  CHECK(nodes[0].x == 1.0);
  CHECK(nodes[0].y == 2.0);
  CHECK(nodes[0].count == 9.0);
  CHECK(nodes[1].id == 1);
  CHECK(nodes[1].count == 4.0);
}

TEST_CASE("waypoint graph: nearest links without bridging") {
  const std::vector<WaypointNode> two = {{0, 0.0, 0.0, 5.0}, {1, 3.0, 0.0, 2.0}};
  const WaypointGraph g2 = build_waypoint_graph(two, 1, 5.0);
  REQUIRE(g2.edges.size() == 1);
  CHECK(g2.edges[0].u == 0);
  CHECK(g2.edges[0].v == 1);
  CHECK(g2.edges[0].dist == 3.0);
  CHECK(g2.nodes.size() == 2);

  const std::vector<WaypointNode> line = {
      {0, 0.0, 0.0, 1.0}, {1, 2.0, 0.0, 1.0}, {2, 4.0, 0.0, 1.0}};
  const WaypointGraph g3 = build_waypoint_graph(line, 2, 5.0);
  std::set<std::pair<int, int>> seen;
  for (const WaypointEdge& e : g3.edges) seen.insert({e.u, e.v});
  CHECK(seen == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(g3.nodes.size() == 3);

  CHECK(build_waypoint_graph(two, 0, 5.0).edges.empty());
  CHECK(build_waypoint_graph({two[0]}, 3, 5.0).edges.empty());
  CHECK_THROWS_AS(build_waypoint_graph(two, -1, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(build_waypoint_graph(two, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_waypoint_graph({{3, 0.0, 0.0, 1.0}, {3, 1.0, 1.0, 1.0}}, 1, 5.0),
                  std::invalid_argument);
}

TEST_CASE("waypoint graph: long edge gains evenly spaced bridge nodes") {
  const std::vector<WaypointNode> far = {{0, 0.0, 0.0, 5.0}, {1, 5.0, 0.0, 2.0}};
  const WaypointGraph g = build_waypoint_graph(far, 1, 2.0);

  REQUIRE(g.nodes.size() == 4);
  CHECK(g.nodes[2].id == 2);
  CHECK(g.nodes[3].id == 3);
  CHECK(g.nodes[2].count == 0.0);
  CHECK(g.nodes[3].count == 0.0);
  CHECK(g.nodes[2].x == doctest::Approx(5.0 / 3.0));
  CHECK(g.nodes[3].x == doctest::Approx(10.0 / 3.0));
  CHECK(g.nodes[2].y == 0.0);

  REQUIRE(g.edges.size() == 3);
  std::set<std::pair<int, int>> seen;
  double total = 0.0;
  for (const WaypointEdge& e : g.edges) {
    seen.insert({e.u, e.v});
    total += e.dist;
    CHECK(e.dist <= 2.0 + 1e-9);
  }
  CHECK(seen == std::set<std::pair<int, int>>{{0, 2}, {2, 3}, {1, 3}});
  CHECK(total == doctest::Approx(5.0));
}

TEST_CASE("waypoint graph: every post-bridge edge respects the threshold") {
  Rng rng(31337);
  std::vector<WaypointNode> nodes;
  for (int i = 0; i < 10; ++i)
    nodes.push_back({i, rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0), 1.0});
  const WaypointGraph g = build_waypoint_graph(nodes, 3, 4.0);
  CHECK(!g.edges.empty());
  std::set<int> ids;
  for (const WaypointNode& n : g.nodes) CHECK(ids.insert(n.id).second);
  for (const WaypointEdge& e : g.edges) {
    CHECK(e.u < e.v);
    CHECK(ids.count(e.u) == 1);
    CHECK(ids.count(e.v) == 1);
    CHECK(e.dist <= 4.0 + 1e-9);
  }
}
