#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "gridwatch/grid.hpp"

namespace gridwatch {

// Planar position in cell coordinates: x runs along rows, y along columns.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct GeoCoordinate {
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]
};

inline constexpr double kEarthRadiusKm = 6371.0090667;

// One hot-cell occurrence. frame == kAggregateFrame marks an entry of the
// across-time aggregate, where count carries the recurrence multiplicity.
struct EventPoint {
  int row = 0;
  int col = 0;
  int frame = -1;
  int count = 1;
  double weight = 1.0;

  Point2 position() const { return {static_cast<double>(row), static_cast<double>(col)}; }
};

inline constexpr int kAggregateFrame = -1;

struct EventSet {
  std::vector<std::vector<EventPoint>> per_frame;
  std::vector<EventPoint> aggregate;  // row-major cell order, counts summed
  double theta = 0.0;

  std::int64_t total_poi() const {
    std::int64_t total = 0;
    for (const EventPoint& e : aggregate) total += e.count;
    return total;
  }
};

struct ObserverNode {
  int id = 0;
  double x = 0.0;  // row coordinate, or latitude in geo mode
  double y = 0.0;  // col coordinate, or longitude in geo mode
  double radius = 1.0;

  Point2 position() const { return {x, y}; }
};

struct PlacementSet {
  std::vector<ObserverNode> observers;
  double radius = 1.0;
};

enum class Metric { Euclidean, Haversine };

// Rows index observers, columns index events.
using DistanceMatrix = Grid<double>;

struct Link {
  int observer = 0;
  int event = 0;
  double weight = 1.0;
};

// weight = w_s * 1/(1+d) * w_t * exp(-lambda * age) * w_p * probability.
// Missing age/probability entries default to 0 / 1 respectively.
struct LinkWeighting {
  double w_s = 1.0;
  double w_t = 1.0;
  double w_p = 1.0;
  double recency_lambda = 0.0;
  std::vector<double> event_age;
  std::vector<double> event_probability;
};

struct CoverageSummary {
  std::int64_t total_observed = 0;  // covered POI occurrences, multiplicity included
  double ratio = 0.0;
  std::vector<std::int64_t> per_observer;
  std::map<int, int> degree_histogram;  // observer degree -> observer count
};

// A group of event points with its centroid and summed-count density.
struct Cluster {
  std::vector<int> members;  // indices into the originating point list
  double cx = 0.0;
  double cy = 0.0;
  double density = 0.0;
};

EventSet get_events(const HeatmapSeries& series, double theta);

double euclidean_distance(const Point2& a, const Point2& b);
double haversine_distance(const GeoCoordinate& a, const GeoCoordinate& b);

DistanceMatrix bipartite_distance_matrix(const std::vector<ObserverNode>& observers,
                                         const std::vector<EventPoint>& events,
                                         Metric metric = Metric::Euclidean);

// Candidate (observer index, event index) pairs with distance <= r, via a
// uniform bucket grid; contractually identical to the brute-force pair set.
std::vector<std::pair<int, int>> myopic_filter(const std::vector<ObserverNode>& observers,
                                               const std::vector<EventPoint>& events,
                                               double r);

std::vector<Link> generate_links(const DistanceMatrix& dm, double r,
                                 const LinkWeighting* weighting = nullptr);

std::vector<std::int64_t> observer_centrality(const DistanceMatrix& dm, double r);
std::vector<double> observer_centrality_weighted(const std::vector<Link>& links,
                                                 int num_observers);

std::pair<std::vector<int>, std::vector<int>> classify_events(const DistanceMatrix& dm,
                                                              double r);

CoverageSummary coverage_summary(const PlacementSet& placements, const EventSet& events,
                                 double r, bool unique_assignment = false,
                                 Metric metric = Metric::Euclidean);

}  // namespace gridwatch
