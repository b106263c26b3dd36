#include "gridwatch/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace gridwatch {

EventSet get_events(const HeatmapSeries& series, double theta) {
  if (series.frames.empty()) throw std::invalid_argument("get_events: empty series");
  if (!(theta > 0.0) || theta > 1.0)
    throw std::invalid_argument("get_events: theta must be in (0,1]");

  EventSet set;
  set.theta = theta;
  set.per_frame.resize(series.frames.size());
  std::map<std::pair<int, int>, int> occurrences;  // ordered => row-major aggregate

  for (std::size_t t = 0; t < series.frames.size(); ++t) {
    const FrameGrid& frame = series.frames[t];
    for (int r = 0; r < frame.rows(); ++r)
      for (int c = 0; c < frame.cols(); ++c)
        if (frame(r, c) >= theta) {
          set.per_frame[t].push_back({r, c, static_cast<int>(t), 1, frame(r, c)});
          ++occurrences[{r, c}];
        }
  }
  for (const auto& [cell, count] : occurrences)
    set.aggregate.push_back({cell.first, cell.second, kAggregateFrame, count, 1.0});
  return set;
}

double euclidean_distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double haversine_distance(const GeoCoordinate& a, const GeoCoordinate& b) {
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  const double phi1 = a.latitude * kDegToRad;
  const double phi2 = b.latitude * kDegToRad;
  const double dlambda = (b.longitude - a.longitude) * kDegToRad;
  double arg = std::sin(phi1) * std::sin(phi2) +
               std::cos(phi1) * std::cos(phi2) * std::cos(dlambda);
  arg = std::clamp(arg, -1.0, 1.0);
  return std::acos(arg) * kEarthRadiusKm;
}

namespace {

double pair_distance(const ObserverNode& o, const EventPoint& e, Metric metric) {
  if (metric == Metric::Haversine)
    return haversine_distance({o.x, o.y},
                              {static_cast<double>(e.row), static_cast<double>(e.col)});
  return euclidean_distance(o.position(), e.position());
}

}  // namespace

DistanceMatrix bipartite_distance_matrix(const std::vector<ObserverNode>& observers,
                                         const std::vector<EventPoint>& events,
                                         Metric metric) {
  DistanceMatrix dm(observers.size(), events.size());
  for (std::size_t i = 0; i < observers.size(); ++i)
    for (std::size_t j = 0; j < events.size(); ++j)
      dm(i, j) = pair_distance(observers[i], events[j], metric);
  return dm;
}

std::vector<std::pair<int, int>> myopic_filter(const std::vector<ObserverNode>& observers,
                                               const std::vector<EventPoint>& events,
                                               double r) {
  if (r < 0.0) throw std::invalid_argument("myopic_filter: negative radius");
  std::vector<std::pair<int, int>> pairs;
  if (observers.empty() || events.empty()) return pairs;

  // Bucket side >= r guarantees every in-range event lies in the 3x3 bucket
  // neighborhood of the observer's bucket. r = inf collapses to one bucket.
  const double side = std::max(r, 1e-9);
  auto bucket_of = [side](double v) -> std::int64_t {
    return static_cast<std::int64_t>(std::floor(v / side));
  };
  std::unordered_map<std::int64_t, std::vector<int>> buckets;
  auto key = [](std::int64_t bx, std::int64_t by) { return bx * 0x9e3779b9LL + by; };
  std::vector<std::pair<std::int64_t, std::int64_t>> event_bucket(events.size());
  for (std::size_t j = 0; j < events.size(); ++j) {
    event_bucket[j] = {bucket_of(events[j].row), bucket_of(events[j].col)};
    buckets[key(event_bucket[j].first, event_bucket[j].second)].push_back(
        static_cast<int>(j));
  }

  for (std::size_t i = 0; i < observers.size(); ++i) {
    const std::int64_t bx = bucket_of(observers[i].x);
    const std::int64_t by = bucket_of(observers[i].y);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find(key(bx + dx, by + dy));
        if (it == buckets.end()) continue;
        for (int j : it->second) {
          // Hash collisions across distinct buckets are possible; the bucket
          // coordinates and the exact distance test both re-verify membership.
          if (event_bucket[j] != std::pair{bx + dx, by + dy}) continue;
          if (euclidean_distance(observers[i].position(), events[j].position()) <= r)
            pairs.emplace_back(static_cast<int>(i), j);
        }
      }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<Link> generate_links(const DistanceMatrix& dm, double r,
                                 const LinkWeighting* weighting) {
  if (r < 0.0) throw std::invalid_argument("generate_links: negative radius");
  std::vector<Link> links;
  for (int i = 0; i < dm.rows(); ++i)
    for (int j = 0; j < dm.cols(); ++j) {
      if (dm(i, j) > r) continue;
      double w = 1.0;
      if (weighting) {
        const double age =
            static_cast<std::size_t>(j) < weighting->event_age.size()
                ? weighting->event_age[j] : 0.0;
        const double prob =
            static_cast<std::size_t>(j) < weighting->event_probability.size()
                ? weighting->event_probability[j] : 1.0;
        w = weighting->w_s * (1.0 / (1.0 + dm(i, j))) *
            weighting->w_t * std::exp(-weighting->recency_lambda * age) *
            weighting->w_p * prob;
      }
      links.push_back({i, j, w});
    }
  return links;
}

std::vector<std::int64_t> observer_centrality(const DistanceMatrix& dm, double r) {
  std::vector<std::int64_t> counts(dm.rows(), 0);
  for (int i = 0; i < dm.rows(); ++i)
    for (int j = 0; j < dm.cols(); ++j)
      if (dm(i, j) <= r) ++counts[i];
  return counts;
}

std::vector<double> observer_centrality_weighted(const std::vector<Link>& links,
                                                 int num_observers) {
  std::vector<double> sums(num_observers, 0.0);
  for (const Link& l : links) sums.at(l.observer) += l.weight;
  return sums;
}

std::pair<std::vector<int>, std::vector<int>> classify_events(const DistanceMatrix& dm,
                                                              double r) {
  std::vector<int> observed, unobserved;
  for (int j = 0; j < dm.cols(); ++j) {
    bool seen = false;
    for (int i = 0; i < dm.rows() && !seen; ++i) seen = dm(i, j) <= r;
    (seen ? observed : unobserved).push_back(j);
  }
  return {std::move(observed), std::move(unobserved)};
}

CoverageSummary coverage_summary(const PlacementSet& placements, const EventSet& events,
                                 double r, bool unique_assignment, Metric metric) {
  CoverageSummary summary;
  const auto& obs = placements.observers;
  summary.per_observer.assign(obs.size(), 0);
  const std::int64_t total = events.total_poi();

  std::vector<int> degree(obs.size(), 0);
  for (const EventPoint& e : events.aggregate) {
    int nearest = -1;
    double nearest_d = std::numeric_limits<double>::infinity();
    bool covered = false;
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const double d = pair_distance(obs[i], e, metric);
      if (d > r) continue;
      covered = true;
      if (!unique_assignment) {
        summary.per_observer[i] += e.count;
        ++degree[i];
      } else if (d < nearest_d ||
                 (d == nearest_d && (nearest < 0 || obs[i].id < obs[nearest].id))) {
        nearest = static_cast<int>(i);
        nearest_d = d;
      }
    }
    if (covered) summary.total_observed += e.count;
    if (unique_assignment && nearest >= 0) {
      summary.per_observer[nearest] += e.count;
      ++degree[nearest];
    }
  }
  summary.ratio = total > 0 ? static_cast<double>(summary.total_observed) /
                                  static_cast<double>(total)
                            : 0.0;
  for (int d : degree) ++summary.degree_histogram[d];
  return summary;
}

}  // namespace gridwatch
