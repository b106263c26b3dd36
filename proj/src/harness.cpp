#include "gridwatch/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gridwatch/heatmap_gen.hpp"
#include "gridwatch/static_placement.hpp"

namespace gridwatch {

namespace {

void finish_frame_stats(BenchResult& res) {
  res.coverage_ratio = res.total_poi > 0 ? static_cast<double>(res.observed_poi) /
                                               static_cast<double>(res.total_poi)
                                         : 0.0;
  res.min_frame = 0;
  int gap = 0;
  for (std::size_t t = 0; t < res.per_frame.size(); ++t) {
    if (res.per_frame[t] < res.per_frame[res.min_frame]) res.min_frame = static_cast<int>(t);
    if (res.per_frame[t] == 0) {
      ++gap;
      res.max_gap = std::max(res.max_gap, gap);
    } else {
      gap = 0;
    }
  }
}

}  // namespace

BenchResult evaluate_static(const PlacementSet& placements, const HeatmapSeries& series,
                            double r, double theta) {
  if (r < 0.0) throw std::invalid_argument("evaluate_static: negative radius");
  const EventSet events = get_events(series, theta);
  const int frame_count = static_cast<int>(series.frames.size());

  BenchResult res;
  res.per_frame.assign(frame_count, 0);
  res.per_sensor.assign(placements.observers.size(), 0);
  for (int t = 0; t < frame_count; ++t)
    for (const EventPoint& e : events.per_frame[t]) {
      ++res.total_poi;
      bool covered = false;
      for (std::size_t i = 0; i < placements.observers.size(); ++i)
        if (euclidean_distance(placements.observers[i].position(), e.position()) <= r) {
          covered = true;
          ++res.per_sensor[i];
        }
      if (covered) {
        ++res.observed_poi;
        ++res.per_frame[t];
        res.info_gain += e.weight;
      }
    }
  finish_frame_stats(res);
  return res;
}

BenchResult evaluate_plan(const Plan& plan, const HeatmapSeries& series,
                          const WaypointGraph& graph, double r, double theta) {
  if (r < 0.0) throw std::invalid_argument("evaluate_plan: negative radius");
  const int frame_count = static_cast<int>(series.frames.size());
  std::map<int, Point2> position;
  for (const WaypointNode& n : graph.nodes) position[n.id] = {n.x, n.y};
  for (const SensorPlan& s : plan.sensors) {
    if (static_cast<int>(s.path.size()) != frame_count)
      throw std::invalid_argument("evaluate_plan: plan length != frame count");
    for (int v : s.path)
      if (!position.count(v))
        throw std::invalid_argument("evaluate_plan: plan visits unknown node");
  }

  const EventSet events = get_events(series, theta);
  BenchResult res;
  res.per_frame.assign(frame_count, 0);
  res.per_sensor.assign(plan.sensors.size(), 0);
  for (int t = 0; t < frame_count; ++t)
    for (const EventPoint& e : events.per_frame[t]) {
      ++res.total_poi;
      bool covered = false;
      for (std::size_t s = 0; s < plan.sensors.size(); ++s)
        if (euclidean_distance(position.at(plan.sensors[s].path[t]), e.position()) <= r) {
          covered = true;  // aggregate counts the cell once per frame
          ++res.per_sensor[s];
        }
      if (covered) {
        ++res.observed_poi;
        ++res.per_frame[t];
        res.info_gain += e.weight;
      }
    }
  finish_frame_stats(res);
  return res;
}

FrameGrid residual(const FrameGrid& from, const FrameGrid& to) {
  if (from.rows() != to.rows() || from.cols() != to.cols())
    throw std::invalid_argument("residual: frame dims differ");
  return (to - from).array().square();
}

namespace {

// Shared validation for channel stacks: equal frame counts and dims.
std::pair<int, int> checked_channel_dims(const std::vector<std::vector<FrameGrid>>& channels) {
  const std::size_t frame_count = channels[0].size();
  for (const auto& ch : channels)
    if (ch.size() != frame_count)
      throw std::invalid_argument("channel frame counts differ");
  const int rows = static_cast<int>(channels[0][0].rows());
  const int cols = static_cast<int>(channels[0][0].cols());
  for (const auto& ch : channels)
    for (const FrameGrid& f : ch)
      if (f.rows() != rows || f.cols() != cols)
        throw std::invalid_argument("channel frame dims differ");
  return {rows, cols};
}

}  // namespace

std::vector<RoiNode> roi_extract(const std::vector<std::vector<FrameGrid>>& channels,
                                 double threshold) {
  if (channels.empty() || channels[0].size() < 2) return {};
  const auto [rows, cols] = checked_channel_dims(channels);

  std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> hits;
  for (std::size_t t = 0; t + 1 < channels[0].size(); ++t) {
    FrameGrid sum = FrameGrid::Zero(rows, cols);
    for (const auto& ch : channels) sum += residual(ch[t], ch[t + 1]);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (sum(i, j) >= threshold)
          hits[{i, j}].push_back({static_cast<int>(t), sum(i, j)});
  }

  std::vector<RoiNode> nodes;
  for (auto& [cell, scores] : hits)
    nodes.push_back({cell.first, cell.second, std::move(scores)});
  return nodes;
}

TemporalCoverage temporal_coverage(const std::vector<ObserverNode>& observers,
                                   const std::vector<std::vector<EventPoint>>& frames,
                                   Metric metric) {
  if (observers.empty())
    throw std::invalid_argument("temporal_coverage: no observers");
  if (frames.empty()) throw std::invalid_argument("temporal_coverage: no frames");

  TemporalCoverage cov;
  for (const auto& events : frames) {
    double frame_sum = 0.0;
    if (!events.empty()) {
      const DistanceMatrix dm = bipartite_distance_matrix(observers, events, metric);
      for (int j = 0; j < dm.cols(); ++j) frame_sum += dm.col(j).minCoeff();
    }
    cov.per_frame.push_back(frame_sum);
    cov.total += frame_sum;
  }
  cov.average = cov.total / static_cast<double>(frames.size());
  return cov;
}

InsertionResult monte_carlo_insertion(const std::vector<ObserverNode>& observers,
                                      const std::vector<std::vector<EventPoint>>& frames,
                                      int trials, Rng& rng, std::optional<BBox> region,
                                      Metric metric) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_insertion: trials must be >= 1");
  if (frames.empty()) throw std::invalid_argument("monte_carlo_insertion: no frames");

  BBox box;
  if (region.has_value()) {
    box = *region;
  } else {
    bool any = false;
    auto grow = [&](double x, double y) {
      if (!any) {
        box = {x, y, x, y};
        any = true;
      } else {
        box.min_x = std::min(box.min_x, x);
        box.min_y = std::min(box.min_y, y);
        box.max_x = std::max(box.max_x, x);
        box.max_y = std::max(box.max_y, y);
      }
    };
    for (const ObserverNode& o : observers) grow(o.x, o.y);
    for (const auto& events : frames)
      for (const EventPoint& e : events) grow(e.position().x, e.position().y);
    if (!any)
      throw std::invalid_argument("monte_carlo_insertion: empty region and no points");
  }

  int next_id = 0;
  for (const ObserverNode& o : observers) next_id = std::max(next_id, o.id + 1);

  InsertionResult best;
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<ObserverNode> with = observers;
  with.push_back({next_id, 0.0, 0.0, 0.0});
  for (int trial = 0; trial < trials; ++trial) {
    with.back().x = rng.uniform(box.min_x, box.max_x);
    with.back().y = rng.uniform(box.min_y, box.max_y);
    const double score = temporal_coverage(with, frames, metric).average;
    if (score < best_score) {
      best_score = score;
      best.position = {with.back().x, with.back().y};
      best.score = score;
    }
  }
  return best;
}

double ecr(std::int64_t covered_significant, std::int64_t total_significant) {
  if (covered_significant < 0 || total_significant < 0 ||
      covered_significant > total_significant)
    throw std::invalid_argument("ecr: need 0 <= covered <= total");
  if (total_significant == 0) return 0.0;
  return static_cast<double>(covered_significant) / static_cast<double>(total_significant);
}

PrepResult wpr_select(const std::vector<std::vector<FrameGrid>>& channels,
                      const BinaryGrid& mask, double threshold, double r,
                      int max_circles) {
  if (channels.empty() || channels[0].size() < 2)
    throw std::invalid_argument("wpr_select: need at least two frames");
  const auto [rows, cols] = checked_channel_dims(channels);
  const bool use_mask = mask.size() > 0;
  if (use_mask && (mask.rows() != rows || mask.cols() != cols))
    throw std::invalid_argument("wpr_select: mask dims differ");

  DensityGrid weight = DensityGrid::Zero(rows, cols);
  for (std::size_t t = 0; t + 1 < channels[0].size(); ++t) {
    FrameGrid sum = FrameGrid::Zero(rows, cols);
    for (const auto& ch : channels) sum += residual(ch[t], ch[t + 1]);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if ((!use_mask || mask(i, j) != 0) && sum(i, j) >= threshold)
          weight(i, j) += sum(i, j);
  }
  return iterative_centroid_selection(weight, r, max_circles);
}

PlacementSet run_static_algo(const std::string& algo, const EventSet& events,
                             int length, int width, const StaticAlgoParams& prm) {
  if (algo == "frequency") return frequency_placement(events, prm.sensors);
  if (algo == "kmeans") {
    Rng rng(prm.seed);
    return kmeans_placement(events, prm.sensors, rng);
  }
  if (algo == "ikmeans") {
    Rng rng(prm.seed);
    return improved_kmeans_placement(events, prm.sensors, prm.min_count, rng);
  }
  if (algo == "dbscan") return dbscan_placement(events, prm.eps, prm.min_pts, prm.sensors);
  if (algo == "idbscan")
    return improved_dbscan_placement(events, prm.eps, prm.min_pts, prm.sensors,
                                     prm.min_count);
  if (algo == "greedy")
    return greedy_placement(events.aggregate, prm.radius, prm.sensors).placement;
  if (algo == "ga") {
    GaParams ga;
    ga.seed = prm.seed;
    return genetic_placement(events, prm.radius, prm.sensors, ga, length, width);
  }
  if (algo == "exact")
    return exact_coverage_placement(events, prm.radius, prm.sensors).placement;
  if (algo == "prep") {
    const DensityGrid density = point_density_heatmap(events, length, width);
    return iterative_centroid_selection(density, prm.radius, prm.sensors).placement;
  }
  throw std::invalid_argument("unknown static algorithm '" + algo + "'");
}

WaypointGraph waypoint_pipeline(const EventSet& events, double radius, int waypoints,
                                int links, double move_threshold) {
  const std::vector<Cluster> clusters =
      get_densest_clusters(events.aggregate, radius, waypoints);
  return build_waypoint_graph(waypoints_from_clusters(clusters), links, move_threshold);
}

namespace {

std::string csv_number(const Json& value) { return value.dump(); }

Json bench_row(std::int64_t seed, const std::string& algo, const std::string& kind,
               const BenchResult& res, double reward_total) {
  Json row;
  row["seed"] = seed;
  row["algo"] = algo;
  row["kind"] = kind;
  row["total_poi"] = res.total_poi;
  row["observed_poi"] = res.observed_poi;
  row["coverage_ratio"] = res.coverage_ratio;
  row["min_frame"] = res.min_frame;
  row["max_gap"] = res.max_gap;
  row["info_gain"] = res.info_gain;
  row["reward_total"] = reward_total;
  return row;
}

}  // namespace

BenchmarkOutput run_benchmark(const Json& config) {
  GeneratorConfig base;
  const Json& ds = config.at("dataset");
  base.kind = generator_kind_from_string(ds.at("generator").get<std::string>());
  base.length = ds.value("length", base.length);
  base.width = ds.value("width", base.width);
  base.snapshots = ds.value("snapshots", base.snapshots);
  base.p_alive = ds.value("p_alive", base.p_alive);

  std::vector<std::int64_t> seeds;
  if (config.contains("seeds"))
    for (const Json& s : config["seeds"]) seeds.push_back(s.get<std::int64_t>());

  Json rows = Json::array();
  std::ostringstream csv;
  csv << "seed,algo,kind,total_poi,observed_poi,coverage_ratio,min_frame,max_gap,"
         "info_gain,reward_total\n";

  for (std::int64_t seed : seeds) {
    GeneratorConfig cfg = base;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const HeatmapSeries series = generate_series(cfg);

    if (config.contains("static")) {
      const Json& st = config["static"];
      StaticAlgoParams prm;
      prm.sensors = st.value("sensors", prm.sensors);
      prm.radius = st.value("radius", prm.radius);
      prm.eps = st.value("eps", prm.radius);
      prm.min_pts = st.value("min_pts", prm.min_pts);
      prm.min_count = st.value("min_count", prm.min_count);
      prm.seed = static_cast<std::uint64_t>(seed);
      const double theta = st.value("theta", 0.9);
      const EventSet events = get_events(series, theta);
      for (const Json& algo_name : st.value("algos", Json::array())) {
        const std::string algo = algo_name.get<std::string>();
        const PlacementSet placements =
            run_static_algo(algo, events, base.length, base.width, prm);
        const BenchResult res = evaluate_static(placements, series, prm.radius, theta);
        rows.push_back(bench_row(seed, algo, "static", res, 0.0));
      }
    }

    if (config.contains("mobile")) {
      const Json& mb = config["mobile"];
      MobileParams prm;
      prm.theta = mb.value("theta", prm.theta);
      prm.r = mb.value("radius", prm.r);
      prm.h_max = mb.value("hops", prm.h_max);
      prm.num_sensors = mb.value("sensors", prm.num_sensors);
      prm.beam = mb.value("beam", prm.beam);
      const int waypoints = mb.value("waypoints", 15);
      const int links = mb.value("links", 3);
      const double move_threshold = mb.value("move_threshold", 5.0);
      const EventSet events = get_events(series, prm.theta);
      const WaypointGraph graph =
          waypoint_pipeline(events, prm.r, waypoints, links, move_threshold);
      for (const Json& algo_name : mb.value("algos", Json::array())) {
        const std::string algo = algo_name.get<std::string>();
        Plan plan;
        if (algo == "waitr")
          plan = waitr_plan(series, graph, prm);
        else if (algo == "greedy")
          plan = greedy_mobile_plan(series, graph, prm);
        else
          throw std::invalid_argument("unknown mobile algorithm '" + algo + "'");
        const BenchResult res = evaluate_plan(plan, series, graph, prm.r, prm.theta);
        rows.push_back(bench_row(seed, algo, "mobile", res, plan.total));
      }
    }
  }

  for (const Json& row : rows) {
    csv << csv_number(row["seed"]) << ',' << row["algo"].get<std::string>() << ','
        << row["kind"].get<std::string>() << ',' << csv_number(row["total_poi"]) << ','
        << csv_number(row["observed_poi"]) << ',' << csv_number(row["coverage_ratio"])
        << ',' << csv_number(row["min_frame"]) << ',' << csv_number(row["max_gap"])
        << ',' << csv_number(row["info_gain"]) << ',' << csv_number(row["reward_total"])
        << '\n';
  }

  BenchmarkOutput out;
  out.report = Json{{"rows", rows}};
  out.csv = csv.str();
  return out;
}

}  // namespace gridwatch
