#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gridwatch/harness.hpp"
#include "gridwatch/heatmap_gen.hpp"
#include "gridwatch/json_io.hpp"
#include "gridwatch/measures.hpp"
#include "gridwatch/mobile_planning.hpp"
#include "gridwatch/static_placement.hpp"

namespace gw = gridwatch;

namespace {

// Bare output filenames land in $GRIDWATCH_OUT_DIR when it is set; paths that
// already carry a directory are used as given.
std::string resolve_out(const std::string& path) {
  if (path.empty() || path.find('/') != std::string::npos) return path;
  const char* dir = std::getenv("GRIDWATCH_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string full = dir;
  if (full.back() != '/') full += '/';
  return full + path;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Events in a placement+events file may carry real frame indices; group them
// so the temporal tools see one list per frame. Aggregate-only files
// (frame = -1 throughout) collapse to a single frame.
std::vector<std::vector<gw::EventPoint>> events_by_frame(const gw::EventSet& events) {
  std::map<int, std::vector<gw::EventPoint>> grouped;
  for (const gw::EventPoint& e : events.aggregate) grouped[e.frame].push_back(e);
  std::vector<std::vector<gw::EventPoint>> frames;
  for (auto& [frame, list] : grouped) frames.push_back(std::move(list));
  if (frames.empty()) frames.push_back({});
  return frames;
}

struct GenerateOpts {
  std::string generator = "life-spatial";
  int length = 50;
  int width = 50;
  int snapshots = 20;
  double p_alive = 0.3;
  double hot = 0.9, warm = 0.7, cool = 0.5;
  std::int64_t seed = 0;
  std::string out = "dataset.json";
};

void run_generate(const GenerateOpts& o) {
  gw::GeneratorConfig cfg;
  cfg.kind = gw::generator_kind_from_string(o.generator);
  cfg.length = o.length;
  cfg.width = o.width;
  cfg.snapshots = o.snapshots;
  cfg.p_alive = o.p_alive;
  cfg.thresholds = {o.hot, o.warm, o.cool};
  cfg.seed = static_cast<std::uint64_t>(o.seed);
  const gw::HeatmapSeries series = gw::generate_series(cfg);
  const std::string path = resolve_out(o.out);
  gw::save_dataset(series, path);
  std::cout << "wrote " << path << " (" << o.snapshots << " frames of " << o.length
            << "x" << o.width << ")\n";
}

struct StaticBenchOpts {
  std::string dataset;
  std::string algo = "greedy";
  int sensors = 10;
  double radius = 3.0;
  double theta = 0.9;
  std::int64_t seed = 0;
  double eps = -1.0;  // default: radius
  int min_pts = 2;
  int min_count = 2;
  std::string out = "result.json";
};

void run_static_bench(const StaticBenchOpts& o) {
  const gw::HeatmapSeries series = gw::load_dataset(o.dataset);
  const gw::EventSet events = gw::get_events(series, o.theta);
  gw::StaticAlgoParams prm;
  prm.sensors = o.sensors;
  prm.radius = o.radius;
  prm.eps = o.eps > 0.0 ? o.eps : o.radius;
  prm.min_pts = o.min_pts;
  prm.min_count = o.min_count;
  prm.seed = static_cast<std::uint64_t>(o.seed);

  const auto start = std::chrono::steady_clock::now();
  const gw::PlacementSet placements =
      gw::run_static_algo(o.algo, events, series.meta.length, series.meta.width, prm);
  gw::BenchResult res = gw::evaluate_static(placements, series, o.radius, o.theta);
  res.wall_time_s = seconds_since(start);
  res.algo = o.algo;

  gw::Json doc;
  doc["algo"] = o.algo;
  doc["params"] = gw::Json{{"sensors", o.sensors}, {"radius", o.radius},
                           {"theta", o.theta},     {"seed", o.seed},
                           {"eps", prm.eps},       {"min_pts", o.min_pts},
                           {"min_count", o.min_count}};
  gw::Json placed = gw::Json::array();
  for (const gw::ObserverNode& obs : placements.observers)
    placed.push_back(gw::Json{
        {"id", obs.id}, {"x", obs.x}, {"y", obs.y}, {"r", obs.radius}});
  doc["placements"] = std::move(placed);
  doc["per_frame"] = res.per_frame;
  doc["total_poi"] = res.total_poi;
  doc["observed_poi"] = res.observed_poi;
  doc["coverage_ratio"] = res.coverage_ratio;
  doc["min_frame"] = res.min_frame;
  doc["max_gap"] = res.max_gap;
  doc["info_gain"] = res.info_gain;
  doc["wall_time_s"] = res.wall_time_s;
  const std::string path = resolve_out(o.out);
  gw::write_text_file(path, doc.dump(2));
  std::cout << o.algo << ": observed " << res.observed_poi << "/" << res.total_poi
            << " (ratio " << res.coverage_ratio << ") -> " << path << "\n";
}

struct MobileBenchOpts {
  std::string dataset;
  std::string algo = "waitr";
  int sensors = 3;
  double radius = 2.0;
  int hops = 2;
  double theta = 0.9;
  std::int64_t seed = 0;
  int waypoints = 15;
  int links = 3;
  double move_threshold = 5.0;
  int beam = 64;
  std::string mode = "endpoint";
  bool node_time_overlap = false;
  std::string out = "plan.json";
};

void run_mobile_bench(const MobileBenchOpts& o) {
  const gw::HeatmapSeries series = gw::load_dataset(o.dataset);
  const gw::EventSet events = gw::get_events(series, o.theta);
  const gw::WaypointGraph graph =
      gw::waypoint_pipeline(events, o.radius, o.waypoints, o.links, o.move_threshold);

  gw::MobileParams prm;
  prm.theta = o.theta;
  prm.r = o.radius;
  prm.h_max = o.hops;
  prm.num_sensors = o.sensors;
  prm.beam = o.beam;
  prm.node_time_overlap = o.node_time_overlap;
  if (o.mode == "endpoint")
    prm.mode = gw::RewardMode::Endpoint;
  else if (o.mode == "segment")
    prm.mode = gw::RewardMode::Segment;
  else
    throw std::invalid_argument("mode must be endpoint or segment");

  const auto start = std::chrono::steady_clock::now();
  gw::Plan plan;
  if (o.algo == "waitr")
    plan = gw::waitr_plan(series, graph, prm);
  else if (o.algo == "greedy")
    plan = gw::greedy_mobile_plan(series, graph, prm);
  else
    throw std::invalid_argument("mobile algo must be waitr or greedy");
  const double wall = seconds_since(start);
  const gw::BenchResult res = gw::evaluate_plan(plan, series, graph, o.radius, o.theta);

  const gw::Json params{{"algo", o.algo},
                        {"sensors", o.sensors},
                        {"radius", o.radius},
                        {"hops", o.hops},
                        {"theta", o.theta},
                        {"seed", o.seed},
                        {"waypoints", o.waypoints},
                        {"links", o.links},
                        {"move_threshold", o.move_threshold},
                        {"beam", o.beam},
                        {"mode", o.mode},
                        {"node_time_overlap", o.node_time_overlap},
                        {"wall_time_s", wall}};
  const std::string path = resolve_out(o.out);
  gw::write_text_file(path, gw::plan_to_json(plan, params).dump(2));
  std::cout << o.algo << ": plan total " << plan.total << ", observed "
            << res.observed_poi << "/" << res.total_poi << " -> " << path << "\n";
}

struct MeasureOpts {
  std::string input;
  double graph_theta = -1.0;  // default: 2 * placement radius
  int knockout = 0;
  int resolution = 200;
  std::string out = "report.json";
};

void run_measure(const MeasureOpts& o) {
  const gw::Json doc = gw::Json::parse(gw::read_text_file(o.input));
  const auto [events, placements] = gw::events_placement_from_json(doc);
  if (placements.observers.empty())
    throw std::invalid_argument("measure: input has no observers");
  double theta = o.graph_theta;
  if (theta <= 0.0) {
    if (placements.radius <= 0.0)
      throw std::invalid_argument("measure: --graph-theta required when r is absent");
    theta = 2.0 * placements.radius;
  }

  const gw::SpatialGraph graph = gw::build_spatial_graph(placements.observers, theta);
  const std::int64_t feasible = gw::count_feasible_edges(graph, theta);

  gw::Json nodes;
  for (const auto& [id, pos] : graph.nodes) {
    gw::Json one;
    one["x"] = pos.x;
    one["y"] = pos.y;
    one["myopic_degree"] = gw::myopic_degree(id, graph, theta);
    if (graph.nodes.size() >= 2) one["closeness"] = gw::spatial_closeness(id, graph);
    one["clustering_coefficient"] = gw::spatial_clustering_coefficient(id, graph, theta);
    nodes[std::to_string(id)] = std::move(one);
  }

  gw::Json report;
  report["graph_theta"] = theta;
  report["nodes"] = std::move(nodes);
  report["graph"] = gw::Json{{"edge_count", static_cast<std::int64_t>(graph.edges.size())},
                             {"feasible_edges", feasible},
                             {"edge_density", gw::spatial_edge_density(graph, feasible)}};

  // Coverage robustness probe: drop the k highest-degree nodes and report the
  // resilience split plus the temporal-coverage score delta.
  if (o.knockout > 0) {
    std::vector<std::pair<int, int>> by_degree;  // (-degree, id): highest first
    for (const auto& [id, pos] : graph.nodes)
      by_degree.push_back({-gw::myopic_degree(id, graph, theta), id});
    std::sort(by_degree.begin(), by_degree.end());
    std::vector<int> removed;
    for (int i = 0; i < o.knockout && i < static_cast<int>(by_degree.size()); ++i)
      removed.push_back(by_degree[i].second);

    gw::BBox region{0.0, 0.0, 0.0, 0.0};
    bool any = false;
    auto grow = [&](double x, double y) {
      if (!any) {
        region = {x, y, x, y};
        any = true;
      } else {
        region.min_x = std::min(region.min_x, x);
        region.min_y = std::min(region.min_y, y);
        region.max_x = std::max(region.max_x, x);
        region.max_y = std::max(region.max_y, y);
      }
    };
    for (const auto& [id, pos] : graph.nodes) grow(pos.x, pos.y);
    for (const gw::EventPoint& e : events.aggregate) grow(e.position().x, e.position().y);

    const gw::Resilience resilience =
        gw::spatial_resilience(graph.nodes, removed, region, o.resolution);

    gw::Json knock;
    knock["removed"] = removed;
    knock["rs"] = resilience.rs;
    const auto frames = events_by_frame(events);
    if (!events.aggregate.empty()) {
      knock["coverage_score_before"] =
          gw::temporal_coverage(placements.observers, frames).average;
      std::vector<gw::ObserverNode> kept;
      for (const gw::ObserverNode& obs : placements.observers)
        if (std::find(removed.begin(), removed.end(), obs.id) == removed.end())
          kept.push_back(obs);
      if (!kept.empty())
        knock["coverage_score_after"] = gw::temporal_coverage(kept, frames).average;
      else
        knock["coverage_score_after"] = nullptr;
    }
    report["knockout"] = std::move(knock);
  }

  const std::string path = resolve_out(o.out);
  gw::write_text_file(path, report.dump(2));
  std::cout << "measured " << graph.nodes.size() << " nodes, " << graph.edges.size()
            << " edges -> " << path << "\n";
}

struct RoiOpts {
  std::vector<std::string> datasets;
  double threshold = 0.5;
  std::string out = "roi.json";
};

void run_roi(const RoiOpts& o) {
  std::vector<std::vector<gw::FrameGrid>> channels;
  for (const std::string& path : o.datasets)
    channels.push_back(gw::load_dataset(path).frames);
  const std::vector<gw::RoiNode> nodes = gw::roi_extract(channels, o.threshold);

  gw::Json list = gw::Json::array();
  for (const gw::RoiNode& node : nodes) {
    gw::Json scores = gw::Json::array();
    for (const auto& [pair_index, score] : node.scores)
      scores.push_back(gw::Json{{"pair", pair_index}, {"score", score}});
    list.push_back(gw::Json{{"row", node.row}, {"col", node.col},
                            {"scores", std::move(scores)}});
  }
  gw::Json doc;
  doc["threshold"] = o.threshold;
  doc["nodes"] = std::move(list);
  const std::string path = resolve_out(o.out);
  gw::write_text_file(path, doc.dump(2));
  std::cout << "roi: " << nodes.size() << " cells above threshold -> " << path << "\n";
}

struct MonteCarloOpts {
  std::string input;
  int trials = 100;
  std::int64_t seed = 0;
  std::vector<double> region;  // minx miny maxx maxy
  std::string metric = "euclidean";
  std::string out = "montecarlo.json";
};

void run_montecarlo(const MonteCarloOpts& o) {
  const gw::Json doc = gw::Json::parse(gw::read_text_file(o.input));
  const auto [events, placements] = gw::events_placement_from_json(doc);
  const auto frames = events_by_frame(events);
  const gw::Metric metric =
      o.metric == "haversine" ? gw::Metric::Haversine : gw::Metric::Euclidean;

  std::optional<gw::BBox> region;
  if (!o.region.empty()) {
    if (o.region.size() != 4)
      throw std::invalid_argument("--region needs minx miny maxx maxy");
    region = gw::BBox{o.region[0], o.region[1], o.region[2], o.region[3]};
  }

  gw::Rng rng(static_cast<std::uint64_t>(o.seed));
  const gw::InsertionResult best =
      gw::monte_carlo_insertion(placements.observers, frames, o.trials, rng, region, metric);

  gw::Json result;
  result["position"] = gw::Json{{"x", best.position.x}, {"y", best.position.y}};
  result["score"] = best.score;
  if (!placements.observers.empty())
    result["baseline"] = gw::temporal_coverage(placements.observers, frames, metric).average;
  else
    result["baseline"] = nullptr;
  result["trials"] = o.trials;
  result["seed"] = o.seed;
  const std::string path = resolve_out(o.out);
  gw::write_text_file(path, result.dump(2));
  std::cout << "best insertion (" << best.position.x << ", " << best.position.y
            << ") score " << best.score << " -> " << path << "\n";
}

struct BenchOpts {
  std::string config;
  std::string out_prefix = "report";
};

void run_bench(const BenchOpts& o) {
  const gw::Json config = gw::Json::parse(gw::read_text_file(o.config));
  const gw::BenchmarkOutput out = gw::run_benchmark(config);
  const std::string csv_path = resolve_out(o.out_prefix + ".csv");
  const std::string json_path = resolve_out(o.out_prefix + ".json");
  gw::write_text_file(csv_path, out.csv);
  gw::write_text_file(json_path, out.report.dump(2));
  std::cout << "benchmark: " << out.report["rows"].size() << " rows -> " << csv_path
            << ", " << json_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic benchmarking suite for sensor placement on heatmap grids"};
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* generate = app.add_subcommand("generate", "synthesize a heatmap dataset");
  generate->add_option("--generator", gen.generator,
                       "life-spatial | life-temporal | random-weighted | "
                       "random-weighted-constrained");
  generate->add_option("--length", gen.length, "grid rows");
  generate->add_option("--width", gen.width, "grid cols");
  generate->add_option("--snapshots", gen.snapshots, "frame count");
  generate->add_option("--p-alive", gen.p_alive, "seeding probability");
  generate->add_option("--hot", gen.hot, "hot threshold");
  generate->add_option("--warm", gen.warm, "warm threshold");
  generate->add_option("--cool", gen.cool, "cool threshold");
  generate->add_option("--seed", gen.seed, "rng seed");
  generate->add_option("--out", gen.out, "output dataset path");
  generate->callback([&gen] { run_generate(gen); });

  StaticBenchOpts sb;
  CLI::App* static_bench =
      app.add_subcommand("static-bench", "run one static placement algorithm");
  static_bench->add_option("--dataset", sb.dataset, "dataset JSON")->required();
  static_bench->add_option("--algo", sb.algo,
                           "frequency|kmeans|ikmeans|dbscan|idbscan|greedy|ga|exact|prep");
  static_bench->add_option("--sensors", sb.sensors, "sensor count");
  static_bench->add_option("--radius", sb.radius, "myopic radius");
  static_bench->add_option("--theta", sb.theta, "event threshold");
  static_bench->add_option("--seed", sb.seed, "rng seed");
  static_bench->add_option("--eps", sb.eps, "dbscan eps (default: radius)");
  static_bench->add_option("--min-pts", sb.min_pts, "dbscan minPts");
  static_bench->add_option("--min-count", sb.min_count, "improved-variant floor");
  static_bench->add_option("--out", sb.out, "result JSON path");
  static_bench->callback([&sb] { run_static_bench(sb); });

  MobileBenchOpts mb;
  CLI::App* mobile_bench =
      app.add_subcommand("mobile-bench", "run one mobile planning algorithm");
  mobile_bench->add_option("--dataset", mb.dataset, "dataset JSON")->required();
  mobile_bench->add_option("--algo", mb.algo, "waitr|greedy");
  mobile_bench->add_option("--sensors", mb.sensors, "sensor count");
  mobile_bench->add_option("--radius", mb.radius, "myopic radius");
  mobile_bench->add_option("--hops", mb.hops, "H_max hop budget per frame");
  mobile_bench->add_option("--theta", mb.theta, "event threshold");
  mobile_bench->add_option("--seed", mb.seed, "rng seed (recorded in params)");
  mobile_bench->add_option("--waypoints", mb.waypoints, "densest-cluster count");
  mobile_bench->add_option("--links", mb.links, "nearest links per waypoint");
  mobile_bench->add_option("--move-threshold", mb.move_threshold, "bridge threshold");
  mobile_bench->add_option("--beam", mb.beam, "beam width (0 = unlimited)");
  mobile_bench->add_option("--mode", mb.mode, "endpoint|segment");
  mobile_bench->add_flag("--node-time-overlap", mb.node_time_overlap,
                         "allow node reuse at different frames");
  mobile_bench->add_option("--out", mb.out, "plan JSON path");
  mobile_bench->callback([&mb] { run_mobile_bench(mb); });

  MeasureOpts me;
  CLI::App* measure = app.add_subcommand("measure", "spatial metrics for a placement");
  measure->add_option("--input", me.input, "placement+events JSON")->required();
  measure->add_option("--graph-theta", me.graph_theta,
                      "edge distance threshold (default 2r)");
  measure->add_option("--knockout", me.knockout, "remove k highest-degree nodes");
  measure->add_option("--resolution", me.resolution, "resilience lattice resolution");
  measure->add_option("--out", me.out, "report JSON path");
  measure->callback([&me] { run_measure(me); });

  RoiOpts roi;
  CLI::App* roi_cmd = app.add_subcommand("roi", "regions of interest from residuals");
  roi_cmd->add_option("--dataset", roi.datasets, "dataset JSON, one per channel")
      ->required()
      ->expected(-1);
  roi_cmd->add_option("--threshold", roi.threshold, "keep score >= threshold");
  roi_cmd->add_option("--out", roi.out, "RoI JSON path");
  roi_cmd->callback([&roi] { run_roi(roi); });

  MonteCarloOpts mc;
  CLI::App* montecarlo =
      app.add_subcommand("montecarlo", "random-insertion sensor placement");
  montecarlo->add_option("--input", mc.input, "placement+events JSON")->required();
  montecarlo->add_option("--trials", mc.trials, "candidate draws");
  montecarlo->add_option("--seed", mc.seed, "rng seed");
  montecarlo->add_option("--region", mc.region, "minx miny maxx maxy")->expected(4);
  montecarlo->add_option("--metric", mc.metric, "euclidean|haversine");
  montecarlo->add_option("--out", mc.out, "result JSON path");
  montecarlo->callback([&mc] { run_montecarlo(mc); });

  BenchOpts be;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark matrix from a config");
  bench->add_option("--config", be.config, "benchmark config JSON")->required();
  bench->add_option("--out-prefix", be.out_prefix, "writes <prefix>.csv and <prefix>.json");
  bench->callback([&be] { run_bench(be); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
