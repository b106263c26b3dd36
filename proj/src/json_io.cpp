#include "gridwatch/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gridwatch {

namespace {

Json frames_to_json(const std::vector<FrameGrid>& frames) {
  Json out = Json::array();
  for (const FrameGrid& frame : frames) {
    Json rows = Json::array();
    for (int i = 0; i < frame.rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < frame.cols(); ++j) row.push_back(frame(i, j));
      rows.push_back(std::move(row));
    }
    out.push_back(std::move(rows));
  }
  return out;
}

std::vector<FrameGrid> frames_from_json(const Json& arr, int length, int width) {
  if (!arr.is_array()) throw std::runtime_error("dataset: frames must be an array");
  std::vector<FrameGrid> frames;
  for (std::size_t t = 0; t < arr.size(); ++t) {
    const Json& rows = arr[t];
    if (!rows.is_array() || static_cast<int>(rows.size()) != length)
      throw std::runtime_error("dataset frame " + std::to_string(t) + ": expected " +
                               std::to_string(length) + " rows");
    FrameGrid frame(length, width);
    for (int i = 0; i < length; ++i) {
      const Json& row = rows[i];
      if (!row.is_array() || static_cast<int>(row.size()) != width)
        throw std::runtime_error("dataset frame " + std::to_string(t) + ": row " +
                                 std::to_string(i) + " expected " +
                                 std::to_string(width) + " values");
      for (int j = 0; j < width; ++j) frame(i, j) = row[j].get<double>();
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace

Json series_to_json(const HeatmapSeries& series) {
  Json doc;
  doc["length"] = series.meta.length;
  doc["width"] = series.meta.width;
  doc["snapshots"] = series.meta.snapshots;
  if (series.meta.seed.has_value())
    doc["seed"] = *series.meta.seed;
  else
    doc["seed"] = nullptr;
  doc["generator"] = series.meta.generator;
  doc["frames"] = frames_to_json(series.frames);
  return doc;
}

HeatmapSeries series_from_json(const Json& doc) {
  HeatmapSeries series;
  if (doc.is_array()) {
    // Legacy bare [frames][rows][cols]: shape comes from the first frame and
    // provenance stays empty.
    if (doc.empty()) throw std::runtime_error("dataset: legacy array has no frames");
    if (!doc[0].is_array() || doc[0].empty() || !doc[0][0].is_array())
      throw std::runtime_error("dataset frame 0: not a 2-D array");
    const int length = static_cast<int>(doc[0].size());
    const int width = static_cast<int>(doc[0][0].size());
    series.frames = frames_from_json(doc, length, width);
    series.meta.length = length;
    series.meta.width = width;
    series.meta.snapshots = static_cast<int>(series.frames.size());
    return series;
  }
  if (!doc.is_object()) throw std::runtime_error("dataset: not an object or array");
  for (const char* key : {"length", "width", "snapshots", "generator", "frames"})
    if (!doc.contains(key))
      throw std::runtime_error(std::string("dataset: missing key '") + key + "'");

  series.meta.length = doc["length"].get<int>();
  series.meta.width = doc["width"].get<int>();
  series.meta.snapshots = doc["snapshots"].get<int>();
  series.meta.generator = doc["generator"].get<std::string>();
  if (doc.contains("seed") && !doc["seed"].is_null())
    series.meta.seed = doc["seed"].get<std::int64_t>();
  if (doc.contains("rng_algorithm"))
    series.meta.rng_algorithm = doc["rng_algorithm"].get<std::string>();
  if (series.meta.length < 1 || series.meta.width < 1)
    throw std::runtime_error("dataset: invalid dims");

  series.frames = frames_from_json(doc["frames"], series.meta.length, series.meta.width);
  if (static_cast<int>(series.frames.size()) != series.meta.snapshots)
    throw std::runtime_error("dataset: snapshots=" + std::to_string(series.meta.snapshots) +
                             " but frames hold " + std::to_string(series.frames.size()));
  return series;
}

void save_dataset(const HeatmapSeries& series, const std::string& path) {
  write_text_file(path, series_to_json(series).dump());
}

HeatmapSeries load_dataset(const std::string& path) {
  return series_from_json(Json::parse(read_text_file(path)));
}

Json events_placement_to_json(const EventSet& events, const PlacementSet& placements) {
  Json doc;
  doc["theta"] = events.theta;
  Json ev = Json::array();
  for (const EventPoint& e : events.aggregate) {
    Json one;
    one["row"] = e.row;
    one["col"] = e.col;
    one["frame"] = e.frame;
    one["count"] = e.count;
    ev.push_back(std::move(one));
  }
  doc["events"] = std::move(ev);
  Json obs = Json::array();
  for (const ObserverNode& o : placements.observers) {
    Json one;
    one["id"] = o.id;
    one["x"] = o.x;
    one["y"] = o.y;
    one["r"] = o.radius;
    obs.push_back(std::move(one));
  }
  doc["observers"] = std::move(obs);
  return doc;
}

std::pair<EventSet, PlacementSet> events_placement_from_json(const Json& doc) {
  EventSet events;
  PlacementSet placements;
  events.theta = doc.value("theta", 0.9);
  if (doc.contains("events"))
    for (const Json& one : doc["events"]) {
      EventPoint e;
      e.row = one.at("row").get<int>();
      e.col = one.at("col").get<int>();
      e.frame = one.value("frame", kAggregateFrame);
      e.count = one.value("count", 1);
      events.aggregate.push_back(e);
    }
  if (doc.contains("observers"))
    for (const Json& one : doc["observers"]) {
      ObserverNode o;
      o.id = one.at("id").get<int>();
      o.x = one.at("x").get<double>();
      o.y = one.at("y").get<double>();
      o.radius = one.value("r", 0.0);
      placements.observers.push_back(o);
      placements.radius = o.radius;
    }
  return {std::move(events), std::move(placements)};
}

Json graph_to_json(const WaypointGraph& graph) {
  Json doc;
  Json nodes = Json::array();
  for (const WaypointNode& n : graph.nodes) {
    Json one;
    one["id"] = n.id;
    one["x"] = n.x;
    one["y"] = n.y;
    one["count"] = n.count;
    nodes.push_back(std::move(one));
  }
  doc["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const WaypointEdge& e : graph.edges) edges.push_back(Json{e.u, e.v, e.dist});
  doc["edges"] = std::move(edges);
  doc["params"] = Json{{"n_links", graph.n_links}, {"move_threshold", graph.move_threshold}};
  return doc;
}

WaypointGraph graph_from_json(const Json& doc) {
  WaypointGraph graph;
  for (const Json& one : doc.at("nodes")) {
    WaypointNode n;
    n.id = one.at("id").get<int>();
    n.x = one.at("x").get<double>();
    n.y = one.at("y").get<double>();
    n.count = one.value("count", 0.0);
    graph.nodes.push_back(n);
  }
  if (doc.contains("edges"))
    for (const Json& one : doc["edges"]) {
      if (!one.is_array() || one.size() != 3)
        throw std::runtime_error("graph: edge must be [u, v, dist]");
      graph.edges.push_back({one[0].get<int>(), one[1].get<int>(), one[2].get<double>()});
    }
  if (doc.contains("params")) {
    graph.n_links = doc["params"].value("n_links", graph.n_links);
    graph.move_threshold = doc["params"].value("move_threshold", graph.move_threshold);
  }
  return graph;
}

Json plan_to_json(const Plan& plan, const Json& params) {
  Json doc;
  Json sensors = Json::array();
  for (const SensorPlan& s : plan.sensors) {
    Json one;
    one["id"] = s.id;
    one["path"] = s.path;
    one["rewards"] = s.rewards;
    sensors.push_back(std::move(one));
  }
  doc["sensors"] = std::move(sensors);
  doc["total"] = plan.total;
  doc["params"] = params;
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace gridwatch
