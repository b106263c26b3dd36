#pragma once

#include <json.hpp>
#include <string>
#include <utility>

#include "gridwatch/core.hpp"
#include "gridwatch/grid.hpp"
#include "gridwatch/mobile_planning.hpp"
#include "gridwatch/prep.hpp"

namespace gridwatch {

// Insertion-ordered documents keep every writer byte-stable.
using Json = nlohmann::ordered_json;

// Canonical dataset object {length, width, snapshots, seed, generator, frames};
// frames are snapshot-major [frame][row][col].
Json series_to_json(const HeatmapSeries& series);

// Accepts the canonical object or a legacy bare 3-D array (which loads with
// empty provenance meta). Dimension errors name the offending frame.
HeatmapSeries series_from_json(const Json& doc);

void save_dataset(const HeatmapSeries& series, const std::string& path);
HeatmapSeries load_dataset(const std::string& path);

Json events_placement_to_json(const EventSet& events, const PlacementSet& placements);
std::pair<EventSet, PlacementSet> events_placement_from_json(const Json& doc);

Json graph_to_json(const WaypointGraph& graph);
WaypointGraph graph_from_json(const Json& doc);

Json plan_to_json(const Plan& plan, const Json& params);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gridwatch
