#include "gridwatch/mobile_planning.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace gridwatch {

namespace {

int checked_node_count(const WaypointGraph& graph) {
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<bool> seen(n, false);
  for (const WaypointNode& node : graph.nodes) {
    if (node.id < 0 || node.id >= n || seen[node.id])
      throw std::invalid_argument("waypoint ids must be exactly 0..N-1 for planning");
    seen[node.id] = true;
  }
  return n;
}

std::vector<std::vector<int>> adjacency(const WaypointGraph& graph, int n) {
  std::vector<std::vector<int>> adj(n);
  for (const WaypointEdge& e : graph.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

bool better_path(const ScoredPath& a, const ScoredPath& b) {
  if (a.reward != b.reward) return a.reward > b.reward;
  return a.nodes < b.nodes;
}

}  // namespace

ActivationTable ted_activate(const HeatmapSeries& series, const WaypointGraph& graph,
                             double theta, double r, int k) {
  if (theta <= 0.0 || theta > 1.0)
    throw std::invalid_argument("ted_activate: theta must be in (0, 1]");
  if (r < 0.0) throw std::invalid_argument("ted_activate: negative radius");
  if (k < 0) throw std::invalid_argument("ted_activate: negative k");
  const int n = checked_node_count(graph);
  const int frame_count = static_cast<int>(series.frames.size());

  std::vector<Point2> pos(n);
  for (const WaypointNode& node : graph.nodes) pos[node.id] = {node.x, node.y};

  ActivationTable table;
  table.W = Grid<double>::Zero(frame_count, n);
  table.active.resize(frame_count);
  table.top_k.resize(frame_count);

  for (int t = 0; t < frame_count; ++t) {
    const FrameGrid& frame = series.frames[t];
    std::vector<Point2> hot;
    for (int i = 0; i < frame.rows(); ++i)
      for (int j = 0; j < frame.cols(); ++j)
        if (frame(i, j) >= theta)
          hot.push_back({static_cast<double>(i), static_cast<double>(j)});

    for (int id = 0; id < n; ++id)
      for (const Point2& cell : hot)
        if (euclidean_distance(pos[id], cell) <= r) table.W(t, id) += 1.0;

    for (int id = 0; id < n; ++id)
      if (table.W(t, id) > 0.0) table.active[t].push_back(id);
    std::vector<int> ranked = table.active[t];
    std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
      if (table.W(t, a) != table.W(t, b)) return table.W(t, a) > table.W(t, b);
      return a < b;
    });
    if (static_cast<int>(ranked.size()) > k) ranked.resize(k);
    table.top_k[t] = std::move(ranked);
  }
  return table;
}

PathletTable generate_pathlets(const WaypointGraph& graph, int h_max) {
  if (h_max < 0) throw std::invalid_argument("generate_pathlets: negative h_max");
  const int n = checked_node_count(graph);
  const auto adj = adjacency(graph, n);

  PathletTable table;
  table.h_max = h_max;
  table.by_node.resize(n);

  std::vector<int> dist(n);
  std::vector<int> pred(n);
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    std::vector<int> frontier{src};
    for (int d = 1; d <= h_max && !frontier.empty(); ++d) {
      std::vector<int> next;
      for (int v : frontier)
        for (int w : adj[v])
          if (dist[w] < 0) {
            dist[w] = d;
            next.push_back(w);
          }
      frontier = std::move(next);
    }
    // Canonical predecessor: lowest-id neighbor one layer closer. adj is
    // ascending, so the first hit is the canonical one.
    std::fill(pred.begin(), pred.end(), -1);
    for (int v = 0; v < n; ++v) {
      if (dist[v] <= 0) continue;
      for (int w : adj[v])
        if (dist[w] == dist[v] - 1) {
          pred[v] = w;
          break;
        }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] < 0) continue;
      Pathlet pl;
      pl.dest = v;
      pl.hops = dist[v];
      for (int cur = v; cur != src; cur = pred[cur]) pl.seq.push_back(cur);
      pl.seq.push_back(src);
      std::reverse(pl.seq.begin(), pl.seq.end());
      table.by_node[src].push_back(std::move(pl));
    }
  }
  return table;
}

std::vector<ScoredPath> extend_temporal_paths(const PathletTable& pathlets,
                                              const Grid<double>& W, int frame_count,
                                              RewardMode mode, int beam) {
  const int n = static_cast<int>(pathlets.by_node.size());
  if (frame_count < 1)
    throw std::invalid_argument("extend_temporal_paths: frame_count must be >= 1");
  if (W.rows() != frame_count || W.cols() != n)
    throw std::invalid_argument("extend_temporal_paths: activation dims mismatch");

  std::vector<std::vector<ScoredPath>> beams(n);
  for (int v = 0; v < n; ++v) {
    ScoredPath p;
    p.nodes = {v};
    p.frame_rewards = {W(0, v)};
    p.reward = W(0, v);
    beams[v].push_back(std::move(p));
  }

  for (int t = 1; t < frame_count; ++t) {
    std::vector<std::vector<ScoredPath>> next(n);
    for (int v = 0; v < n; ++v)
      for (const ScoredPath& p : beams[v])
        for (const Pathlet& pl : pathlets.by_node[v]) {
          double gain = 0.0;
          if (mode == RewardMode::Endpoint) {
            gain = W(t, pl.dest);
          } else if (pl.seq.size() == 1) {
            gain = W(t, v);  // staying still samples the node itself
          } else {
            for (std::size_t i = 1; i < pl.seq.size(); ++i) gain += W(t, pl.seq[i]);
          }
          ScoredPath q = p;
          q.nodes.push_back(pl.dest);
          q.frame_rewards.push_back(gain);
          q.reward += gain;
          next[pl.dest].push_back(std::move(q));
        }
    for (int v = 0; v < n; ++v) {
      std::sort(next[v].begin(), next[v].end(), better_path);
      if (beam > 0 && static_cast<int>(next[v].size()) > beam) next[v].resize(beam);
    }
    beams = std::move(next);
  }

  std::vector<ScoredPath> out;
  for (int v = 0; v < n; ++v)
    for (ScoredPath& p : beams[v]) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(), better_path);
  return out;
}

Plan select_paths(const std::vector<ScoredPath>& paths, int num_sensors,
                  bool node_time_overlap) {
  if (num_sensors < 0)
    throw std::invalid_argument("select_paths: negative num_sensors");

  std::vector<const ScoredPath*> order;
  order.reserve(paths.size());
  for (const ScoredPath& p : paths) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const ScoredPath* a, const ScoredPath* b) { return better_path(*a, *b); });

  Plan plan;
  std::set<int> used_nodes;
  std::set<std::pair<int, int>> used_node_times;
  for (const ScoredPath* p : order) {
    if (static_cast<int>(plan.sensors.size()) == num_sensors) break;
    bool clash = false;
    if (node_time_overlap) {
      for (std::size_t t = 0; t < p->nodes.size() && !clash; ++t)
        clash = used_node_times.count({p->nodes[t], static_cast<int>(t)}) > 0;
    } else {
      for (int v : p->nodes)
        if (used_nodes.count(v)) {
          clash = true;
          break;
        }
    }
    if (clash) continue;
    if (node_time_overlap) {
      for (std::size_t t = 0; t < p->nodes.size(); ++t)
        used_node_times.insert({p->nodes[t], static_cast<int>(t)});
    } else {
      used_nodes.insert(p->nodes.begin(), p->nodes.end());
    }
    plan.sensors.push_back({static_cast<int>(plan.sensors.size()), p->nodes,
                            p->frame_rewards});
    plan.total += p->reward;
  }
  return plan;
}

Plan waitr_plan(const HeatmapSeries& series, const WaypointGraph& graph,
                const MobileParams& params) {
  if (params.num_sensors < 1)
    throw std::invalid_argument("waitr_plan: num_sensors must be >= 1");
  const ActivationTable table =
      ted_activate(series, graph, params.theta, params.r, params.top_k);
  const PathletTable pathlets = generate_pathlets(graph, params.h_max);
  const int frame_count = static_cast<int>(series.frames.size());
  const std::vector<ScoredPath> scored =
      extend_temporal_paths(pathlets, table.W, frame_count, params.mode, params.beam);
  return select_paths(scored, params.num_sensors, params.node_time_overlap);
}

Plan greedy_mobile_plan(const HeatmapSeries& series, const WaypointGraph& graph,
                        const MobileParams& params) {
  const int n = checked_node_count(graph);
  if (params.num_sensors < 1)
    throw std::invalid_argument("greedy_mobile_plan: num_sensors must be >= 1");
  if (params.num_sensors > n)
    throw std::invalid_argument("greedy_mobile_plan: more sensors than nodes");
  const int frame_count = static_cast<int>(series.frames.size());
  if (frame_count < 1)
    throw std::invalid_argument("greedy_mobile_plan: empty series");

  const ActivationTable table =
      ted_activate(series, graph, params.theta, params.r, params.top_k);
  const PathletTable pathlets = generate_pathlets(graph, params.h_max);
  const int sensors = params.num_sensors;

  Plan plan;
  plan.sensors.resize(sensors);

  // Frame 0: top-ranked active nodes by rank, lowest unclaimed ids as filler.
  {
    std::vector<int> ranked;
    for (int id = 0; id < n; ++id)
      if (table.W(0, id) > 0.0) ranked.push_back(id);
    std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
      if (table.W(0, a) != table.W(0, b)) return table.W(0, a) > table.W(0, b);
      return a < b;
    });
    std::vector<bool> claimed(n, false);
    int s = 0;
    for (int id : ranked) {
      if (s == sensors) break;
      claimed[id] = true;
      plan.sensors[s++].path.push_back(id);
    }
    for (int id = 0; id < n && s < sensors; ++id)
      if (!claimed[id]) {
        claimed[id] = true;
        plan.sensors[s++].path.push_back(id);
      }
    for (s = 0; s < sensors; ++s) {
      plan.sensors[s].id = s;
      plan.sensors[s].rewards.push_back(table.W(0, plan.sensors[s].path[0]));
    }
  }

  for (int t = 1; t < frame_count; ++t) {
    std::vector<bool> claimed(n, false);
    for (int s = 0; s < sensors; ++s) {
      const int cur = plan.sensors[s].path.back();
      const auto& reach = pathlets.by_node[cur];  // dest ascending

      int chosen = -1;
      double best = 0.0;
      for (const Pathlet& pl : reach) {
        if (claimed[pl.dest]) continue;
        if (table.W(t, pl.dest) > best) {  // strict: ties keep the lowest id
          best = table.W(t, pl.dest);
          chosen = pl.dest;
        }
      }
      if (chosen < 0) {
        // Nothing pays now; step toward the best reward of the next frame.
        if (t + 1 < frame_count) {
          int target = -1;
          double target_w = 0.0;
          for (const Pathlet& pl : reach)
            if (table.W(t + 1, pl.dest) > target_w) {
              target_w = table.W(t + 1, pl.dest);
              target = pl.dest;
            }
          if (target >= 0 && target != cur)
            for (const Pathlet& pl : reach)
              if (pl.dest == target) {
                const int step = pl.seq[1];
                if (!claimed[step]) chosen = step;
                break;
              }
        }
        if (chosen < 0 && !claimed[cur]) chosen = cur;
        if (chosen < 0)
          for (const Pathlet& pl : reach)
            if (!claimed[pl.dest]) {
              chosen = pl.dest;
              break;
            }
        if (chosen < 0) chosen = cur;  // disconnected corner: collide in place
      }
      claimed[chosen] = true;
      plan.sensors[s].path.push_back(chosen);
      plan.sensors[s].rewards.push_back(table.W(t, chosen));
    }
  }

  for (const SensorPlan& s : plan.sensors)
    for (double w : s.rewards) plan.total += w;
  return plan;
}

}  // namespace gridwatch
