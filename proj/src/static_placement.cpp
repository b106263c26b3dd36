#include "gridwatch/static_placement.hpp"

#include "gridwatch/heatmap_gen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gridwatch {

namespace {

double dist2(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::int64_t total_weight(const std::vector<EventPoint>& pts) {
  std::int64_t w = 0;
  for (const EventPoint& p : pts) w += p.count;
  return w;
}

PlacementSet placement_at(const std::vector<Point2>& centers, double radius) {
  PlacementSet p;
  p.radius = radius;
  for (std::size_t i = 0; i < centers.size(); ++i)
    p.observers.push_back({static_cast<int>(i), centers[i].x, centers[i].y, radius});
  return p;
}

}  // namespace

PlacementSet frequency_placement(const EventSet& events, int n) {
  if (n < 0) throw std::invalid_argument("frequency_placement: negative n");
  std::vector<EventPoint> cells = events.aggregate;
  std::sort(cells.begin(), cells.end(), [](const EventPoint& a, const EventPoint& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
  });
  cells.resize(std::min<std::size_t>(n, cells.size()));
  std::vector<Point2> centers;
  for (const EventPoint& c : cells) centers.push_back(c.position());
  return placement_at(centers, 0.0);
}

PlacementSet kmeans_placement(const EventSet& events, int k, Rng& rng, int max_iter,
                              std::vector<double>* sse_log) {
  const std::vector<EventPoint>& pts = events.aggregate;
  if (k < 1) throw std::invalid_argument("kmeans_placement: k must be >= 1");
  if (static_cast<std::size_t>(k) > pts.size())
    throw std::invalid_argument("kmeans_placement: k exceeds distinct points");
  const std::size_t m = pts.size();

  // k-means++ seeding, multiplicity-weighted.
  std::vector<Point2> centers;
  std::vector<std::size_t> index(m);
  std::iota(index.begin(), index.end(), std::size_t{0});
  {
    std::vector<double> probs(m);
    for (std::size_t i = 0; i < m; ++i) probs[i] = pts[i].count;
    centers.push_back(pts[random_choice(index, probs, rng)].position());
  }
  std::vector<double> d2(m, std::numeric_limits<double>::infinity());
  while (centers.size() < static_cast<std::size_t>(k)) {
    std::vector<double> probs(m);
    for (std::size_t i = 0; i < m; ++i) {
      d2[i] = std::min(d2[i], dist2(pts[i].position(), centers.back()));
      probs[i] = pts[i].count * d2[i];
    }
    centers.push_back(pts[random_choice(index, probs, rng)].position());
  }

  // Lloyd iterations to assignment fixpoint.
  std::vector<int> assign(m, -1);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<int> next(m);
    double sse = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      int best = 0;
      double best_d = dist2(pts[i].position(), centers[0]);
      for (int c = 1; c < k; ++c) {
        const double d = dist2(pts[i].position(), centers[c]);
        if (d < best_d) {
          best = c;
          best_d = d;
        }
      }
      next[i] = best;
      sse += pts[i].count * best_d;
    }
    if (sse_log) sse_log->push_back(sse);
    const bool changed = next != assign;
    assign = std::move(next);

    std::vector<double> sx(k, 0.0), sy(k, 0.0), sw(k, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      sx[assign[i]] += pts[i].count * pts[i].row;
      sy[assign[i]] += pts[i].count * pts[i].col;
      sw[assign[i]] += pts[i].count;
    }
    bool reseeded = false;
    for (int c = 0; c < k; ++c)
      if (sw[c] > 0.0) centers[c] = {sx[c] / sw[c], sy[c] / sw[c]};
    for (int c = 0; c < k; ++c) {
      if (sw[c] > 0.0) continue;
      // Empty cluster: reseed at the point farthest from its own centroid.
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = dist2(pts[i].position(), centers[assign[i]]);
        if (d > far_d) {
          far = i;
          far_d = d;
        }
      }
      centers[c] = pts[far].position();
      assign[far] = c;  // claim it so a second empty cluster picks elsewhere
      reseeded = true;
    }
    if (!changed && !reseeded) break;
  }
  return placement_at(centers, 0.0);
}

namespace {

EventSet filter_recurring(const EventSet& events, int min_count, const char* who) {
  EventSet filtered;
  filtered.theta = events.theta;
  for (const EventPoint& p : events.aggregate)
    if (p.count >= min_count) filtered.aggregate.push_back(p);
  if (filtered.aggregate.empty())
    throw std::invalid_argument(std::string(who) + ": no events survive the recurrence filter");
  return filtered;
}

}  // namespace

PlacementSet improved_kmeans_placement(const EventSet& events, int k, int min_count,
                                       Rng& rng, int max_iter) {
  return kmeans_placement(filter_recurring(events, min_count, "improved_kmeans_placement"),
                          k, rng, max_iter);
}

DbscanResult dbscan(const std::vector<EventPoint>& points, double eps, int min_pts) {
  if (eps < 0.0) throw std::invalid_argument("dbscan: negative eps");
  if (min_pts < 1) throw std::invalid_argument("dbscan: minPts must be >= 1");
  const std::size_t n = points.size();

  std::vector<std::vector<int>> neighbors(n);  // self included
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (euclidean_distance(points[i].position(), points[j].position()) <= eps)
        neighbors[i].push_back(static_cast<int>(j));

  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i)
    core[i] = neighbors[i].size() >= static_cast<std::size_t>(min_pts);

  // Core components first: density connectivity is permutation-invariant.
  std::vector<int> comp(n, -1);
  int num_comp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i] || comp[i] >= 0) continue;
    std::vector<int> stack{static_cast<int>(i)};
    comp[i] = num_comp;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : neighbors[u])
        if (core[v] && comp[v] < 0) {
          comp[v] = num_comp;
          stack.push_back(v);
        }
    }
    ++num_comp;
  }

  // Border points join the cluster of their nearest core point; distance
  // ties resolve by core coordinates, keeping the partition canonical.
  DbscanResult result;
  result.labels.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) {
      result.labels[i] = comp[i];
      continue;
    }
    int chosen = -1;
    double chosen_d = std::numeric_limits<double>::infinity();
    for (int v : neighbors[i]) {
      if (!core[v]) continue;
      const double d = euclidean_distance(points[i].position(), points[v].position());
      const bool closer =
          d < chosen_d ||
          (d == chosen_d && chosen >= 0 &&
           std::pair(points[v].row, points[v].col) <
               std::pair(points[chosen].row, points[chosen].col));
      if (chosen < 0 || closer) {
        chosen = v;
        chosen_d = d;
      }
    }
    if (chosen >= 0) result.labels[i] = comp[chosen];
  }

  std::vector<Cluster> raw(num_comp);
  for (std::size_t i = 0; i < n; ++i) {
    if (result.labels[i] < 0) {
      result.noise.push_back(static_cast<int>(i));
      continue;
    }
    raw[result.labels[i]].members.push_back(static_cast<int>(i));
  }

  // Canonical cluster order: ascending smallest member index.
  std::vector<int> order(num_comp);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return raw[a].members.front() < raw[b].members.front();
  });
  std::vector<int> relabel(num_comp);
  for (int pos = 0; pos < num_comp; ++pos) {
    Cluster c = std::move(raw[order[pos]]);
    double sx = 0.0, sy = 0.0;
    for (int i : c.members) {
      sx += points[i].row;
      sy += points[i].col;
      c.density += points[i].count;
    }
    c.cx = sx / c.members.size();
    c.cy = sy / c.members.size();
    relabel[order[pos]] = pos;
    result.clusters.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (result.labels[i] >= 0) result.labels[i] = relabel[result.labels[i]];
  return result;
}

PlacementSet dbscan_placement(const EventSet& events, double eps, int min_pts, int n) {
  if (n < 0) throw std::invalid_argument("dbscan_placement: negative n");
  DbscanResult res = dbscan(events.aggregate, eps, min_pts);
  std::stable_sort(res.clusters.begin(), res.clusters.end(),
                   [](const Cluster& a, const Cluster& b) { return a.density > b.density; });
  std::vector<Point2> centers;
  for (std::size_t i = 0; i < res.clusters.size() && i < static_cast<std::size_t>(n); ++i)
    centers.push_back({res.clusters[i].cx, res.clusters[i].cy});
  return placement_at(centers, 0.0);
}

PlacementSet improved_dbscan_placement(const EventSet& events, double eps, int min_pts,
                                       int n, int min_count) {
  return dbscan_placement(filter_recurring(events, min_count, "improved_dbscan_placement"),
                          eps, min_pts, n);
}

GreedyResult greedy_placement(const std::vector<EventPoint>& points, double r, int n_max) {
  if (r < 0.0) throw std::invalid_argument("greedy_placement: negative radius");
  GreedyResult res;
  res.placement.radius = r;
  std::vector<bool> alive(points.size(), true);

  for (int pick = 0; pick < n_max; ++pick) {
    std::set<std::pair<int, int>> cells;  // ascending = row-major tie order
    for (std::size_t i = 0; i < points.size(); ++i)
      if (alive[i]) cells.insert({points[i].row, points[i].col});

    std::int64_t best_w = 0;
    std::pair<int, int> best_cell{0, 0};
    for (const auto& cell : cells) {
      const Point2 center{static_cast<double>(cell.first), static_cast<double>(cell.second)};
      std::int64_t w = 0;
      for (std::size_t i = 0; i < points.size(); ++i)
        if (alive[i] && euclidean_distance(center, points[i].position()) <= r)
          w += points[i].count;
      if (w > best_w) {
        best_w = w;
        best_cell = cell;
      }
    }
    if (best_w == 0) break;

    const Point2 center{static_cast<double>(best_cell.first),
                        static_cast<double>(best_cell.second)};
    res.placement.observers.push_back({pick, center.x, center.y, r});
    res.covered.push_back(best_w);
    for (std::size_t i = 0; i < points.size(); ++i)
      if (alive[i] && euclidean_distance(center, points[i].position()) <= r)
        alive[i] = false;
  }
  return res;
}

PlacementSet genetic_placement(const EventSet& events, double r, int n,
                               const GaParams& prm, int length, int width) {
  if (prm.population < 2)
    throw std::invalid_argument("genetic_placement: population must be >= 2");
  if (n < 1) throw std::invalid_argument("genetic_placement: n must be >= 1");
  if (prm.crossover_rate < 0 || prm.crossover_rate > 1 || prm.mutation_rate < 0 ||
      prm.mutation_rate > 1)
    throw std::invalid_argument("genetic_placement: rates must be in [0,1]");
  if (length < 1 || width < 1)
    throw std::invalid_argument("genetic_placement: invalid grid extent");

  using Genome = std::vector<Point2>;
  Rng rng(prm.seed);
  const std::int64_t total_w = total_weight(events.aggregate);

  auto random_position = [&] {
    return Point2{rng.uniform(0.0, static_cast<double>(length - 1)),
                  rng.uniform(0.0, static_cast<double>(width - 1))};
  };
  auto random_genome = [&] {
    Genome g(n);
    for (Point2& p : g) p = random_position();
    return g;
  };
  // Union covered weight; every sensor pair closer than 2r forfeits the
  // whole event weight once, so overlapping layouts always rank below
  // disjoint ones covering anything at all.
  auto fitness = [&](const Genome& g) {
    double covered = 0.0;
    for (const EventPoint& e : events.aggregate)
      for (const Point2& p : g)
        if (euclidean_distance(p, e.position()) <= r) {
          covered += e.count;
          break;
        }
    int violations = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (euclidean_distance(g[a], g[b]) < 2 * r) ++violations;
    return covered - static_cast<double>(total_w) * violations;
  };

  std::vector<Genome> pop(prm.population);
  for (Genome& g : pop) g = random_genome();
  std::vector<double> fit(prm.population);
  Genome best;
  double best_fit = -std::numeric_limits<double>::infinity();
  auto evaluate_all = [&] {
    for (int i = 0; i < prm.population; ++i) {
      fit[i] = fitness(pop[i]);
      if (fit[i] > best_fit) {
        best_fit = fit[i];
        best = pop[i];
      }
    }
  };
  evaluate_all();

  auto tournament = [&]() -> const Genome& {
    int winner = static_cast<int>(rng.below(prm.population));
    for (int t = 1; t < 3; ++t) {
      const int challenger = static_cast<int>(rng.below(prm.population));
      if (fit[challenger] > fit[winner]) winner = challenger;
    }
    return pop[winner];
  };

  for (int gen = 0; gen < prm.generations; ++gen) {
    std::vector<Genome> next;
    next.reserve(prm.population);
    while (static_cast<int>(next.size()) < prm.population) {
      const Genome& p1 = tournament();
      const Genome& p2 = tournament();
      Genome child = p1;
      if (n >= 2 && rng.uniform() < prm.crossover_rate) {
        const int cut = 1 + static_cast<int>(rng.below(n - 1));
        std::copy(p2.begin() + cut, p2.end(), child.begin() + cut);
      }
      for (Point2& gene : child)
        if (rng.uniform() < prm.mutation_rate) gene = random_position();
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    evaluate_all();

    // Diversity maintenance: refill the worst 10% when genomes collapse.
    double pair_sum = 0.0;
    int pairs = 0;
    for (int a = 0; a < prm.population; ++a)
      for (int b = a + 1; b < prm.population; ++b) {
        double d = 0.0;
        for (int g = 0; g < n; ++g) d += euclidean_distance(pop[a][g], pop[b][g]);
        pair_sum += d / n;
        ++pairs;
      }
    if (pairs > 0 && pair_sum / pairs < prm.diversity_threshold) {
      std::vector<int> by_fit(prm.population);
      std::iota(by_fit.begin(), by_fit.end(), 0);
      std::sort(by_fit.begin(), by_fit.end(), [&](int a, int b) {
        if (fit[a] != fit[b]) return fit[a] < fit[b];
        return a < b;
      });
      const int refill = (prm.population + 9) / 10;
      for (int idx = 0; idx < refill; ++idx) {
        const int slot = by_fit[idx];
        pop[slot] = random_genome();
        fit[slot] = fitness(pop[slot]);
        if (fit[slot] > best_fit) {
          best_fit = fit[slot];
          best = pop[slot];
        }
      }
    }
  }

  return placement_at(best, r);
}

namespace {

struct CoverageMasks {
  std::vector<std::vector<std::uint64_t>> mask;  // per candidate
  std::vector<std::int64_t> weight;              // per event
  std::size_t words = 0;
};

std::int64_t masked_gain(const std::vector<std::uint64_t>& mask,
                         const std::vector<std::uint64_t>& covered,
                         const std::vector<std::int64_t>& weight) {
  std::int64_t gain = 0;
  for (std::size_t w = 0; w < mask.size(); ++w) {
    std::uint64_t bits = mask[w] & ~covered[w];
    while (bits) {
      gain += weight[w * 64 + std::countr_zero(bits)];
      bits &= bits - 1;
    }
  }
  return gain;
}

}  // namespace

ExactResult exact_coverage_placement(const EventSet& events, double r, int n,
                                     Lattice lattice, std::int64_t node_budget,
                                     bool non_overlap) {
  if (node_budget <= 0)
    throw std::invalid_argument("exact_coverage_placement: budget must be positive");
  if (r < 0.0) throw std::invalid_argument("exact_coverage_placement: negative radius");
  if (n < 0) throw std::invalid_argument("exact_coverage_placement: negative n");

  const std::vector<EventPoint>& pts = events.aggregate;
  ExactResult result;
  result.placement.radius = r;
  result.optimal = true;
  if (pts.empty() || n == 0) return result;

  std::vector<Point2> cands;
  if (lattice == Lattice::Integer) {
    for (const EventPoint& p : pts) cands.push_back(p.position());
  } else {
    int min_r = pts[0].row, max_r = pts[0].row, min_c = pts[0].col, max_c = pts[0].col;
    for (const EventPoint& p : pts) {
      min_r = std::min(min_r, p.row);
      max_r = std::max(max_r, p.row);
      min_c = std::min(min_c, p.col);
      max_c = std::max(max_c, p.col);
    }
    for (int i = 0; i <= 2 * (max_r - min_r); ++i)
      for (int j = 0; j <= 2 * (max_c - min_c); ++j)
        cands.push_back({min_r + 0.5 * i, min_c + 0.5 * j});
  }

  CoverageMasks cov;
  cov.words = (pts.size() + 63) / 64;
  cov.weight.resize(cov.words * 64, 0);
  for (std::size_t j = 0; j < pts.size(); ++j) cov.weight[j] = pts[j].count;
  cov.mask.assign(cands.size(), std::vector<std::uint64_t>(cov.words, 0));
  for (std::size_t c = 0; c < cands.size(); ++c)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (euclidean_distance(cands[c], pts[j].position()) <= r)
        cov.mask[c][j / 64] |= std::uint64_t{1} << (j % 64);

  // Strongest disks first tightens the greedy residual bound.
  std::vector<int> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  const std::vector<std::uint64_t> empty_mask(cov.words, 0);
  std::vector<std::int64_t> solo(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c)
    solo[c] = masked_gain(cov.mask[c], empty_mask, cov.weight);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return solo[a] > solo[b]; });

  auto feasible = [&](const Point2& p, const std::vector<int>& chosen) {
    if (!non_overlap) return true;
    for (int c : chosen)
      if (euclidean_distance(p, cands[c]) <= 2 * r) return false;
    return true;
  };

  // Greedy-seeded incumbent over the same candidate set.
  std::vector<int> best_set;
  std::int64_t best_value = 0;
  {
    std::vector<int> chosen;
    std::vector<std::uint64_t> covered(cov.words, 0);
    std::int64_t value = 0;
    for (int pick = 0; pick < n; ++pick) {
      int best_c = -1;
      std::int64_t best_g = 0;
      for (int c : order) {
        if (!feasible(cands[c], chosen)) continue;
        const std::int64_t g = masked_gain(cov.mask[c], covered, cov.weight);
        if (g > best_g) {
          best_g = g;
          best_c = c;
        }
      }
      if (best_c < 0) break;
      chosen.push_back(best_c);
      for (std::size_t w = 0; w < cov.words; ++w) covered[w] |= cov.mask[best_c][w];
      value += best_g;
    }
    best_set = chosen;
    best_value = value;
  }
  if (!non_overlap) {
    // Row-major-tied greedy can beat the weight-ordered one; keep the better
    // incumbent so a budget abort still dominates both.
    const GreedyResult gr = greedy_placement(pts, r, n);
    std::vector<int> gset;
    std::vector<std::uint64_t> gcov(cov.words, 0);
    std::int64_t gval = 0;
    bool mapped = true;
    for (const ObserverNode& o : gr.placement.observers) {
      int found = -1;
      for (std::size_t c = 0; c < cands.size() && found < 0; ++c)
        if (cands[c].x == o.x && cands[c].y == o.y) found = static_cast<int>(c);
      if (found < 0) {
        mapped = false;
        break;
      }
      gval += masked_gain(cov.mask[found], gcov, cov.weight);
      for (std::size_t w = 0; w < cov.words; ++w) gcov[w] |= cov.mask[found][w];
      gset.push_back(found);
    }
    if (mapped && gval > best_value) {
      best_value = gval;
      best_set = gset;
    }
  }

  const std::int64_t total = total_weight(pts);
  bool aborted = false;
  std::vector<int> chosen;
  std::function<void(std::size_t, const std::vector<std::uint64_t>&, std::int64_t)> dfs =
      [&](std::size_t idx, const std::vector<std::uint64_t>& covered, std::int64_t value) {
        if (aborted) return;
        if (++result.nodes_explored > node_budget) {
          aborted = true;
          return;
        }
        if (value > best_value) {
          best_value = value;
          best_set = chosen;
        }
        if (static_cast<int>(chosen.size()) == n || idx == order.size()) return;

        // Bound: top-k residual disk gains, capped by the residual total.
        const int slots = n - static_cast<int>(chosen.size());
        std::vector<std::int64_t> gains;
        gains.reserve(order.size() - idx);
        std::int64_t covered_w = 0;
        for (std::size_t w = 0; w < cov.words; ++w) {
          std::uint64_t bits = covered[w];
          while (bits) {
            covered_w += cov.weight[w * 64 + std::countr_zero(bits)];
            bits &= bits - 1;
          }
        }
        for (std::size_t i = idx; i < order.size(); ++i)
          gains.push_back(masked_gain(cov.mask[order[i]], covered, cov.weight));
        std::partial_sort(gains.begin(),
                          gains.begin() + std::min<std::size_t>(slots, gains.size()),
                          gains.end(), std::greater<>());
        std::int64_t top_sum = 0;
        for (std::size_t i = 0; i < std::min<std::size_t>(slots, gains.size()); ++i)
          top_sum += gains[i];
        const std::int64_t bound = value + std::min(top_sum, total - covered_w);
        if (bound <= best_value) return;

        const int cand = order[idx];
        if (feasible(cands[cand], chosen)) {
          const std::int64_t g = masked_gain(cov.mask[cand], covered, cov.weight);
          std::vector<std::uint64_t> next = covered;
          for (std::size_t w = 0; w < cov.words; ++w) next[w] |= cov.mask[cand][w];
          chosen.push_back(cand);
          dfs(idx + 1, next, value + g);
          chosen.pop_back();
        }
        dfs(idx + 1, covered, value);
      };
  dfs(0, empty_mask, 0);

  result.value = best_value;
  result.optimal = !aborted;
  for (std::size_t i = 0; i < best_set.size(); ++i)
    result.placement.observers.push_back(
        {static_cast<int>(i), cands[best_set[i]].x, cands[best_set[i]].y, r});
  return result;
}

}  // namespace gridwatch
