#pragma once

#include <cstdint>
#include <vector>

#include "gridwatch/core.hpp"
#include "gridwatch/rng.hpp"

namespace gridwatch {

// Top-n aggregate cells by recurrence count, ties in row-major order.
PlacementSet frequency_placement(const EventSet& events, int n);

// Lloyd's algorithm with k-means++ seeding; points carry multiplicity weight.
// Empty clusters reseed at the point farthest from its assigned centroid.
// sse_log, when given, records the weighted SSE after every assignment pass.
PlacementSet kmeans_placement(const EventSet& events, int k, Rng& rng,
                              int max_iter = 100, std::vector<double>* sse_log = nullptr);

PlacementSet improved_kmeans_placement(const EventSet& events, int k, int min_count,
                                       Rng& rng, int max_iter = 100);

struct DbscanResult {
  std::vector<Cluster> clusters;  // ordered by smallest member index
  std::vector<int> noise;
  std::vector<int> labels;  // per point: cluster index, or -1 for noise
};

// Classic density connectivity over the <= eps graph; a point is its own
// neighbor for the minPts test. Border points join the cluster of their
// nearest core point (coordinate tie-break), making the partition invariant
// under input permutation.
DbscanResult dbscan(const std::vector<EventPoint>& points, double eps, int min_pts);

PlacementSet dbscan_placement(const EventSet& events, double eps, int min_pts, int n);
PlacementSet improved_dbscan_placement(const EventSet& events, double eps, int min_pts,
                                       int n, int min_count);

struct GreedyResult {
  PlacementSet placement;
  std::vector<std::int64_t> covered;  // weight captured by each successive pick
};

// Maximum-coverage greedy over the remaining event cells; each pick zeroes
// the points it covers. Ties resolve to the lowest row-major candidate.
GreedyResult greedy_placement(const std::vector<EventPoint>& points, double r, int n_max);

struct GaParams {
  int population = 30;
  int generations = 60;
  double crossover_rate = 0.8;
  double mutation_rate = 0.1;
  double diversity_threshold = 1.0;
  std::uint64_t seed = 0;
};

// Genome = n sensor positions in [0,length-1]x[0,width-1]. Fitness = union
// covered weight, minus the total event weight once per sensor pair closer
// than 2r. Returns the best individual ever evaluated.
PlacementSet genetic_placement(const EventSet& events, double r, int n,
                               const GaParams& params, int length, int width);

enum class Lattice { Integer, HalfCell };

struct ExactResult {
  PlacementSet placement;
  std::int64_t value = 0;
  bool optimal = false;
  std::int64_t nodes_explored = 0;
};

// Branch and bound over a candidate lattice, maximizing covered weight with
// at most n circles; non_overlap enforces pairwise center distance > 2r.
// The bound is the greedy residual bound; the incumbent is greedy-seeded.
ExactResult exact_coverage_placement(const EventSet& events, double r, int n,
                                     Lattice lattice = Lattice::Integer,
                                     std::int64_t node_budget = 1000000,
                                     bool non_overlap = true);

}  // namespace gridwatch
