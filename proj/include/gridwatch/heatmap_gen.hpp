#pragma once

#include "gridwatch/grid.hpp"
#include "gridwatch/rng.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gridwatch {

enum class GeneratorKind {
  LifeSpatial,
  LifeTemporal,
  RandomWeighted,
  RandomWeightedConstrained,
};

const char* to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct Thresholds {
  double hot = 0.9;
  double warm = 0.7;
  double cool = 0.5;
};

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::LifeSpatial;
  int length = 50;
  int width = 50;
  int snapshots = 20;
  double p_alive = 0.3;
  Thresholds thresholds;
  std::uint64_t seed = 0;
};

// Weighted pick: draws one value in [0, sum(probs)), walks the cumulative sum
// and returns the first element whose prefix covers the draw; falls through to
// the last element if rounding exhausts the range.
template <class T>
T random_choice(const std::vector<T>& values, const std::vector<double>& probs,
                Rng& rng) {
  if (values.empty() || values.size() != probs.size())
    throw std::invalid_argument("random_choice: lists must be same nonempty length");
  double p_sum = 0.0;
  for (double p : probs) p_sum += p;
  const double draw = rng.uniform() * p_sum;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    cumulative += probs[i];
    if (draw <= cumulative) return values[i];
  }
  return values.back();
}

BinaryGrid generate_life_grid(int length, int width, double p_alive, Rng& rng);

// 8 Moore neighbors with toroidal wrap; the center cell is excluded.
int count_alive_neighbors(const BinaryGrid& grid, int row, int col);

std::uint8_t conways_rule(std::uint8_t cell, int num_alive_neighbors);

// Synchronous update: every output cell is computed from the original grid.
template <class Rule>
BinaryGrid evolve_grid(const BinaryGrid& grid, Rule&& rule) {
  BinaryGrid next = grid;
  for (int row = 0; row < grid.rows(); ++row)
    for (int col = 0; col < grid.cols(); ++col)
      next(row, col) = rule(grid(row, col), count_alive_neighbors(grid, row, col));
  return next;
}

FrameGrid grid_to_heatmap_spatial(const BinaryGrid& grid);
FrameGrid grid_to_heatmap_temporal(const BinaryGrid& grid, const BinaryGrid& next_grid);

FrameGrid generate_random_frame(int length, int width, Rng& rng);
FrameGrid apply_hotspot_distribution(FrameGrid frame, const Thresholds& thresholds);
FrameGrid enforce_neighborhood(const FrameGrid& frame, double warm_threshold);

HeatmapSeries generate_series(const GeneratorConfig& config);

}  // namespace gridwatch
