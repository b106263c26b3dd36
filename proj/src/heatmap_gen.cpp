#include "gridwatch/heatmap_gen.hpp"

#include <algorithm>
#include <cmath>

namespace gridwatch {

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::LifeSpatial: return "life-spatial";
    case GeneratorKind::LifeTemporal: return "life-temporal";
    case GeneratorKind::RandomWeighted: return "random-weighted";
    case GeneratorKind::RandomWeightedConstrained: return "random-weighted-constrained";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  if (name == "life-spatial") return GeneratorKind::LifeSpatial;
  if (name == "life-temporal") return GeneratorKind::LifeTemporal;
  if (name == "random-weighted") return GeneratorKind::RandomWeighted;
  if (name == "random-weighted-constrained") return GeneratorKind::RandomWeightedConstrained;
  throw std::invalid_argument("unknown generator kind: " + name);
}

BinaryGrid generate_life_grid(int length, int width, double p_alive, Rng& rng) {
  if (length < 1 || width < 1)
    throw std::invalid_argument("generate_life_grid: dimensions must be >= 1");
  static const std::vector<std::uint8_t> states = {0, 1};
  BinaryGrid grid(length, width);
  // Draw order is row-major; it is part of the byte-stability contract.
  for (int row = 0; row < length; ++row)
    for (int col = 0; col < width; ++col)
      grid(row, col) = random_choice(states, {1.0 - p_alive, p_alive}, rng);
  return grid;
}

int count_alive_neighbors(const BinaryGrid& grid, int row, int col) {
  const int num_rows = static_cast<int>(grid.rows());
  const int num_cols = static_cast<int>(grid.cols());
  if (row < 0 || row >= num_rows || col < 0 || col >= num_cols)
    throw std::invalid_argument("count_alive_neighbors: index out of range");
  int alive = 0;
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const int r = (row + dr + num_rows) % num_rows;
      const int c = (col + dc + num_cols) % num_cols;
      if (grid(r, c) == 1) ++alive;
    }
  return alive;
}

std::uint8_t conways_rule(std::uint8_t cell, int num_alive_neighbors) {
  if (num_alive_neighbors == 3) return 1;
  if (cell == 1 && num_alive_neighbors == 2) return 1;
  return 0;
}

FrameGrid grid_to_heatmap_spatial(const BinaryGrid& grid) {
  FrameGrid heatmap(grid.rows(), grid.cols());
  // Values computed as (k)/10 so the output alphabet prints as clean decimals.
  for (int row = 0; row < grid.rows(); ++row)
    for (int col = 0; col < grid.cols(); ++col) {
      const int n = count_alive_neighbors(grid, row, col);
      heatmap(row, col) = grid(row, col) == 1
                              ? std::min((5 + n) / 10.0, 1.0)
                              : std::min(n / 10.0, 1.0);
    }
  return heatmap;
}

FrameGrid grid_to_heatmap_temporal(const BinaryGrid& grid, const BinaryGrid& next_grid) {
  if (grid.rows() != next_grid.rows() || grid.cols() != next_grid.cols())
    throw std::invalid_argument("grid_to_heatmap_temporal: dimension mismatch");
  FrameGrid heatmap(grid.rows(), grid.cols());
  for (int row = 0; row < grid.rows(); ++row)
    for (int col = 0; col < grid.cols(); ++col) {
      if (grid(row, col) == 1 && next_grid(row, col) == 1) {
        heatmap(row, col) = 1.0;
        continue;
      }
      int n = count_alive_neighbors(grid, row, col);
      if (grid(row, col) == 1) ++n;
      heatmap(row, col) = std::min(n / 8.0, 0.9);
    }
  return heatmap;
}

FrameGrid generate_random_frame(int length, int width, Rng& rng) {
  if (length < 1 || width < 1)
    throw std::invalid_argument("generate_random_frame: dimensions must be >= 1");
  FrameGrid frame(length, width);
  for (int row = 0; row < length; ++row)
    for (int col = 0; col < width; ++col) frame(row, col) = rng.uniform();
  return frame;
}

FrameGrid apply_hotspot_distribution(FrameGrid frame, const Thresholds& t) {
  for (int row = 0; row < frame.rows(); ++row)
    for (int col = 0; col < frame.cols(); ++col) {
      double& v = frame(row, col);
      if (v > t.hot) v = 1.0;
      else if (v > t.warm) v = 0.5;
      else if (v > t.cool) v = 0.25;
      else v = 0.0;
    }
  return frame;
}

FrameGrid enforce_neighborhood(const FrameGrid& frame, double warm_threshold) {
  const int num_rows = static_cast<int>(frame.rows());
  const int num_cols = static_cast<int>(frame.cols());
  FrameGrid out = frame;
  // Hot cells are detected on the original frame; raises are applied to the
  // copy, so a neighbor raised to 0.5 never itself spreads warmth.
  for (int row = 0; row < num_rows; ++row)
    for (int col = 0; col < num_cols; ++col) {
      if (frame(row, col) != 1.0) continue;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int r = (row + dr + num_rows) % num_rows;
          const int c = (col + dc + num_cols) % num_cols;
          if (out(r, c) < warm_threshold) out(r, c) = 0.5;
        }
    }
  return out;
}

namespace {

void validate(const GeneratorConfig& c) {
  if (c.length < 1 || c.width < 1) throw std::invalid_argument("generator: dimensions must be >= 1");
  if (c.snapshots < 1) throw std::invalid_argument("generator: snapshots must be >= 1");
  if (c.p_alive < 0.0 || c.p_alive > 1.0) throw std::invalid_argument("generator: pAlive must be in [0,1]");
  const Thresholds& t = c.thresholds;
  const bool in_range = t.hot >= 0 && t.hot <= 1 && t.warm >= 0 && t.warm <= 1 && t.cool >= 0 && t.cool <= 1;
  if (!in_range || !(t.hot > t.warm && t.warm > t.cool))
    throw std::invalid_argument("generator: thresholds must satisfy 1 >= hot > warm > cool >= 0");
}

}  // namespace

HeatmapSeries generate_series(const GeneratorConfig& config) {
  validate(config);
  Rng rng(config.seed);
  HeatmapSeries series;
  series.frames.reserve(config.snapshots);

  switch (config.kind) {
    case GeneratorKind::LifeSpatial: {
      // The seed grid itself is never emitted: each snapshot evolves first.
      BinaryGrid grid = generate_life_grid(config.length, config.width, config.p_alive, rng);
      for (int s = 0; s < config.snapshots; ++s) {
        grid = evolve_grid(grid, conways_rule);
        series.frames.push_back(grid_to_heatmap_spatial(grid));
      }
      break;
    }
    case GeneratorKind::LifeTemporal: {
      // Snapshot s maps the pair (g_s, g_{s+1}) with g_0 the seed grid.
      BinaryGrid grid = generate_life_grid(config.length, config.width, config.p_alive, rng);
      for (int s = 0; s < config.snapshots; ++s) {
        BinaryGrid next = evolve_grid(grid, conways_rule);
        series.frames.push_back(grid_to_heatmap_temporal(grid, next));
        grid = std::move(next);
      }
      break;
    }
    case GeneratorKind::RandomWeighted:
    case GeneratorKind::RandomWeightedConstrained: {
      const bool constrained = config.kind == GeneratorKind::RandomWeightedConstrained;
      for (int s = 0; s < config.snapshots; ++s) {
        FrameGrid frame = apply_hotspot_distribution(
            generate_random_frame(config.length, config.width, rng), config.thresholds);
        if (constrained) frame = enforce_neighborhood(frame, config.thresholds.warm);
        series.frames.push_back(std::move(frame));
      }
      break;
    }
  }

  series.meta.length = config.length;
  series.meta.width = config.width;
  series.meta.snapshots = config.snapshots;
  series.meta.generator = to_string(config.kind);
  series.meta.seed = static_cast<std::int64_t>(config.seed);
  series.meta.rng_algorithm = Rng::kAlgorithm;
  return series;
}

}  // namespace gridwatch
