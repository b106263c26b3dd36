#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gridwatch {

// Dense (row, col)-indexed grid; entry (i, j) is grid cell row i, column j.
template <class Scalar>
using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using FrameGrid = Grid<double>;        // intensities in [0,1]
using BinaryGrid = Grid<std::uint8_t>; // alive/dead cells, exactly 0 or 1

struct HeatmapMeta {
  int length = 0;  // rows
  int width = 0;   // cols
  int snapshots = 0;
  std::string generator;  // kind string; empty for datasets of unknown origin
  std::optional<std::int64_t> seed;
  std::string rng_algorithm;  // empty when the data did not come from our generator
};

struct HeatmapSeries {
  std::vector<FrameGrid> frames;
  HeatmapMeta meta;
};

}  // namespace gridwatch
