// Copyright 2026 The morphclass Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "morphclass/common.hpp"
#include "morphclass/dataset.hpp"

namespace mc {

/// Maps feature space onto an integer grid: cell = round(precision * x) - origin.
struct GridSpec {
  std::vector<double> precision;     // cells per feature unit, one per axis
  std::vector<std::int64_t> origin;  // smallest rounded coordinate per axis
  std::vector<std::int64_t> dims;    // cells per axis

  std::size_t rank() const noexcept { return dims.size(); }
  std::size_t cell_count() const noexcept;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline constexpr int kDefaultPadding = 2;
inline constexpr double kDefaultAxisCells = 64.0;

/// Round half away from zero.
double round_half_away(double value) noexcept;

/// Precision giving each axis kDefaultAxisCells cells over the data range,
/// times `scale`. Constant axes get precision 1 (times scale).
std::vector<double> default_precision(const Dataset& dataset, double scale = 1.0);

/// Bounds from the data extremes plus `padding` cells on each side.
/// A constant attribute yields dims = 1 + 2 * padding on that axis.
GridSpec build_spec(const Dataset& dataset, std::span<const double> precision,
                    int padding = kDefaultPadding);

struct CellCoords {
  std::vector<std::int64_t> coords;
  bool clamped = false;
};

/// Cell of `features`; out-of-grid coordinates are clamped to the boundary
/// cell and flagged.
CellCoords cell_of(std::span<const double> features, const GridSpec& spec);

/// Row-major linear index with axis 0 varying fastest.
std::size_t linear_index(std::span<const std::int64_t> coords,
                         const GridSpec& spec);

enum class CountMode { kMultiset, kDeduplicated };

/// Per-cell, per-class instance counts.
class CountGrid {
 public:
  CountGrid() = default;
  CountGrid(GridSpec spec, std::size_t num_classes, CountMode mode);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  CountMode mode() const noexcept { return mode_; }
  std::size_t cell_count() const noexcept { return cell_count_; }

  std::uint32_t count(std::size_t cell, Label label) const {
    return counts_[cell * num_classes_ + (label - 1)];
  }
  std::uint32_t cell_total(std::size_t cell) const;
  std::uint64_t total() const noexcept { return total_; }

  /// Counts laid out cell-major, class-minor.
  std::span<const std::uint32_t> raw() const noexcept { return counts_; }

  /// Number of instances that were clamped into the grid.
  std::size_t clamp_events() const noexcept { return clamp_events_; }

  /// Per-class totals (index l - 1).
  std::vector<std::uint64_t> class_totals() const;

  void add(std::size_t cell, Label label);
  void note_clamp() noexcept { ++clamp_events_; }

  friend bool operator==(const CountGrid&, const CountGrid&) = default;

 private:
  GridSpec spec_;
  std::size_t num_classes_ = 0;
  CountMode mode_ = CountMode::kMultiset;
  std::size_t cell_count_ = 0;
  std::vector<std::uint32_t> counts_;
  std::uint64_t total_ = 0;
  std::size_t clamp_events_ = 0;
};

CountGrid discretize(const Dataset& dataset, const GridSpec& spec,
                     CountMode mode = CountMode::kMultiset);

/// Two-attribute view of `dataset`, preserving instance order and labels.
Dataset project(const Dataset& dataset, std::size_t first, std::size_t second);

/// All unordered attribute pairs (a < b) in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> axis_pairs(std::size_t p);

}  // namespace mc
