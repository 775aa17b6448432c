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

#include "morphclass/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "morphclass/log.hpp"

namespace mc {

namespace {
constexpr std::size_t kMaxCells = std::size_t{1} << 30;
}

std::size_t GridSpec::cell_count() const noexcept {
  std::size_t n = dims.empty() ? 0 : 1;
  for (auto d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

double round_half_away(double value) noexcept { return std::round(value); }

std::vector<double> default_precision(const Dataset& dataset, double scale) {
  if (dataset.empty()) throw InputError("empty dataset");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InputError("precision scale must be positive");
  }
  std::vector<double> precision(dataset.dims());
  for (std::size_t j = 0; j < dataset.dims(); ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Instance& inst : dataset.instances()) {
      lo = std::min(lo, inst.features[j]);
      hi = std::max(hi, inst.features[j]);
    }
    precision[j] = hi > lo ? scale * (kDefaultAxisCells - 1.0) / (hi - lo) : scale;
  }
  return precision;
}

GridSpec build_spec(const Dataset& dataset, std::span<const double> precision,
                    int padding) {
  if (dataset.empty()) throw InputError("empty dataset");
  if (precision.size() != dataset.dims()) {
    throw InputError("precision has " + std::to_string(precision.size()) +
                     " entries, dataset has " + std::to_string(dataset.dims()) +
                     " attributes");
  }
  for (double v : precision) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("precision entries must be positive and finite");
    }
  }
  if (padding < 0) throw InputError("padding must be non-negative");

  GridSpec spec;
  spec.precision.assign(precision.begin(), precision.end());
  std::size_t cells = 1;
  for (std::size_t j = 0; j < dataset.dims(); ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Instance& inst : dataset.instances()) {
      const double r = round_half_away(precision[j] * inst.features[j]);
      if (!std::isfinite(r) || std::abs(r) > 1e15) {
        throw InputError("non-finite value");
      }
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    const auto min_cell = static_cast<std::int64_t>(lo);
    const auto max_cell = static_cast<std::int64_t>(hi);
    const std::int64_t dim = max_cell - min_cell + 1 + 2 * std::int64_t{padding};
    if (max_cell == min_cell) {
      warn("attribute '" + dataset.attribute_names()[j] +
           "' is constant; its axis has " + std::to_string(dim) + " cells");
    }
    if (dim <= 0 || static_cast<std::size_t>(dim) > kMaxCells ||
        cells > kMaxCells / static_cast<std::size_t>(dim)) {
      throw InputError("grid too large; lower the precision");
    }
    cells *= static_cast<std::size_t>(dim);
    spec.origin.push_back(min_cell - padding);
    spec.dims.push_back(dim);
  }
  return spec;
}

CellCoords cell_of(std::span<const double> features, const GridSpec& spec) {
  if (features.size() != spec.rank()) {
    throw InputError("expected " + std::to_string(spec.rank()) +
                     " features, got " + std::to_string(features.size()));
  }
  CellCoords out;
  out.coords.resize(spec.rank());
  for (std::size_t j = 0; j < spec.rank(); ++j) {
    if (!std::isfinite(features[j])) throw InputError("non-finite value");
    const double r =
        round_half_away(spec.precision[j] * features[j]) -
        static_cast<double>(spec.origin[j]);
    const double top = static_cast<double>(spec.dims[j] - 1);
    if (r < 0.0 || r > top) out.clamped = true;
    out.coords[j] = static_cast<std::int64_t>(std::clamp(r, 0.0, top));
  }
  return out;
}

std::size_t linear_index(std::span<const std::int64_t> coords,
                         const GridSpec& spec) {
  std::size_t index = 0;
  std::size_t stride = 1;
  for (std::size_t j = 0; j < spec.rank(); ++j) {
    index += static_cast<std::size_t>(coords[j]) * stride;
    stride *= static_cast<std::size_t>(spec.dims[j]);
  }
  return index;
}

CountGrid::CountGrid(GridSpec spec, std::size_t num_classes, CountMode mode)
    : spec_(std::move(spec)),
      num_classes_(num_classes),
      mode_(mode),
      cell_count_(spec_.cell_count()),
      counts_(cell_count_ * num_classes, 0) {
  if (num_classes == 0) throw InputError("count grid needs at least one class");
}

std::uint32_t CountGrid::cell_total(std::size_t cell) const {
  std::uint32_t sum = 0;
  for (std::size_t l = 0; l < num_classes_; ++l) sum += counts_[cell * num_classes_ + l];
  return sum;
}

std::vector<std::uint64_t> CountGrid::class_totals() const {
  std::vector<std::uint64_t> totals(num_classes_, 0);
  for (std::size_t c = 0; c < cell_count_; ++c) {
    for (std::size_t l = 0; l < num_classes_; ++l) {
      totals[l] += counts_[c * num_classes_ + l];
    }
  }
  return totals;
}

void CountGrid::add(std::size_t cell, Label label) {
  std::uint32_t& slot = counts_[cell * num_classes_ + (label - 1)];
  if (mode_ == CountMode::kDeduplicated) {
    if (slot == 0) {
      slot = 1;
      ++total_;
    }
    return;
  }
  ++slot;
  ++total_;
}

CountGrid discretize(const Dataset& dataset, const GridSpec& spec,
                     CountMode mode) {
  if (spec.rank() != dataset.dims()) {
    throw InputError("grid rank does not match dataset dimension");
  }
  CountGrid grid(spec, dataset.num_classes(), mode);
  for (const Instance& inst : dataset.instances()) {
    const CellCoords cell = cell_of(inst.features, spec);
    if (cell.clamped) grid.note_clamp();
    grid.add(linear_index(cell.coords, spec), inst.label);
  }
  if (grid.clamp_events() > 0) {
    warn(std::to_string(grid.clamp_events()) +
         " instance(s) fell outside the grid and were clamped");
  }
  return grid;
}

Dataset project(const Dataset& dataset, std::size_t first, std::size_t second) {
  if (first == second) throw InputError("projection axes must differ");
  if (first >= dataset.dims() || second >= dataset.dims()) {
    throw InputError("projection axis out of range");
  }
  const std::size_t axes[] = {first, second};
  return select_attributes(dataset, axes);
}

std::vector<std::pair<std::size_t, std::size_t>> axis_pairs(std::size_t p) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

}  // namespace mc
