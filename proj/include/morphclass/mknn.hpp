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
#include <optional>

#include "morphclass/grid.hpp"
#include "morphclass/label_grid.hpp"

namespace mc {

struct MkNNParams {
  int k = 1;      // instances to visit before voting
  int gamma = 0;  // weight of the cell's own instances
  /// Largest shell index absorbed. Unset means worst_case_steps(dims).
  std::optional<std::int64_t> sigma;
};

struct MkNNStats {
  std::size_t unconverged_cells = 0;  // cells that stopped on sigma
  std::size_t fallback_cells = 0;     // cells labelled by the global fallback
  std::int64_t max_shell = 0;         // largest shell index absorbed
  std::int64_t sigma = 0;             // effective sigma
  bool converged() const noexcept { return unconverged_cells == 0; }
};

/// Each cell absorbs whole staircase shells until it has seen k training
/// instances (or the shell index passes sigma) and takes the majority label.
/// Counters start at gamma * count(cell, l). Ties go to the smallest label;
/// a cell with all-zero counters takes the most frequent training class.
LabelGrid train_mknn(const CountGrid& grid, const MkNNParams& params,
                     MkNNStats* stats = nullptr);

/// Whether every cell saw at least k instances before sigma cut it off.
bool convergence_reached(const CountGrid& grid, const MkNNParams& params);

/// Most frequent class in the grid, smallest label on ties.
Label majority_class(const CountGrid& grid);

}  // namespace mc
