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
#include <string>
#include <string_view>
#include <vector>

#include "morphclass/dataset.hpp"
#include "morphclass/grid.hpp"
#include "morphclass/label_grid.hpp"
#include "morphclass/mdc.hpp"
#include "morphclass/mknn.hpp"

namespace mc {

enum class Algorithm { kMkNN, kMDC, kEnsembleMkNN, kEnsembleMDC };

/// "mknn", "mdc", "ensemble-mknn" or "ensemble-mdc".
Algorithm parse_algorithm(std::string_view name);
const char* algorithm_name(Algorithm algo);
bool is_ensemble(Algorithm algo) noexcept;
/// The 2D algorithm an ensemble is built from (identity for 2D ones).
Algorithm base_algorithm(Algorithm algo) noexcept;

struct GridOptions {
  CountMode mode = CountMode::kMultiset;
  /// Multiplies the default precision (64 cells across each axis).
  double scale = 1.0;
  /// Explicit precision per axis, or one value for every axis; overrides
  /// `scale` when set.
  std::vector<double> precision;
  int padding = kDefaultPadding;
};

CountMode parse_mode(std::string_view name);
const char* mode_name(CountMode mode);

struct TrainerConfig {
  Algorithm algo = Algorithm::kMkNN;
  GridOptions grid;
  MkNNParams mknn;
  MDCParams mdc;
  /// Voting pair models per binary problem; unset means all of them.
  std::optional<std::size_t> top_n;
  /// Folds used for the pair-model accuracies inside an ensemble.
  std::size_t inner_folds = 10;
  std::uint64_t seed = 1;
};

/// Grid spec for a 2D training set under `options`.
GridSpec make_spec(const Dataset& dataset, const GridOptions& options);

/// Trains the 2D model named by config.algo (ensembles use their base
/// algorithm). `dataset` must have two attributes.
LabelGrid fit_grid(const Dataset& dataset, const TrainerConfig& config);

}  // namespace mc
