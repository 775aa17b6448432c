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

#include "morphclass/trainer.hpp"

namespace mc {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "mknn") return Algorithm::kMkNN;
  if (name == "mdc") return Algorithm::kMDC;
  if (name == "ensemble-mknn") return Algorithm::kEnsembleMkNN;
  if (name == "ensemble-mdc") return Algorithm::kEnsembleMDC;
  throw InputError("unknown algorithm '" + std::string(name) +
                   "' (expected mknn, mdc, ensemble-mknn or ensemble-mdc)");
}

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kMkNN: return "mknn";
    case Algorithm::kMDC: return "mdc";
    case Algorithm::kEnsembleMkNN: return "ensemble-mknn";
    case Algorithm::kEnsembleMDC: return "ensemble-mdc";
  }
  return "mknn";
}

bool is_ensemble(Algorithm algo) noexcept {
  return algo == Algorithm::kEnsembleMkNN || algo == Algorithm::kEnsembleMDC;
}

Algorithm base_algorithm(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::kEnsembleMkNN: return Algorithm::kMkNN;
    case Algorithm::kEnsembleMDC: return Algorithm::kMDC;
    default: return algo;
  }
}

CountMode parse_mode(std::string_view name) {
  if (name == "multiset" || name == "rep") return CountMode::kMultiset;
  if (name == "dedup" || name == "deduplicated") return CountMode::kDeduplicated;
  throw InputError("unknown mode '" + std::string(name) + "' (expected multiset or dedup)");
}

const char* mode_name(CountMode mode) {
  return mode == CountMode::kMultiset ? "multiset" : "dedup";
}

GridSpec make_spec(const Dataset& dataset, const GridOptions& options) {
  if (!options.precision.empty()) {
    if (options.precision.size() == 1) {
      const std::vector<double> every(dataset.dims(), options.precision.front());
      return build_spec(dataset, every, options.padding);
    }
    if (options.precision.size() != dataset.dims()) {
      throw InputError("precision has " + std::to_string(options.precision.size()) +
                       " entries for " + std::to_string(dataset.dims()) + " attributes");
    }
    return build_spec(dataset, options.precision, options.padding);
  }
  if (!(options.scale > 0.0)) throw InputError("precision scale must be positive");
  const auto precision = default_precision(dataset, options.scale);
  return build_spec(dataset, precision, options.padding);
}

LabelGrid fit_grid(const Dataset& dataset, const TrainerConfig& config) {
  if (dataset.dims() != 2) {
    throw InputError("2D trainer needs 2 attributes, got " + std::to_string(dataset.dims()));
  }
  const GridSpec spec = make_spec(dataset, config.grid);
  const CountGrid grid = discretize(dataset, spec, config.grid.mode);
  switch (config.algo) {
    case Algorithm::kMkNN:
    case Algorithm::kEnsembleMkNN:
      return train_mknn(grid, config.mknn);
    case Algorithm::kMDC:
    case Algorithm::kEnsembleMDC:
      return train_mdc(grid, config.mdc);
  }
  throw Error("unreachable");
}

}  // namespace mc
