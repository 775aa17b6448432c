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
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "morphclass/config.hpp"
#include "morphclass/dataset.hpp"
#include "morphclass/trainer.hpp"

namespace mc {

/// Numeric parameter in [min, max] (max is the mutation scale), or a
/// categorical one when `choices` is non-empty.
struct ParamDesc {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  bool integer = false;
  std::vector<double> choices;

  bool categorical() const noexcept { return !choices.empty(); }
};

struct ParamSpace {
  std::vector<ParamDesc> params;
  std::size_t size() const noexcept { return params.size(); }
};

/// Genes stay real-valued; integer parameters are rounded when decoded, so
/// sub-unit mutation steps can accumulate.
using Genome = std::vector<double>;

struct Individual {
  Genome genes;
  double fitness = 0.0;
};

/// Decoded values: integers rounded, categoricals as the chosen value.
std::vector<double> decode(const ParamSpace& space, const Genome& genes);

Genome random_genome(const ParamSpace& space, std::mt19937_64& rng);

/// Each gene from `a` or `b` with probability 1/2.
Genome crossover(const Genome& a, const Genome& b, std::mt19937_64& rng);

/// Each numeric gene, with probability 0.6, moves by (u*max - max/2)/50 for
/// u uniform in [0, 1], then is clamped to [min, max]. Each categorical gene,
/// with probability 0.6, is redrawn uniformly.
void mutate(Genome& genes, const ParamSpace& space, std::mt19937_64& rng);

inline constexpr std::size_t kPopulationSize = 20;
inline constexpr double kMutationRate = 0.6;

struct TuneOptions {
  std::size_t generations = 500;
  /// Wall-clock budget; the search stops at whichever budget runs out first.
  std::optional<double> seconds;
  std::uint64_t seed = 1;
  /// Called after the initial population (generation 0) and after every
  /// generation.
  std::function<void(std::size_t generation, const std::vector<Individual>& population,
                     const Individual& best)>
      on_generation;
};

struct TuneResult {
  Individual best;
  std::vector<Individual> population;
  std::vector<double> best_history;  // best fitness after each generation, [0] = initial
  std::size_t generations = 0;
  std::size_t evaluations = 0;  // objective calls, cache hits excluded
};

using Objective = std::function<double(const std::vector<double>& decoded)>;

/// Elitist search over a population of 20: two uniformly drawn parents,
/// uniform crossover, mutation, and replacement of the worst member on strict
/// improvement. Fitness is cached per decoded parameter vector. A throwing
/// objective discards the child; a second failure in the same generation is
/// rethrown.
TuneResult ea_tune(const ParamSpace& space, const Objective& objective,
                   const TuneOptions& options);

/// Search space for a trainer. Bounds: k <= 64, gamma <= 16, tau <= 8,
/// sigma <= worst_case_steps of the default grid, precision scale in
/// [0.05, 1], beta over the 15 non-empty masks, t_err <= 32, q over AUTO and
/// 1..L, top_n <= C(p, 2).
ParamSpace trainer_space(const Dataset& dataset, const TrainerConfig& base);

/// Applies decoded values from trainer_space to a copy of `base`.
TrainerConfig apply_params(const ParamSpace& space, const std::vector<double>& decoded,
                           const TrainerConfig& base);

/// Key/value form of the tunable part of a config, as read by the CLI.
ConfigMap config_entries(const TrainerConfig& config);

/// Tunes `base` on `dataset` with folds-fold CV accuracy as the objective.
TuneResult tune_trainer(const Dataset& dataset, const TrainerConfig& base,
                        const TuneOptions& options, std::size_t folds, std::uint64_t fold_seed,
                        TrainerConfig* best_config);

}  // namespace mc
