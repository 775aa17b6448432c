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

#include "morphclass/tune.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "morphclass/distance.hpp"
#include "morphclass/eval.hpp"
#include "text_util.hpp"

namespace mc {
namespace {

// Uniform in [0, 1) from the raw engine output; identical on every standard
// library, unlike the <random> distributions.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(unit(rng) * static_cast<double>(n));
}

}  // namespace

std::vector<double> decode(const ParamSpace& space, const Genome& genes) {
  std::vector<double> out(genes.size());
  for (std::size_t i = 0; i < genes.size(); ++i) {
    const ParamDesc& p = space.params[i];
    if (p.categorical()) {
      const auto idx = std::min(static_cast<std::size_t>(genes[i]), p.choices.size() - 1);
      out[i] = p.choices[idx];
    } else {
      out[i] = p.integer ? std::round(genes[i]) : genes[i];
    }
  }
  return out;
}

Genome random_genome(const ParamSpace& space, std::mt19937_64& rng) {
  Genome g(space.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const ParamDesc& p = space.params[i];
    g[i] = p.categorical() ? static_cast<double>(pick(rng, p.choices.size()))
                           : p.min + unit(rng) * (p.max - p.min);
  }
  return g;
}

Genome crossover(const Genome& a, const Genome& b, std::mt19937_64& rng) {
  Genome child(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) child[i] = (rng() >> 63) != 0 ? a[i] : b[i];
  return child;
}

void mutate(Genome& genes, const ParamSpace& space, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < genes.size(); ++i) {
    const ParamDesc& p = space.params[i];
    if (unit(rng) >= kMutationRate) continue;
    if (p.categorical()) {
      genes[i] = static_cast<double>(pick(rng, p.choices.size()));
    } else {
      genes[i] += (unit(rng) * p.max - p.max / 2.0) / 50.0;
      genes[i] = std::clamp(genes[i], p.min, p.max);
    }
  }
}

TuneResult ea_tune(const ParamSpace& space, const Objective& objective,
                   const TuneOptions& options) {
  if (space.size() == 0) throw InputError("empty parameter space");
  for (const ParamDesc& p : space.params) {
    if (!p.categorical() && !(p.max >= p.min)) {
      throw InputError("parameter '" + p.name + "' has an empty range");
    }
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  std::mt19937_64 rng(options.seed);
  std::map<std::vector<double>, double> cache;
  TuneResult result;

  auto evaluate = [&](const Genome& genes) {
    const auto key = decode(space, genes);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
    const double fitness = objective(key);
    ++result.evaluations;
    cache.emplace(key, fitness);
    return fitness;
  };
  // A failing evaluation is retried once with a fresh draw.
  auto attempt = [&](auto&& make) {
    for (int tries = 0;; ++tries) {
      Individual ind;
      ind.genes = make();
      try {
        ind.fitness = evaluate(ind.genes);
        return ind;
      } catch (const std::exception&) {
        if (tries >= 1) throw;
      }
    }
  };

  auto& pop = result.population;
  for (std::size_t i = 0; i < kPopulationSize; ++i) {
    pop.push_back(attempt([&] { return random_genome(space, rng); }));
  }
  auto best_of = [&] {
    return *std::max_element(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
      return a.fitness < b.fitness;
    });
  };
  result.best = best_of();
  result.best_history.push_back(result.best.fitness);
  if (options.on_generation) options.on_generation(0, pop, result.best);

  for (std::size_t gen = 1; gen <= options.generations; ++gen) {
    if (options.seconds &&
        std::chrono::duration<double>(Clock::now() - start).count() >= *options.seconds) {
      break;
    }
    const Individual child = attempt([&] {
      const Genome& a = pop[pick(rng, pop.size())].genes;
      const Genome& b = pop[pick(rng, pop.size())].genes;
      Genome g = crossover(a, b, rng);
      mutate(g, space, rng);
      return g;
    });
    auto worst = std::min_element(pop.begin(), pop.end(), [](const Individual& a,
                                                             const Individual& b) {
      return a.fitness < b.fitness;
    });
    if (child.fitness > worst->fitness) *worst = child;
    if (child.fitness > result.best.fitness) result.best = child;
    result.best_history.push_back(result.best.fitness);
    result.generations = gen;
    if (options.on_generation) options.on_generation(gen, pop, result.best);
  }
  return result;
}

ParamSpace trainer_space(const Dataset& dataset, const TrainerConfig& base) {
  const std::int64_t side = static_cast<std::int64_t>(kDefaultAxisCells) + 2 * base.grid.padding;
  const auto worst = static_cast<double>(worst_case_steps(side, side));
  ParamSpace space;
  auto numeric = [&](std::string name, double lo, double hi, bool integer) {
    space.params.push_back(ParamDesc{std::move(name), lo, hi, integer, {}});
  };
  const bool mknn = base.algo == Algorithm::kMkNN || base.algo == Algorithm::kEnsembleMkNN;
  if (mknn) {
    numeric("k", 1, 64, true);
    numeric("gamma", 0, 16, true);
    numeric("sigma", 1, worst, true);
  } else {
    numeric("gamma", 0, 16, true);
    numeric("tau", 0.05, 8, false);
    ParamDesc beta{"beta", 0, 0, true, {}};
    for (int m = 1; m <= 15; ++m) beta.choices.push_back(m);
    space.params.push_back(beta);
    numeric("sigma", 1, worst + 1, true);
    numeric("terr", 0, 32, true);
    const std::size_t classes = is_ensemble(base.algo) ? 2 : dataset.num_classes();
    ParamDesc q{"q", 0, 0, true, {0}};
    for (std::size_t l = 1; l <= classes; ++l) q.choices.push_back(static_cast<double>(l));
    space.params.push_back(q);
  }
  numeric("scale", 0.05, 1.0, false);
  if (is_ensemble(base.algo)) {
    const double pairs = static_cast<double>(dataset.dims() * (dataset.dims() - 1) / 2);
    numeric("topn", 1, std::max(1.0, pairs), true);
  }
  return space;
}

TrainerConfig apply_params(const ParamSpace& space, const std::vector<double>& decoded,
                           const TrainerConfig& base) {
  TrainerConfig c = base;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const std::string& name = space.params[i].name;
    const double v = decoded[i];
    if (name == "k") {
      c.mknn.k = static_cast<int>(v);
    } else if (name == "gamma") {
      c.mknn.gamma = static_cast<int>(v);
      c.mdc.gamma = static_cast<int>(v);
    } else if (name == "sigma") {
      c.mknn.sigma = static_cast<std::int64_t>(v);
      c.mdc.sigma = static_cast<std::int64_t>(v);
    } else if (name == "tau") {
      c.mdc.tau = v;
    } else if (name == "beta") {
      c.mdc.beta = static_cast<std::uint8_t>(v);
    } else if (name == "terr") {
      c.mdc.t_err = static_cast<int>(v);
    } else if (name == "q") {
      c.mdc.q = v == 0 ? std::nullopt : std::optional<Label>(static_cast<Label>(v));
    } else if (name == "scale") {
      c.grid.scale = v;
      c.grid.precision.clear();
    } else if (name == "topn") {
      c.top_n = static_cast<std::size_t>(v);
    } else {
      throw InputError("unknown tuning parameter '" + name + "'");
    }
  }
  return c;
}

ConfigMap config_entries(const TrainerConfig& config) {
  ConfigMap m;
  m["algo"] = algorithm_name(config.algo);
  m["mode"] = mode_name(config.grid.mode);
  m["padding"] = std::to_string(config.grid.padding);
  if (config.grid.precision.empty()) {
    m["scale"] = format_double(config.grid.scale);
  } else {
    std::string p;
    for (std::size_t j = 0; j < config.grid.precision.size(); ++j) {
      if (j > 0) p += ",";
      p += format_double(config.grid.precision[j]);
    }
    m["precision"] = p;
  }
  const bool mknn = config.algo == Algorithm::kMkNN || config.algo == Algorithm::kEnsembleMkNN;
  if (mknn) {
    m["k"] = std::to_string(config.mknn.k);
    m["gamma"] = std::to_string(config.mknn.gamma);
    if (config.mknn.sigma) m["sigma"] = std::to_string(*config.mknn.sigma);
  } else {
    m["gamma"] = std::to_string(config.mdc.gamma);
    m["tau"] = format_double(config.mdc.tau);
    m["beta"] = format_beta(config.mdc.beta);
    if (config.mdc.sigma) m["sigma"] = std::to_string(*config.mdc.sigma);
    m["terr"] = std::to_string(config.mdc.t_err);
    m["q"] = config.mdc.q ? std::to_string(*config.mdc.q) : "auto";
  }
  if (config.top_n) m["topn"] = std::to_string(*config.top_n);
  m["seed"] = std::to_string(config.seed);
  return m;
}

TuneResult tune_trainer(const Dataset& dataset, const TrainerConfig& base,
                        const TuneOptions& options, std::size_t folds, std::uint64_t fold_seed,
                        TrainerConfig* best_config) {
  const ParamSpace space = trainer_space(dataset, base);
  const FoldPlan plan = kfold(dataset, folds, fold_seed);
  const Objective objective = [&](const std::vector<double>& decoded) {
    const TrainerConfig c = apply_params(space, decoded, base);
    const auto predicted = cross_val_predict(dataset, c, plan);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < dataset.size(); ++i) hits += predicted[i] == dataset[i].label;
    return static_cast<double>(hits) / static_cast<double>(dataset.size());
  };
  TuneResult result = ea_tune(space, objective, options);
  if (best_config != nullptr) {
    *best_config = apply_params(space, decode(space, result.best.genes), base);
  }
  return result;
}

}  // namespace mc
