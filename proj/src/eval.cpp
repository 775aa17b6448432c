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

#include "morphclass/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>

#include "morphclass/distance.hpp"
#include "morphclass/log.hpp"
#include "morphclass/parallel.hpp"
#include "text_util.hpp"

namespace mc {

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(folds, 0);
  for (std::size_t f : fold_of) ++sizes[f];
  return sizes;
}

FoldPlan kfold(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw InputError("need at least 2 folds");
  if (dataset.size() < k) {
    throw InputError("cannot split " + std::to_string(dataset.size()) + " instances into " +
                     std::to_string(k) + " folds");
  }
  FoldPlan plan;
  plan.folds = k;
  plan.seed = seed;
  plan.fold_of.assign(dataset.size(), 0);
  std::vector<std::vector<std::size_t>> by_class(dataset.num_classes());
  for (std::size_t i = 0; i < dataset.size(); ++i) by_class[dataset[i].label - 1].push_back(i);
  std::mt19937_64 rng(seed);
  std::size_t next = 0;
  for (std::size_t l = 0; l < by_class.size(); ++l) {
    auto& members = by_class[l];
    if (!members.empty() && members.size() < k) {
      warn("class '" + dataset.class_names()[l] + "' has " + std::to_string(members.size()) +
           " instances for " + std::to_string(k) + " folds; some folds get none");
    }
    // Fisher-Yates with the raw engine output keeps plans identical across
    // standard libraries.
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng() % i]);
    }
    for (std::size_t idx : members) plan.fold_of[idx] = next++ % k;
  }
  return plan;
}

Metrics compute_metrics(std::span<const Label> predicted, std::span<const Label> truth,
                        std::size_t num_classes, Label positive) {
  if (predicted.size() != truth.size()) throw InputError("prediction and truth lengths differ");
  Metrics m;
  m.n = truth.size();
  m.confusion.assign(num_classes, std::vector<std::size_t>(num_classes, 0));
  std::size_t pos = 0, neg = 0, tp = 0, tn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const Label t = truth[i];
    const Label p = predicted[i];
    if (t < 1 || t > num_classes || p < 1 || p > num_classes) {
      throw InputError("label outside 1.." + std::to_string(num_classes));
    }
    ++m.confusion[t - 1][p - 1];
    m.correct += t == p;
    if (t == positive) {
      ++pos;
      tp += p == positive;
    } else {
      ++neg;
      tn += p != positive;
    }
  }
  m.accuracy = m.n > 0 ? static_cast<double>(m.correct) / static_cast<double>(m.n) : 0.0;
  if (pos > 0) m.tp_rate = static_cast<double>(tp) / static_cast<double>(pos);
  if (neg > 0) m.tn_rate = static_cast<double>(tn) / static_cast<double>(neg);
  return m;
}

Label brute_knn(const Dataset& train, std::span<const double> query, int k,
                const GridSpec& spec, CountMode mode) {
  if (train.empty()) throw InputError("empty training set");
  if (spec.rank() != 2) throw InputError("brute_knn needs a 2D grid");
  if (k < 1) throw InputError("k must be at least 1");
  // (distance, label) -> count
  std::map<std::pair<std::int64_t, Label>, std::int64_t> seen;
  std::map<std::pair<std::size_t, Label>, bool> dedup;
  const CellCoords q = cell_of(query, spec);
  for (const Instance& inst : train.instances()) {
    const CellCoords c = cell_of(inst.features, spec);
    if (mode == CountMode::kDeduplicated) {
      const auto key = std::make_pair(linear_index(c.coords, spec), inst.label);
      if (dedup[key]) continue;
      dedup[key] = true;
    }
    const std::int64_t d = dt(Offset{c.coords[0] - q.coords[0], c.coords[1] - q.coords[1]});
    ++seen[{d, inst.label}];
  }
  std::vector<std::int64_t> votes(train.num_classes(), 0);
  std::int64_t absorbed = 0;
  auto it = seen.begin();
  while (it != seen.end() && absorbed < k) {
    const std::int64_t d = it->first.first;
    for (; it != seen.end() && it->first.first == d; ++it) {
      votes[it->first.second - 1] += it->second;
      absorbed += it->second;
    }
  }
  std::size_t best = 0;
  for (std::size_t l = 1; l < votes.size(); ++l) {
    if (votes[l] > votes[best]) best = l;
  }
  return static_cast<Label>(best + 1);
}

Label FittedModel::classify(std::span<const double> features) const {
  if (is_ensemble()) return multilabel_classify(ensemble(), features);
  return grid().classify(features);
}

std::size_t FittedModel::num_features() const {
  return is_ensemble() ? ensemble().num_features : grid().spec().rank();
}

FittedModel fit_model(const Dataset& dataset, const TrainerConfig& config) {
  if (is_ensemble(config.algo)) return FittedModel(train_multilabel(dataset, config));
  return FittedModel(fit_grid(dataset, config));
}

std::vector<Label> cross_val_predict(const Dataset& dataset, const TrainerConfig& config,
                                     const FoldPlan& plan, double* train_seconds,
                                     double* test_seconds) {
  if (plan.fold_of.size() != dataset.size()) throw InputError("fold plan does not match dataset");
  using Clock = std::chrono::steady_clock;
  std::vector<Label> predicted(dataset.size(), kNoLabel);
  std::vector<double> train_time(plan.folds, 0.0), test_time(plan.folds, 0.0);
  parallel_for(plan.folds, [&](std::size_t f) {
    const auto train_idx = plan.train_indices(f);
    const auto test_idx = plan.test_indices(f);
    if (test_idx.empty()) return;
    const auto t0 = Clock::now();
    const FittedModel model = fit_model(dataset.subset(train_idx), config);
    const auto t1 = Clock::now();
    for (std::size_t i : test_idx) predicted[i] = model.classify(dataset[i].features);
    const auto t2 = Clock::now();
    train_time[f] = std::chrono::duration<double>(t1 - t0).count();
    test_time[f] = std::chrono::duration<double>(t2 - t1).count();
  });
  if (train_seconds != nullptr) {
    *train_seconds = 0.0;
    for (double t : train_time) *train_seconds += t;
  }
  if (test_seconds != nullptr) {
    *test_seconds = 0.0;
    for (double t : test_time) *test_seconds += t;
  }
  return predicted;
}

double cv_accuracy(const Dataset& dataset, const TrainerConfig& config, std::size_t folds,
                   std::uint64_t seed) {
  const FoldPlan plan = kfold(dataset, folds, seed);
  const auto predicted = cross_val_predict(dataset, config, plan);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) hits += predicted[i] == dataset[i].label;
  return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

std::string classifier_name(const TrainerConfig& config) {
  const bool mknn =
      config.algo == Algorithm::kMkNN || config.algo == Algorithm::kEnsembleMkNN;
  std::string name = mknn ? "MkNN" : "MDC";
  if (config.grid.mode == CountMode::kMultiset) name += "_Rep";
  return name;
}

namespace {

std::string percent(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * *v);
  return buf;
}

std::string fixed(double v, const char* format) {
  char buf[32];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

std::string ExperimentResult::row() const {
  return classifier + " " + dataset + " " + percent(metrics.accuracy) + " " +
         percent(metrics.tp_rate) + " " + percent(metrics.tn_rate);
}

std::string ExperimentResult::csv() const {
  return classifier + "," + dataset + "," + percent(metrics.accuracy) + "," +
         percent(metrics.tp_rate) + "," + percent(metrics.tn_rate) + "," +
         fixed(train_seconds, "%.4f") + "," + fixed(test_seconds, "%.4f");
}

const char* ExperimentResult::csv_header() {
  return "classifier,dataset,acc,tp,tn,train_s,test_s";
}

ExperimentResult run_experiment(const Dataset& dataset, const TrainerConfig& config,
                                const FoldPlan& plan, const std::string& dataset_name) {
  ExperimentResult r;
  r.classifier = classifier_name(config);
  r.dataset = dataset_name;
  const auto predicted =
      cross_val_predict(dataset, config, plan, &r.train_seconds, &r.test_seconds);
  std::vector<Label> truth(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) truth[i] = dataset[i].label;
  r.metrics = compute_metrics(predicted, truth, dataset.num_classes());
  return r;
}

namespace {

std::size_t attribute_index(const Dataset& ds, std::string_view name) {
  const auto& names = ds.attribute_names();
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (to_lower(names[j]) == to_lower(name)) return j;
  }
  throw InputError("dataset has no attribute '" + std::string(name) + "'");
}

Label class_index(const Dataset& ds, std::string_view name) {
  const auto& names = ds.class_names();
  for (std::size_t l = 0; l < names.size(); ++l) {
    if (to_lower(names[l]) == to_lower(name)) return static_cast<Label>(l + 1);
  }
  throw InputError("dataset has no class '" + std::string(name) + "'");
}

Dataset keep(const Dataset& ds, std::string_view a, std::string_view b) {
  const std::size_t axes[] = {attribute_index(ds, a), attribute_index(ds, b)};
  return select_attributes(ds, axes);
}

}  // namespace

Dataset apply_preset(const Dataset& raw, const std::string& preset) {
  const std::string name = to_lower(preset);
  if (name.empty() || name == "none" || name == "iris" || name == "haberman") return raw;
  if (name == "iris2d") {
    return keep(drop_class(raw, class_index(raw, "Iris-setosa")), "sepallength", "petallength");
  }
  if (name == "diabetes2d") return keep(raw, "plas", "insu");
  throw InputError("unknown preset '" + preset +
                   "' (expected iris2d, iris, diabetes2d, haberman or none)");
}

}  // namespace mc
