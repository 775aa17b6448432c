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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "morphclass/dataset.hpp"
#include "morphclass/ensemble.hpp"
#include "morphclass/label_grid.hpp"
#include "morphclass/trainer.hpp"

namespace mc {

inline constexpr std::uint64_t kDefaultFoldSeed = 42;

/// Fold assignment per instance.
struct FoldPlan {
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> fold_of;

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;
  std::vector<std::size_t> fold_sizes() const;
};

/// Stratified plan: each class is shuffled, then the instances of all
/// classes are dealt round-robin to the folds, continuing from one class to
/// the next so fold sizes differ by at most one. Warns when a class has fewer
/// instances than folds. Throws InputError when |X| < k or k < 2.
FoldPlan kfold(const Dataset& dataset, std::size_t k = 10,
               std::uint64_t seed = kDefaultFoldSeed);

struct Metrics {
  std::size_t n = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  /// Absent when the truth holds no positives (negatives).
  std::optional<double> tp_rate;
  std::optional<double> tn_rate;
  /// confusion[truth - 1][predicted - 1].
  std::vector<std::vector<std::size_t>> confusion;
};

Metrics compute_metrics(std::span<const Label> predicted, std::span<const Label> truth,
                        std::size_t num_classes, Label positive = 1);

/// Reference classifier over grid cells: training cells are sorted by
/// staircase distance to the query's cell and whole distance groups are
/// absorbed until at least k instances are covered; the majority wins, ties
/// to the smaller label.
Label brute_knn(const Dataset& train, std::span<const double> query, int k,
                const GridSpec& spec, CountMode mode = CountMode::kMultiset);

/// A trained model of any algorithm.
class FittedModel {
 public:
  FittedModel() = default;
  explicit FittedModel(LabelGrid grid) : model_(std::move(grid)) {}
  explicit FittedModel(MultiLabelModel ensemble) : model_(std::move(ensemble)) {}

  Label classify(std::span<const double> features) const;
  bool is_ensemble() const noexcept { return model_.index() == 1; }
  const LabelGrid& grid() const { return std::get<0>(model_); }
  const MultiLabelModel& ensemble() const { return std::get<1>(model_); }
  std::size_t num_features() const;

 private:
  std::variant<LabelGrid, MultiLabelModel> model_;
};

FittedModel fit_model(const Dataset& dataset, const TrainerConfig& config);

/// Out-of-fold predictions in instance order. Folds run concurrently.
std::vector<Label> cross_val_predict(const Dataset& dataset, const TrainerConfig& config,
                                     const FoldPlan& plan, double* train_seconds = nullptr,
                                     double* test_seconds = nullptr);

/// Accuracy of cross_val_predict under kfold(dataset, folds, seed).
double cv_accuracy(const Dataset& dataset, const TrainerConfig& config,
                   std::size_t folds = 10, std::uint64_t seed = kDefaultFoldSeed);

/// "MkNN" / "MDC", with "_Rep" for multiset grids.
std::string classifier_name(const TrainerConfig& config);

struct ExperimentResult {
  std::string classifier;
  std::string dataset;
  Metrics metrics;
  double train_seconds = 0.0;
  double test_seconds = 0.0;

  /// "MkNN_Rep iris2d 95.0 98.0 92.0" (percentages; '-' for absent rates).
  std::string row() const;
  /// classifier,dataset,acc,tp,tn,train_s,test_s
  std::string csv() const;
  static const char* csv_header();
};

/// Pooled (micro-averaged) cross-validation metrics.
ExperimentResult run_experiment(const Dataset& dataset, const TrainerConfig& config,
                                const FoldPlan& plan, const std::string& dataset_name);

/// Named preprocessing of the bundled datasets:
///   iris2d      versicolor vs virginica on (sepallength, petallength)
///   iris        all classes and attributes
///   diabetes2d  (plas, insu)
///   haberman    all attributes
/// Throws InputError for an unknown name or missing attributes.
Dataset apply_preset(const Dataset& raw, const std::string& preset);

}  // namespace mc
