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
#include <string>
#include <string_view>
#include <vector>

#include "morphclass/container.hpp"
#include "morphclass/dataset.hpp"
#include "morphclass/label_grid.hpp"
#include "morphclass/trainer.hpp"

namespace mc {

/// 2D model over attributes (first, second) of a binary problem.
struct PairModel {
  std::size_t first = 0;
  std::size_t second = 0;
  LabelGrid model;
  double cv_accuracy = 0.0;
  /// Out-of-fold predictions on the training instances, in instance order.
  /// Filled during training only; not serialized.
  std::vector<Label> oof;
};

/// One-vs-rest problem for `target`: label 1 = in-class.
struct BinaryEnsemble {
  Label target = kNoLabel;
  std::vector<PairModel> pairs;  // descending cv_accuracy
  std::size_t top_n = 1;
  /// Set when the training true-negative rate beats the true-positive rate:
  /// an in-class vote is then not trusted, an out-of-class vote is.
  bool invert = false;
  double cv_accuracy = 0.0;
  double tp_rate = 0.0;
  double tn_rate = 0.0;
};

struct MultiLabelModel {
  std::size_t num_classes = 0;
  std::size_t num_features = 0;
  std::size_t top_n = 0;
  std::vector<BinaryEnsemble> binaries;  // descending cv_accuracy
  Label fallback = kNoLabel;
  std::uint64_t dataset_hash = 0;
};

/// One model per attribute pair (C(p, 2) of them), each with its own grid.
/// Accuracies come from config.inner_folds-fold cross-validation on
/// `binary`. Sorted by descending accuracy, ties in pair order.
std::vector<PairModel> build_pair_models(const Dataset& binary, const TrainerConfig& config);

/// Majority of the top_n pair votes on `in_class` flags; ties are out.
bool majority_in(std::span<const bool> votes);

/// True when the top_n pair models vote in-class.
bool binary_vote(const BinaryEnsemble& ensemble, std::span<const double> features);

/// Binaries are consulted in order. A plain binary's in-vote returns its
/// target and an out-vote rules the target out; an inverted binary only
/// rules its target out. The first target not ruled out is returned, the
/// fallback when every target was ruled out.
Label multilabel_classify(const MultiLabelModel& model, std::span<const double> features);

/// Builds one binary ensemble per class of `dataset` (p >= 2).
MultiLabelModel train_multilabel(const Dataset& dataset, const TrainerConfig& config);

/// MCENSEMBLE text manifest with one MCMODEL container per pair model.
std::string write_ensemble(const MultiLabelModel& model, Codec codec);
MultiLabelModel read_ensemble(std::string_view text);

}  // namespace mc
