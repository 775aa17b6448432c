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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphclass/common.hpp"

namespace mc {

struct Instance {
  std::vector<double> features;
  Label label = kNoLabel;
};

/// Labelled p-dimensional instances with labels in 1..L. Duplicates are kept
/// (multiset semantics).
class Dataset {
 public:
  Dataset() = default;

  /// Validates: p >= 1 and uniform, labels in 1..L, every feature finite.
  /// When `require_all_classes` is set, each class must have an instance.
  Dataset(std::vector<std::string> attribute_names,
          std::vector<std::string> class_names, std::vector<Instance> instances,
          bool require_all_classes = true);

  std::size_t size() const noexcept { return instances_.size(); }
  bool empty() const noexcept { return instances_.empty(); }
  std::size_t dims() const noexcept { return attribute_names_.size(); }
  std::size_t num_classes() const noexcept { return class_names_.size(); }

  const std::vector<Instance>& instances() const noexcept { return instances_; }
  const Instance& operator[](std::size_t i) const { return instances_[i]; }
  const std::vector<std::string>& attribute_names() const noexcept {
    return attribute_names_;
  }
  const std::vector<std::string>& class_names() const noexcept {
    return class_names_;
  }

  /// counts[l - 1] = number of instances with label l.
  std::vector<std::size_t> class_counts() const;

  /// Instances at `indices`, in that order. Keeps the class list even when a
  /// class ends up with no instances.
  Dataset subset(std::span<const std::size_t> indices) const;

  /// FNV-1a 64 over attribute names, class names, features and labels.
  std::uint64_t fingerprint() const;

 private:
  std::vector<std::string> attribute_names_;
  std::vector<std::string> class_names_;
  std::vector<Instance> instances_;
};

/// CSV: header row of attribute names, last column is the class label (text,
/// mapped to 1..L in order of first appearance).
Dataset parse_csv(std::string_view text);

/// ARFF subset: numeric attributes plus one trailing nominal class attribute.
/// Class ids follow the nominal declaration order.
Dataset parse_arff(std::string_view text);

/// Dispatches on extension (.arff, otherwise CSV). Throws InputError when the
/// file cannot be read.
Dataset load_dataset(const std::string& path);

/// Writes the CSV format accepted by parse_csv.
void write_csv(std::ostream& out, const Dataset& dataset);

/// Removes every instance of `label` and renumbers the remaining classes.
Dataset drop_class(const Dataset& dataset, Label label);

/// Keeps only the listed attributes (in the given order).
Dataset select_attributes(const Dataset& dataset,
                          std::span<const std::size_t> attributes);

/// Relabels to the one-vs-rest problem of `target`: label 1 = in-class,
/// label 2 = every other class.
Dataset binarize(const Dataset& dataset, Label target);

}  // namespace mc
