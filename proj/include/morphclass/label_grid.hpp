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
#include <span>
#include <string>
#include <vector>

#include "morphclass/common.hpp"
#include "morphclass/grid.hpp"

namespace mc {

/// A trained morphological classifier: one label per grid cell.
class LabelGrid {
 public:
  LabelGrid() = default;
  LabelGrid(GridSpec spec, std::size_t num_classes, std::vector<Label> labels,
            std::string provenance = {});

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t width() const noexcept { return static_cast<std::size_t>(spec_.dims[0]); }
  std::size_t height() const noexcept {
    return spec_.rank() > 1 ? static_cast<std::size_t>(spec_.dims[1]) : 1;
  }
  std::span<const Label> labels() const noexcept { return labels_; }
  Label at(std::size_t cell) const { return labels_[cell]; }
  Label at(std::size_t x, std::size_t y) const { return labels_[y * width() + x]; }

  const std::string& provenance() const noexcept { return provenance_; }

  /// True when every cell holds a label in 1..L.
  bool fully_covered() const noexcept;

  /// Label of the (clamped) cell containing `features`. Throws InputError on
  /// a non-finite feature or a dimension mismatch.
  Label classify(std::span<const double> features) const;

  /// Classifies `n` 2D points given as separate coordinate arrays.
  void classify_batch(std::span<const double> xs, std::span<const double> ys,
                      std::span<Label> out) const;

  /// Same labels and grid; provenance is ignored.
  friend bool operator==(const LabelGrid& a, const LabelGrid& b) {
    return a.spec_ == b.spec_ && a.num_classes_ == b.num_classes_ &&
           a.labels_ == b.labels_;
  }

 private:
  GridSpec spec_;
  std::size_t num_classes_ = 0;
  std::vector<Label> labels_;
  std::string provenance_;
};

}  // namespace mc
