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

#include "morphclass/label_grid.hpp"

#include <algorithm>
#include <cmath>

#include "morphclass/kernels.hpp"

namespace mc {

LabelGrid::LabelGrid(GridSpec spec, std::size_t num_classes,
                     std::vector<Label> labels, std::string provenance)
    : spec_(std::move(spec)),
      num_classes_(num_classes),
      labels_(std::move(labels)),
      provenance_(std::move(provenance)) {
  if (spec_.rank() == 0) throw InputError("label grid needs at least one axis");
  if (labels_.size() != spec_.cell_count()) {
    throw InputError("label count " + std::to_string(labels_.size()) +
                     " does not match grid size " +
                     std::to_string(spec_.cell_count()));
  }
}

bool LabelGrid::fully_covered() const noexcept {
  for (Label l : labels_) {
    if (l < 1 || l > num_classes_) return false;
  }
  return !labels_.empty();
}

Label LabelGrid::classify(std::span<const double> features) const {
  if (features.size() != spec_.rank()) {
    throw InputError("expected " + std::to_string(spec_.rank()) +
                     " features, got " + std::to_string(features.size()));
  }
  // Same arithmetic as cell_of, without building a coordinate vector.
  std::size_t index = 0;
  std::size_t stride = 1;
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (!std::isfinite(features[j])) throw InputError("non-finite value");
    const double r = round_half_away(spec_.precision[j] * features[j]) -
                     static_cast<double>(spec_.origin[j]);
    const double top = static_cast<double>(spec_.dims[j] - 1);
    index += static_cast<std::size_t>(std::clamp(r, 0.0, top)) * stride;
    stride *= static_cast<std::size_t>(spec_.dims[j]);
  }
  return labels_[index];
}

void LabelGrid::classify_batch(std::span<const double> xs,
                               std::span<const double> ys,
                               std::span<Label> out) const {
  if (spec_.rank() != 2) throw InputError("batch classification needs a 2D model");
  if (xs.size() != ys.size() || out.size() != xs.size()) {
    throw InputError("batch arrays differ in length");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw InputError("non-finite value");
    }
  }
  const kernels::LocateParams params{
      spec_.precision[0],
      spec_.precision[1],
      static_cast<double>(spec_.origin[0]),
      static_cast<double>(spec_.origin[1]),
      static_cast<double>(spec_.dims[0] - 1),
      static_cast<double>(spec_.dims[1] - 1),
      static_cast<std::int32_t>(spec_.dims[0])};
  std::vector<std::int32_t> index(xs.size());
  kernels::active().locate(xs.data(), ys.data(), xs.size(), params, index.data());
  for (std::size_t i = 0; i < index.size(); ++i) out[i] = labels_[index[i]];
}

}  // namespace mc
