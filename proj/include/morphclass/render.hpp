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

#include <cstdint>
#include <string>

#include "morphclass/dataset.hpp"
#include "morphclass/label_grid.hpp"

namespace mc {

struct RenderOptions {
  int cell_pixels = 1;               // square pixels per grid cell
  const Dataset* overlay = nullptr;  // training instances drawn on top
};

/// Gray level of label l out of L: floor(255 (l - 1) / max(L - 1, 1)).
/// With an overlay the regions use [48, 207] instead, keeping the extreme
/// levels for the instances.
std::uint8_t region_gray(Label l, std::size_t num_classes, bool with_overlay);

/// Binary PGM (P5) of a 2D model, highest y on the first row. Overlay
/// instances of class 1 are drawn black, all others white.
std::string render_pgm(const LabelGrid& model, const RenderOptions& options = {});

}  // namespace mc
