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

#include "morphclass/render.hpp"

namespace mc {

std::uint8_t region_gray(Label l, std::size_t num_classes, bool with_overlay) {
  const std::size_t span = num_classes > 1 ? num_classes - 1 : 1;
  const std::size_t step = l > 0 ? l - 1 : 0;
  if (!with_overlay) return static_cast<std::uint8_t>(255 * step / span);
  return static_cast<std::uint8_t>(48 + 159 * step / span);
}

std::string render_pgm(const LabelGrid& model, const RenderOptions& options) {
  if (model.spec().rank() != 2) throw InputError("rendering needs a 2D model");
  if (options.cell_pixels < 1 || options.cell_pixels > 64) {
    throw InputError("cell size must be in 1..64 pixels");
  }
  const std::size_t w = model.width();
  const std::size_t h = model.height();
  const bool overlay = options.overlay != nullptr;
  std::vector<std::uint8_t> cells(w * h);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cells[c] = region_gray(model.at(c), model.num_classes(), overlay);
  }
  if (overlay) {
    if (options.overlay->dims() != 2) throw InputError("overlay must have 2 attributes");
    for (const Instance& inst : options.overlay->instances()) {
      const CellCoords cell = cell_of(inst.features, model.spec());
      cells[linear_index(cell.coords, model.spec())] = inst.label == 1 ? 0 : 255;
    }
  }
  const auto px = static_cast<std::size_t>(options.cell_pixels);
  const std::size_t width = w * px;
  const std::size_t height = h * px;
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + width * height);
  for (std::size_t row = 0; row < height; ++row) {
    const std::size_t y = h - 1 - row / px;
    for (std::size_t col = 0; col < width; ++col) {
      out[header + row * width + col] = static_cast<char>(cells[y * w + col / px]);
    }
  }
  return out;
}

}  // namespace mc
