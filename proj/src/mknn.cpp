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

#include "morphclass/mknn.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "morphclass/distance.hpp"
#include "morphclass/kernels.hpp"

namespace mc {

// The staircase distance is S(max(|dx|,|dy|)) + min(|dx|,|dy|), so the shells
// up to a given index are a Chebyshev square plus the axis-near "arms" of the
// next square ring. Counting uses prefix sums:
//   * a padded 2D prefix of the totals drives a row-parallel sweep that finds,
//     per cell, the smallest Chebyshev radius holding >= k instances;
//   * per-plane 2D, row and column prefixes resolve the exact stopping shell
//     inside that ring and the per-class counters.

namespace {

class PrefixPlanes {
 public:
  // Plane 0 holds totals, plane l holds class l.
  PrefixPlanes(const CountGrid& grid)
      : w_(grid.spec().dims[0]),
        h_(grid.spec().dims[1]),
        planes_(grid.num_classes() + 1),
        box_(planes_ * (w_ + 1) * (h_ + 1), 0),
        row_(planes_ * h_ * (w_ + 1), 0),
        col_(planes_ * w_ * (h_ + 1), 0) {
    const std::size_t L = grid.num_classes();
    auto value = [&](std::size_t plane, std::int64_t x, std::int64_t y) {
      const std::size_t cell = static_cast<std::size_t>(y * w_ + x);
      return plane == 0 ? static_cast<std::int32_t>(grid.cell_total(cell))
                        : static_cast<std::int32_t>(grid.count(cell, static_cast<Label>(plane)));
    };
    for (std::size_t p = 0; p <= L; ++p) {
      std::int32_t* box = &box_[p * (w_ + 1) * (h_ + 1)];
      std::int32_t* row = &row_[p * h_ * (w_ + 1)];
      std::int32_t* col = &col_[p * w_ * (h_ + 1)];
      for (std::int64_t y = 0; y < h_; ++y) {
        std::int32_t run = 0;
        for (std::int64_t x = 0; x < w_; ++x) {
          const std::int32_t v = value(p, x, y);
          run += v;
          row[y * (w_ + 1) + x + 1] = run;
          col[x * (h_ + 1) + y + 1] = col[x * (h_ + 1) + y] + v;
          box[(y + 1) * (w_ + 1) + x + 1] = box[y * (w_ + 1) + x + 1] + run;
        }
      }
    }
  }

  // Sum over the clamped rectangle [x0, x1] x [y0, y1].
  std::int32_t rect(std::size_t plane, std::int64_t x0, std::int64_t y0,
                    std::int64_t x1, std::int64_t y1) const {
    x0 = std::max<std::int64_t>(x0, 0);
    y0 = std::max<std::int64_t>(y0, 0);
    x1 = std::min(x1, w_ - 1);
    y1 = std::min(y1, h_ - 1);
    if (x0 > x1 || y0 > y1) return 0;
    const std::int32_t* box = &box_[plane * (w_ + 1) * (h_ + 1)];
    const std::int64_t s = w_ + 1;
    return box[(y1 + 1) * s + x1 + 1] - box[y0 * s + x1 + 1] -
           box[(y1 + 1) * s + x0] + box[y0 * s + x0];
  }

  std::int32_t row_segment(std::size_t plane, std::int64_t y, std::int64_t x0,
                           std::int64_t x1) const {
    if (y < 0 || y >= h_) return 0;
    x0 = std::max<std::int64_t>(x0, 0);
    x1 = std::min(x1, w_ - 1);
    if (x0 > x1) return 0;
    const std::int32_t* row = &row_[plane * h_ * (w_ + 1) + y * (w_ + 1)];
    return row[x1 + 1] - row[x0];
  }

  std::int32_t col_segment(std::size_t plane, std::int64_t x, std::int64_t y0,
                           std::int64_t y1) const {
    if (x < 0 || x >= w_) return 0;
    y0 = std::max<std::int64_t>(y0, 0);
    y1 = std::min(y1, h_ - 1);
    if (y0 > y1) return 0;
    const std::int32_t* col = &col_[plane * w_ * (h_ + 1) + x * (h_ + 1)];
    return col[y1 + 1] - col[y0];
  }

  // Instances at staircase distance <= S(r) + m from (cx, cy), 0 <= m <= r.
  std::int32_t within(std::size_t plane, std::int64_t cx, std::int64_t cy,
                     std::int64_t r, std::int64_t m) const {
    if (r == 0) return rect(plane, cx, cy, cx, cy);
    std::int32_t n = rect(plane, cx - r + 1, cy - r + 1, cx + r - 1, cy + r - 1);
    n += row_segment(plane, cy + r, cx - m, cx + m);
    n += row_segment(plane, cy - r, cx - m, cx + m);
    const std::int64_t side = std::min(m, r - 1);
    n += col_segment(plane, cx + r, cy - side, cy + side);
    n += col_segment(plane, cx - r, cy - side, cy + side);
    return n;
  }

  // Row-major copy of the total prefix padded by `pad` cells on every side,
  // clamping to the grid, so box queries need no bounds checks.
  std::vector<std::int32_t> padded_totals(std::int64_t pad,
                                          std::int64_t* stride) const {
    const std::int64_t we = w_ + 2 * pad + 1;
    const std::int64_t he = h_ + 2 * pad + 1;
    *stride = we;
    std::vector<std::int32_t> ext(static_cast<std::size_t>(we * he));
    const std::int32_t* box = box_.data();
    for (std::int64_t Y = 0; Y < he; ++Y) {
      // Extended coordinate Y maps to grid row Y - pad - 1.
      const std::int64_t gy = std::clamp<std::int64_t>(Y - pad - 1, -1, h_ - 1);
      for (std::int64_t X = 0; X < we; ++X) {
        const std::int64_t gx = std::clamp<std::int64_t>(X - pad - 1, -1, w_ - 1);
        ext[Y * we + X] = box[(gy + 1) * (w_ + 1) + gx + 1];
      }
    }
    return ext;
  }

 private:
  std::int64_t w_, h_;
  std::size_t planes_;
  std::vector<std::int32_t> box_;
  std::vector<std::int32_t> row_;
  std::vector<std::int32_t> col_;
};

void check_grid(const CountGrid& grid) {
  if (grid.spec().rank() != 2) throw InputError("MkNN needs a 2D grid");
  if (grid.total() == 0) throw InputError("empty training grid");
}

}  // namespace

Label majority_class(const CountGrid& grid) {
  const auto totals = grid.class_totals();
  std::size_t best = 0;
  for (std::size_t l = 1; l < totals.size(); ++l) {
    if (totals[l] > totals[best]) best = l;
  }
  return static_cast<Label>(best + 1);
}

LabelGrid train_mknn(const CountGrid& grid, const MkNNParams& params,
                     MkNNStats* stats) {
  check_grid(grid);
  if (params.k < 1) throw InputError("k must be at least 1");
  if (params.gamma < 0) throw InputError("gamma must be non-negative");
  const std::int64_t w = grid.spec().dims[0];
  const std::int64_t h = grid.spec().dims[1];
  const std::int64_t full_sigma = worst_case_steps(w, h);
  if (params.sigma && *params.sigma < 1) throw InputError("sigma must be at least 1");
  // A single-cell grid has no shell beyond 0, so the default can be 0.
  const std::int64_t sigma = params.sigma.value_or(full_sigma);
  const std::size_t L = grid.num_classes();
  const std::int32_t k = params.k;

  const PrefixPlanes planes(grid);

  // Sweep Chebyshev radii until each cell's square holds k instances. Radii
  // whose first shell already exceeds sigma are never needed.
  const std::int64_t max_radius = std::max(w, h) - 1;
  const std::int64_t pad = max_radius + 1;
  std::int64_t stride = 0;
  const std::vector<std::int32_t> ext = planes.padded_totals(pad, &stride);
  std::vector<std::int32_t> radius(static_cast<std::size_t>(w * h), -1);
  std::vector<std::int64_t> open_in_row(static_cast<std::size_t>(h), w);
  std::int64_t open = w * h;
  const auto sweep = kernels::active().sweep_row;
  for (std::int64_t r = 0; r <= max_radius && open > 0; ++r) {
    if (sum_progression(r) > sigma) break;
    for (std::int64_t y = 0; y < h; ++y) {
      if (open_in_row[y] == 0) continue;
      const std::int32_t* upper = &ext[(y + r + pad + 1) * stride + pad + 1];
      const std::int32_t* lower = &ext[(y - r + pad) * stride + pad + 1];
      const auto done = static_cast<std::int64_t>(
          sweep(upper, lower, static_cast<std::int32_t>(r), k, &radius[y * w],
                static_cast<std::size_t>(w)));
      open_in_row[y] -= done;
      open -= done;
    }
  }

  const Label fallback = majority_class(grid);
  MkNNStats local;
  local.sigma = sigma;
  std::vector<Label> labels(static_cast<std::size_t>(w * h));
  std::vector<std::int64_t> counters(L);
  for (std::int64_t cy = 0; cy < h; ++cy) {
    for (std::int64_t cx = 0; cx < w; ++cx) {
      const std::size_t cell = static_cast<std::size_t>(cy * w + cx);
      const std::int32_t r = radius[cell];
      // Last shell index to absorb.
      std::int64_t stop = sigma;
      bool converged = false;
      if (r >= 0) {
        std::int64_t lo = 0;
        std::int64_t hi = r;
        while (lo < hi) {
          const std::int64_t mid = (lo + hi) / 2;
          if (planes.within(0, cx, cy, r, mid) >= k) {
            hi = mid;
          } else {
            lo = mid + 1;
          }
        }
        const std::int64_t needed = sum_progression(r) + lo;
        if (needed <= sigma) {
          stop = needed;
          converged = true;
        }
      }
      if (!converged) {
        ++local.unconverged_cells;
        // Shells past the farthest cell add nothing.
        const std::int64_t far_x = std::max(cx, w - 1 - cx);
        const std::int64_t far_y = std::max(cy, h - 1 - cy);
        stop = std::min(stop, dt(Offset{far_x, far_y}));
      }
      local.max_shell = std::max(local.max_shell, stop);
      const ShellIndex shell = shell_index(stop);
      Label best = kNoLabel;
      std::int64_t best_count = 0;
      for (std::size_t l = 0; l < L; ++l) {
        const auto label = static_cast<Label>(l + 1);
        const std::int64_t t =
            std::int64_t{params.gamma} * grid.count(cell, label) +
            planes.within(l + 1, cx, cy, shell.radius, shell.minor);
        if (t > best_count) {
          best_count = t;
          best = label;
        }
      }
      if (best == kNoLabel) {
        best = fallback;
        ++local.fallback_cells;
      }
      labels[cell] = best;
    }
  }
  if (stats != nullptr) *stats = local;
  std::string provenance = "mknn k=" + std::to_string(params.k) +
                           " gamma=" + std::to_string(params.gamma) +
                           " sigma=" + std::to_string(sigma);
  return LabelGrid(grid.spec(), L, std::move(labels), std::move(provenance));
}

bool convergence_reached(const CountGrid& grid, const MkNNParams& params) {
  MkNNStats stats;
  train_mknn(grid, params, &stats);
  return stats.converged();
}

}  // namespace mc
