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

#include "morphclass/distance.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "morphclass/common.hpp"

namespace mc {

std::int64_t worst_case_steps(std::int64_t x_t, std::int64_t y_t) {
  if (x_t < 1 || y_t < 1) throw InputError("grid extents must be positive");
  if (y_t >= x_t) return (y_t * y_t - y_t) / 2 + x_t - 1;
  return (x_t * x_t - x_t) / 2 + y_t - 1;
}

ShellIndex shell_index(std::int64_t value) noexcept {
  if (value <= 0) return {0, 0};
  // Largest r with r(r+1)/2 <= value; the float guess is off by at most one.
  auto r = static_cast<std::int64_t>(
      (std::sqrt(8.0 * static_cast<double>(value) + 1.0) - 1.0) / 2.0);
  while (sum_progression(r) > value) --r;
  while (sum_progression(r + 1) <= value) ++r;
  return {r, value - sum_progression(r)};
}

namespace {

int quadrant_of(Offset e) noexcept {
  if (e.dx > 0 && e.dy >= 0) return 0;
  if (e.dx <= 0 && e.dy > 0) return 1;
  if (e.dx < 0 && e.dy <= 0) return 2;
  return 3;
}

}  // namespace

std::vector<Offset> ring_offsets(std::int64_t i) {
  if (i <= 0) return i == 0 ? std::vector<Offset>{{0, 0}} : std::vector<Offset>{};
  const auto [r, m] = shell_index(i);
  // |offset| pairs (|dx|, |dy|) on the two staircase arms.
  std::vector<Offset> mags{{m, r}};
  if (m != r) mags.push_back({r, m});
  std::vector<Offset> out;
  out.reserve(8);
  for (const Offset& a : mags) {
    for (int sx : {1, -1}) {
      for (int sy : {1, -1}) {
        const Offset e{sx * a.dx, sy * a.dy};
        if ((sx < 0 && a.dx == 0) || (sy < 0 && a.dy == 0)) continue;
        out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Offset& a, const Offset& b) {
    return std::make_tuple(quadrant_of(a), std::abs(a.dy), std::abs(a.dx)) <
           std::make_tuple(quadrant_of(b), std::abs(b.dy), std::abs(b.dx));
  });
  return out;
}

std::vector<Point2> ring(Point2 center, std::int64_t i, std::int64_t width,
                         std::int64_t height) {
  std::vector<Point2> cells;
  for (const Offset& e : ring_offsets(i)) {
    const Point2 z{center.x + e.dx, center.y + e.dy};
    if (z.x >= 0 && z.x < width && z.y >= 0 && z.y < height) cells.push_back(z);
  }
  return cells;
}

}  // namespace mc
