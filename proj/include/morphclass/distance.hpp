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
#include <vector>

namespace mc {

struct Point2 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Offset {
  std::int64_t dx = 0;
  std::int64_t dy = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

/// n(n + 1) / 2.
constexpr std::int64_t sum_progression(std::int64_t n) noexcept {
  return n * (n + 1) / 2;
}

/// Staircase distance: shells grow by Chebyshev radius, then by the smaller
/// axis offset. Equals S(max) + min with S the triangular numbers.
constexpr std::int64_t dt(Offset e) noexcept {
  const std::int64_t xm = e.dx < 0 ? -e.dx : e.dx;
  const std::int64_t ym = e.dy < 0 ? -e.dy : e.dy;
  return xm > ym ? sum_progression(xm) + ym : sum_progression(ym) + xm;
}

constexpr std::int64_t dt(Point2 v, Point2 w) noexcept {
  return dt(Offset{v.x - w.x, v.y - w.y});
}

/// Shell count needed to reach the far corner of an x_t by y_t grid from
/// the opposite corner.
std::int64_t worst_case_steps(std::int64_t x_t, std::int64_t y_t);

/// Decomposition of a distance value into (Chebyshev radius, minor offset).
struct ShellIndex {
  std::int64_t radius = 0;
  std::int64_t minor = 0;
};

/// Inverse of dt restricted to one octant: value = S(radius) + minor with
/// 0 <= minor <= radius.
ShellIndex shell_index(std::int64_t value) noexcept;

/// Offsets with dt == i, in quadrant order (+x+y, -x+y, -x-y, +x-y), each
/// quadrant by ascending |dy| then |dx|. Axis offsets belong to the quadrant
/// that starts at them: (+a,0) -> +x+y, (0,+a) -> -x+y, (-a,0) -> -x-y,
/// (0,-a) -> +x-y.
std::vector<Offset> ring_offsets(std::int64_t i);

/// In-bounds cells at dt == i from `center` on a width x height grid.
std::vector<Point2> ring(Point2 center, std::int64_t i, std::int64_t width,
                         std::int64_t height);

}  // namespace mc
