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

#include <algorithm>
#include <cmath>

#include "morphclass/kernels.hpp"

namespace mc::kernels {
namespace {

std::size_t sweep_row_scalar(const std::int32_t* upper,
                             const std::int32_t* lower, std::int32_t r,
                             std::int32_t k, std::int32_t* radius,
                             std::size_t n) {
  std::size_t resolved = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (radius[x] >= 0) continue;
    const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(x) + r;
    const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(x) - r - 1;
    const std::int32_t box = upper[hi] - upper[lo] - lower[hi] + lower[lo];
    if (box >= k) {
      radius[x] = r;
      ++resolved;
    }
  }
  return resolved;
}

std::size_t locate_scalar(const double* xs, const double* ys, std::size_t n,
                          const LocateParams& p, std::int32_t* out) {
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double cx = std::round(p.vx * xs[i]) - p.ox;
    double cy = std::round(p.vy * ys[i]) - p.oy;
    const bool outside = cx < 0.0 || cx > p.max_x || cy < 0.0 || cy > p.max_y;
    clamped += outside ? 1 : 0;
    cx = std::clamp(cx, 0.0, p.max_x);
    cy = std::clamp(cy, 0.0, p.max_y);
    out[i] = static_cast<std::int32_t>(cx) +
             p.width * static_cast<std::int32_t>(cy);
  }
  return clamped;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static constexpr KernelTable table{"scalar", &sweep_row_scalar,
                                     &locate_scalar};
  return table;
}

}  // namespace mc::kernels
