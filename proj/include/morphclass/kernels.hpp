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

// Data-parallel inner loops. Each kernel has a portable scalar reference and,
// on x86-64, an AVX2 variant. The active table is chosen once at startup from
// CPUID; MC_SIMD=scalar forces the reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mc::kernels {

/// One row of a Chebyshev box-count sweep. For x in [0, n):
///   box = upper[x + r] - upper[x - r - 1] - lower[x + r] + lower[x - r - 1]
/// where upper/lower point at column 0 of the extended prefix rows y + r and
/// y - r - 1. Cells with radius[x] < 0 and box >= k get radius[x] = r.
/// Returns the number of cells resolved by this call.
using SweepRowFn = std::size_t (*)(const std::int32_t* upper,
                                   const std::int32_t* lower, std::int32_t r,
                                   std::int32_t k, std::int32_t* radius,
                                   std::size_t n);

/// Linear cell indices for n 2D points:
///   c = clamp(round_half_away(v * coord) - origin, 0, dim - 1)
///   index = cx + width * cy
/// Returns the number of points that needed clamping on either axis.
/// Inputs must be finite.
struct LocateParams {
  double vx, vy;
  double ox, oy;          // origin
  double max_x, max_y;    // dim - 1
  std::int32_t width;
};
using LocateFn = std::size_t (*)(const double* xs, const double* ys,
                                 std::size_t n, const LocateParams& params,
                                 std::int32_t* out);

struct KernelTable {
  std::string_view name;
  SweepRowFn sweep_row;
  LocateFn locate;
};

const KernelTable& scalar_kernels() noexcept;

/// Null when the AVX2 variants were not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// The table used by the library.
const KernelTable& active() noexcept;

}  // namespace mc::kernels
