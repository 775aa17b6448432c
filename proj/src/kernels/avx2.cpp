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

// Compiled with -mavx2. Only reached through avx2_kernels(), which checks
// CPUID first.

#include <immintrin.h>

#include "kernel_variants.hpp"

namespace mc::kernels {
namespace {

std::size_t sweep_row_avx2(const std::int32_t* upper, const std::int32_t* lower,
                           std::int32_t r, std::int32_t k,
                           std::int32_t* radius, std::size_t n) {
  const __m256i vr = _mm256_set1_epi32(r);
  const __m256i threshold = _mm256_set1_epi32(k - 1);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t resolved = 0;
  std::size_t x = 0;
  for (; x + 8 <= n; x += 8) {
    const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(x) + r;
    const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(x) - r - 1;
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(upper + hi));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(upper + lo));
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lower + hi));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lower + lo));
    const __m256i box =
        _mm256_add_epi32(_mm256_sub_epi32(_mm256_sub_epi32(a, b), c), d);
    __m256i rad = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(radius + x));
    const __m256i open = _mm256_cmpgt_epi32(zero, rad);
    const __m256i hit = _mm256_and_si256(_mm256_cmpgt_epi32(box, threshold), open);
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(hit));
    if (mask == 0) continue;
    rad = _mm256_blendv_epi8(rad, vr, hit);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(radius + x), rad);
    resolved += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; x < n; ++x) {
    if (radius[x] >= 0) continue;
    const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(x) + r;
    const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(x) - r - 1;
    if (upper[hi] - upper[lo] - lower[hi] + lower[lo] >= k) {
      radius[x] = r;
      ++resolved;
    }
  }
  return resolved;
}

// round(v) with ties away from zero; exact for every finite double.
inline __m256d round_half_away(__m256d v) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d t = _mm256_round_pd(v, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  const __m256d frac = _mm256_sub_pd(v, t);
  const __m256d up = _mm256_and_pd(_mm256_cmp_pd(frac, _mm256_set1_pd(0.5), _CMP_GE_OQ), one);
  const __m256d down = _mm256_and_pd(_mm256_cmp_pd(frac, _mm256_set1_pd(-0.5), _CMP_LE_OQ), one);
  return _mm256_sub_pd(_mm256_add_pd(t, up), down);
}

std::size_t locate_avx2(const double* xs, const double* ys, std::size_t n,
                        const LocateParams& p, std::int32_t* out) {
  const __m256d vx = _mm256_set1_pd(p.vx);
  const __m256d vy = _mm256_set1_pd(p.vy);
  const __m256d ox = _mm256_set1_pd(p.ox);
  const __m256d oy = _mm256_set1_pd(p.oy);
  const __m256d max_x = _mm256_set1_pd(p.max_x);
  const __m256d max_y = _mm256_set1_pd(p.max_y);
  const __m256d zero = _mm256_setzero_pd();
  const __m128i width = _mm_set1_epi32(p.width);
  std::size_t clamped = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d cx = _mm256_sub_pd(round_half_away(_mm256_mul_pd(vx, _mm256_loadu_pd(xs + i))), ox);
    __m256d cy = _mm256_sub_pd(round_half_away(_mm256_mul_pd(vy, _mm256_loadu_pd(ys + i))), oy);
    const __m256d outside = _mm256_or_pd(
        _mm256_or_pd(_mm256_cmp_pd(cx, zero, _CMP_LT_OQ), _mm256_cmp_pd(cx, max_x, _CMP_GT_OQ)),
        _mm256_or_pd(_mm256_cmp_pd(cy, zero, _CMP_LT_OQ), _mm256_cmp_pd(cy, max_y, _CMP_GT_OQ)));
    clamped += static_cast<std::size_t>(__builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_pd(outside))));
    cx = _mm256_min_pd(_mm256_max_pd(cx, zero), max_x);
    cy = _mm256_min_pd(_mm256_max_pd(cy, zero), max_y);
    const __m128i ix = _mm256_cvttpd_epi32(cx);
    const __m128i iy = _mm256_cvttpd_epi32(cy);
    const __m128i index = _mm_add_epi32(ix, _mm_mullo_epi32(iy, width));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i), index);
  }
  if (i < n) {
    clamped += scalar_kernels().locate(xs + i, ys + i, n - i, p, out + i);
  }
  return clamped;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static constexpr KernelTable table{"avx2", &sweep_row_avx2, &locate_avx2};
  return table;
}

}  // namespace mc::kernels
