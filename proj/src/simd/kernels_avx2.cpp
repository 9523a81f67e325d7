// Copyright 2026 The InAugment Engine Authors. All rights reserved.
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

// Compiled with -mavx2 only. Nothing here may run unless the dispatcher has
// confirmed AVX2 support at runtime.

#include <immintrin.h>

#include <cstring>
#include <memory>

#include "inaug/simd/kernels.hpp"

namespace inaug::simd {
namespace {

inline __m256 widen8(const std::uint8_t* p) {
  std::int64_t bits;
  std::memcpy(&bits, p, sizeof(bits));
  return _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(_mm_cvtsi64_si128(bits)));
}

// floor(v + 0.5) clamped to [0, 255]; NaN -> 0 as in to_u8().
inline void narrow8(__m256 v, std::uint8_t* dst) {
  __m256 r = _mm256_floor_ps(_mm256_add_ps(v, _mm256_set1_ps(0.5f)));
  r = _mm256_max_ps(r, _mm256_setzero_ps());
  r = _mm256_min_ps(r, _mm256_set1_ps(255.0f));
  const __m256i i32 = _mm256_cvttps_epi32(r);
  const __m256i u16 = _mm256_packus_epi32(i32, i32);
  const __m256i u8 = _mm256_packus_epi16(u16, u16);
  const int lo = _mm_cvtsi128_si32(_mm256_castsi256_si128(u8));
  const int hi = _mm_cvtsi128_si32(_mm256_extracti128_si256(u8, 1));
  std::memcpy(dst, &lo, 4);
  std::memcpy(dst + 4, &hi, 4);
}

void invert(const std::uint8_t* src, std::uint8_t* dst, std::size_t n) {
  const __m256i ones = _mm256_set1_epi8(static_cast<char>(0xFF));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(v, ones));
  }
  scalar_kernels().invert(src + i, dst + i, n - i);
}

void solarize(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, int threshold) {
  if (threshold <= 0) return invert(src, dst, n);
  if (threshold > 255) {
    if (dst != src) std::memmove(dst, src, n);
    return;
  }
  const __m256i th = _mm256_set1_epi8(static_cast<char>(threshold));
  const __m256i ones = _mm256_set1_epi8(static_cast<char>(0xFF));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(v, th), v);
    const __m256i out = _mm256_blendv_epi8(v, _mm256_xor_si256(v, ones), ge);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), out);
  }
  scalar_kernels().solarize(src + i, dst + i, n - i, threshold);
}

void mask(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, std::uint8_t m) {
  const __m256i mv = _mm256_set1_epi8(static_cast<char>(m));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(v, mv));
  }
  scalar_kernels().mask(src + i, dst + i, n - i, m);
}

void blend_const(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, float ref,
                 float factor) {
  const __m256 rv = _mm256_set1_ps(ref);
  const __m256 fv = _mm256_set1_ps(factor);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 d = _mm256_sub_ps(widen8(src + i), rv);
    narrow8(_mm256_add_ps(rv, _mm256_mul_ps(fv, d)), dst + i);
  }
  scalar_kernels().blend_const(src + i, dst + i, n - i, ref, factor);
}

void blend(const std::uint8_t* src, const std::uint8_t* ref, std::uint8_t* dst, std::size_t n,
           float factor) {
  const __m256 fv = _mm256_set1_ps(factor);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 r = widen8(ref + i);
    const __m256 d = _mm256_sub_ps(widen8(src + i), r);
    narrow8(_mm256_add_ps(r, _mm256_mul_ps(fv, d)), dst + i);
  }
  scalar_kernels().blend(src + i, ref + i, dst + i, n - i, factor);
}

void correlate(const float* src, float* dst, std::size_t n, const float* weights, int taps,
               std::ptrdiff_t step) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 acc = _mm256_setzero_ps();
    const float* p = src + i;
    for (int k = 0; k < taps; ++k) {
      const __m256 x = _mm256_loadu_ps(p + k * step);
      acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(weights[k]), x));
    }
    _mm256_storeu_ps(dst + i, acc);
  }
  scalar_kernels().correlate(src + i, dst + i, n - i, weights, taps, step);
}

void correlate_rows_u8(const float* const* rows, std::uint8_t* dst, std::size_t n,
                       const float* weights, int taps) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 acc = _mm256_setzero_ps();
    for (int k = 0; k < taps; ++k) {
      const __m256 x = _mm256_loadu_ps(rows[k] + i);
      acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(weights[k]), x));
    }
    narrow8(acc, dst + i);
  }
  if (i < n) {
    // Tail: offset the row pointers and reuse the scalar loop.
    constexpr int kMaxStackTaps = 1024;
    const float* shifted_stack[kMaxStackTaps];
    const float** shifted = shifted_stack;
    std::unique_ptr<const float*[]> heap;
    if (taps > kMaxStackTaps) {
      heap.reset(new const float*[taps]);
      shifted = heap.get();
    }
    for (int k = 0; k < taps; ++k) shifted[k] = rows[k] + i;
    scalar_kernels().correlate_rows_u8(shifted, dst + i, n - i, weights, taps);
  }
}

void lerp_u8(const float* a, const float* b, std::uint8_t* dst, std::size_t n, float t) {
  const __m256 sv = _mm256_set1_ps(1.0f - t);
  const __m256 tv = _mm256_set1_ps(t);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 x = _mm256_mul_ps(sv, _mm256_loadu_ps(a + i));
    const __m256 y = _mm256_mul_ps(tv, _mm256_loadu_ps(b + i));
    narrow8(_mm256_add_ps(x, y), dst + i);
  }
  scalar_kernels().lerp_u8(a + i, b + i, dst + i, n - i, t);
}

void widen(const std::uint8_t* src, float* dst, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(dst + i, widen8(src + i));
  scalar_kernels().widen(src + i, dst + i, n - i);
}

constexpr KernelTable kAvx2{
    "avx2", invert, solarize, mask, blend_const, blend, correlate, correlate_rows_u8,
    lerp_u8, widen,
};

}  // namespace

const KernelTable* avx2_kernels_unchecked() { return &kAvx2; }

}  // namespace inaug::simd
