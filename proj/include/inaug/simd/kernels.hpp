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

#ifndef INAUG_SIMD_KERNELS_HPP_
#define INAUG_SIMD_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

// Inner loops of the imaging and transform modules. Each table entry has a
// scalar reference implementation; vector tables must produce bit-identical
// output (same float operation order, no contraction, floor(v + 0.5) rounding).
namespace inaug::simd {

struct KernelTable {
  const char* name;

  // dst[i] = 255 - src[i]
  void (*invert)(const std::uint8_t* src, std::uint8_t* dst, std::size_t n);
  // dst[i] = src[i] >= threshold ? 255 - src[i] : src[i]; threshold in [0, 256]
  void (*solarize)(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, int threshold);
  // dst[i] = src[i] & mask
  void (*mask)(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, std::uint8_t mask);
  // dst[i] = u8(ref + factor * (src[i] - ref))
  void (*blend_const)(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, float ref,
                      float factor);
  // dst[i] = u8(ref[i] + factor * (src[i] - ref[i]))
  void (*blend)(const std::uint8_t* src, const std::uint8_t* ref, std::uint8_t* dst,
                std::size_t n, float factor);
  // dst[i] = sum_k weights[k] * src[i + k * step], accumulated for k = 0..taps-1
  void (*correlate)(const float* src, float* dst, std::size_t n, const float* weights, int taps,
                    std::ptrdiff_t step);
  // dst[i] = u8(sum_k weights[k] * rows[k][i]), accumulated for k = 0..taps-1
  void (*correlate_rows_u8)(const float* const* rows, std::uint8_t* dst, std::size_t n,
                            const float* weights, int taps);
  // dst[i] = u8((1 - t) * a[i] + t * b[i])
  void (*lerp_u8)(const float* a, const float* b, std::uint8_t* dst, std::size_t n, float t);
  // dst[i] = float(src[i])
  void (*widen)(const std::uint8_t* src, float* dst, std::size_t n);
};

/// Round-half-away-from-zero for non-negative inputs, saturating to [0, 255].
inline std::uint8_t to_u8(float v) {
  float r = __builtin_floorf(v + 0.5f);
  if (!(r > 0.0f)) return 0;  // also maps NaN to 0
  if (r > 255.0f) return 255;
  return static_cast<std::uint8_t>(r);
}

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// Table used by the engine. Chosen once at first use: AVX2 when available,
/// overridable with INAUG_SIMD=scalar|avx2|auto.
const KernelTable& active_kernels();

/// Forces a table for the current process (tests and benchmarks).
/// Accepts "scalar", "avx2" or "auto"; returns false if unavailable.
bool select_kernels(std::string_view name);

}  // namespace inaug::simd

#endif  // INAUG_SIMD_KERNELS_HPP_
