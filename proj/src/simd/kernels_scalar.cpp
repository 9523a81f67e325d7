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

#include "inaug/simd/kernels.hpp"

namespace inaug::simd {
namespace {

void invert(const std::uint8_t* src, std::uint8_t* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<std::uint8_t>(255 - src[i]);
}

void solarize(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, int threshold) {
  for (std::size_t i = 0; i < n; ++i) {
    const int v = src[i];
    dst[i] = static_cast<std::uint8_t>(v >= threshold ? 255 - v : v);
  }
}

void mask(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, std::uint8_t m) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] & m;
}

void blend_const(const std::uint8_t* src, std::uint8_t* dst, std::size_t n, float ref,
                 float factor) {
  for (std::size_t i = 0; i < n; ++i) {
    const float d = static_cast<float>(src[i]) - ref;
    dst[i] = to_u8(ref + factor * d);
  }
}

void blend(const std::uint8_t* src, const std::uint8_t* ref, std::uint8_t* dst, std::size_t n,
           float factor) {
  for (std::size_t i = 0; i < n; ++i) {
    const float r = static_cast<float>(ref[i]);
    const float d = static_cast<float>(src[i]) - r;
    dst[i] = to_u8(r + factor * d);
  }
}

void correlate(const float* src, float* dst, std::size_t n, const float* weights, int taps,
               std::ptrdiff_t step) {
  for (std::size_t i = 0; i < n; ++i) {
    float acc = 0.0f;
    const float* p = src + i;
    for (int k = 0; k < taps; ++k) acc = acc + weights[k] * p[k * step];
    dst[i] = acc;
  }
}

void correlate_rows_u8(const float* const* rows, std::uint8_t* dst, std::size_t n,
                       const float* weights, int taps) {
  for (std::size_t i = 0; i < n; ++i) {
    float acc = 0.0f;
    for (int k = 0; k < taps; ++k) acc = acc + weights[k] * rows[k][i];
    dst[i] = to_u8(acc);
  }
}

void lerp_u8(const float* a, const float* b, std::uint8_t* dst, std::size_t n, float t) {
  const float s = 1.0f - t;
  for (std::size_t i = 0; i < n; ++i) dst[i] = to_u8(s * a[i] + t * b[i]);
}

void widen(const std::uint8_t* src, float* dst, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<float>(src[i]);
}

constexpr KernelTable kScalar{
    "scalar", invert, solarize, mask, blend_const, blend, correlate, correlate_rows_u8,
    lerp_u8,  widen,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace inaug::simd
