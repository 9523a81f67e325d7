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

#ifndef INAUG_IMAGING_HPP_
#define INAUG_IMAGING_HPP_

#include "inaug/image.hpp"

// Geometric and low-level kernels shared by every other module. All functions
// are pure; intermediate arithmetic is float and results are rounded half away
// from zero back to 8 bits.
namespace inaug {

enum class InterpMode { kNearest, kBilinear };

enum class PadMode { kSymmetric, kZero, kTile };

/// Intersection of `r` with the [0, dims.w) x [0, dims.h) canvas. May be empty.
Rect clamp_rect(const Rect& r, Dims dims);

/// Resamples to `target`. Bilinear samples at half-pixel centers with edge
/// clamping; nearest picks floor((x + 0.5) * src / dst). Same-size resize is
/// an exact copy in both modes.
Image resize(const Image& img, Dims target, InterpMode interp = InterpMode::kBilinear);

/// Pixels of r intersected with the image bounds; never pads.
/// Throws EmptyIntersection when the intersection has zero area.
Image crop_clamped(const Image& img, const Rect& r);

/// Copies `src` onto `dst` with its top-left at (x, y), discarding whatever
/// falls outside `dst`.
Image blit_clipped(const Image& dst, const Image& src, int x, int y);
void blit_clipped_into(Image& dst, const Image& src, int x, int y);

/// Pads all four borders by `d` pixels.
///   kSymmetric: mirror including the edge pixel (index -1 reads 0, -2 reads 1),
///               continuing periodically with period 2n when d exceeds the extent.
///   kZero:      fills with 0.
///   kTile:      wraps the image periodically.
Image pad(const Image& img, int d, PadMode mode);

/// Separable Gaussian, radius ceil(3 * sigma), edge clamped. sigma == 0 is the
/// identity.
Image gaussian_blur(const Image& img, double sigma);

Image flip_horizontal(const Image& img);

/// Central crop covering `fraction` of each side (rounded, at least 1 pixel).
Image center_crop(const Image& img, double fraction);

}  // namespace inaug

#endif  // INAUG_IMAGING_HPP_
