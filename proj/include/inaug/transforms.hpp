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

#ifndef INAUG_TRANSFORMS_HPP_
#define INAUG_TRANSFORMS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "inaug/image.hpp"

namespace inaug {

enum class OpKind : std::uint8_t {
  kShearX,
  kShearY,
  kTranslateX,
  kTranslateY,
  kRotate,
  kAutoContrast,
  kInvert,
  kEqualize,
  kSolarize,
  kPosterize,
  kContrast,
  kColor,
  kBrightness,
  kSharpness,
  kCutOut,
};

inline constexpr int kNumOpKinds = 15;
inline constexpr int kMaxLevel = 9;

inline constexpr std::array<OpKind, kNumOpKinds> kAllOpKinds{
    OpKind::kShearX,   OpKind::kShearY,       OpKind::kTranslateX, OpKind::kTranslateY,
    OpKind::kRotate,   OpKind::kAutoContrast, OpKind::kInvert,     OpKind::kEqualize,
    OpKind::kSolarize, OpKind::kPosterize,    OpKind::kContrast,   OpKind::kColor,
    OpKind::kBrightness, OpKind::kSharpness,  OpKind::kCutOut,
};

std::string_view op_kind_name(OpKind kind);
std::optional<OpKind> op_kind_from_name(std::string_view name);

/// Kinds whose parameter is negated with probability 1/2 (shear, translate, rotate).
bool is_signed(OpKind kind);
/// AutoContrast, Invert and Equalize ignore the magnitude level.
bool is_parameterized(OpKind kind);

struct OpSpec {
  OpKind kind = OpKind::kInvert;
  double probability = 0.0;
  int magnitude = 0;

  friend bool operator==(const OpSpec&, const OpSpec&) = default;
};

enum class ParamUnit : std::uint8_t { kAbsolute, kFraction };

struct ParamRange {
  double min = 0.0;
  double max = 0.0;
  ParamUnit unit = ParamUnit::kAbsolute;
};

/// Linear level -> parameter map per parameterized kind, read from the
/// magnitude table file (one profile per table).
class MagnitudeTable {
 public:
  /// Parses the rows of `profile` out of a magnitude file. Throws SchemaError
  /// on malformed rows or when the profile does not cover every
  /// parameterized kind.
  static MagnitudeTable parse(std::string_view text, std::string_view profile,
                              std::string_view source_name = "magnitudes");

  /// The shipped table for "cifar" or "imagenet".
  static const MagnitudeTable& shipped(std::string_view profile);

  const std::string& profile() const { return profile_; }
  const ParamRange& range(OpKind kind) const;

  /// min + (max - min) * level / 9.
  double param(OpKind kind, int level) const;

 private:
  std::string profile_;
  std::array<std::optional<ParamRange>, kNumOpKinds> ranges_{};
};

/// Externally sampled randomness for one op; see SampledTransform.
struct OpDraw {
  bool fired = false;
  int direction = 1;  // +1 or -1, used by signed kinds
  std::uint64_t aux = 0;  // CutOut center: low 32 bits -> x, high 32 bits -> y

  friend bool operator==(const OpDraw&, const OpDraw&) = default;
};

/// Applies one op. Not fired returns the input unchanged; dimensions are
/// always preserved.
Image apply_op(Image img, const OpSpec& spec, const OpDraw& draw, const MagnitudeTable& table);

// Kernels. Geometric ones inverse-map pixel centers with nearest-neighbor
// sampling and fill vacated pixels with kFillGray.

/// Source x = x + shear * y (pixel centers, origin top-left).
Image shear_x(const Image& img, double shear);
/// Source y = y + shear * x.
Image shear_y(const Image& img, double shear);
/// Source = destination + (dx, dy); positive dx moves content left.
Image translate(const Image& img, int dx, int dy);
/// Counter-clockwise rotation by `degrees` about the image center.
Image rotate(const Image& img, double degrees);

Image autocontrast(const Image& img);
Image invert(const Image& img);
/// Per-channel cumulative-histogram remap with step = (N - count of the last
/// occupied bin) / 255; a zero step leaves the channel unchanged.
Image equalize(const Image& img);
/// Values >= threshold become 255 - value; threshold in [0, 256].
Image solarize(const Image& img, int threshold);
/// Keeps the top `bits` bits of every channel; bits in [1, 8].
Image posterize(const Image& img, int bits);

/// Interpolation towards the mean-luminance gray image.
Image contrast(const Image& img, double factor);
/// Interpolation towards the per-pixel grayscale image.
Image color(const Image& img, double factor);
/// Interpolation towards black.
Image brightness(const Image& img, double factor);
/// Interpolation towards the 3x3 smoothed image (border pixels unsmoothed).
Image sharpness(const Image& img, double factor);

/// Fills the cut.w x cut.h box centered at (cx, cy), clipped to bounds. The
/// box starts at (cx - cut.w / 2, cy - cut.h / 2).
Image cutout(const Image& img, Dims cut, int cx, int cy, Rgb fill = kFillGray);

/// Integer luminance (299 R + 587 G + 114 B + 500) / 1000.
inline std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

}  // namespace inaug

#endif  // INAUG_TRANSFORMS_HPP_
