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

#include "inaug/transforms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>
#include <vector>

#include "inaug/data_catalog.hpp"
#include "inaug/error.hpp"
#include "inaug/simd/kernels.hpp"

namespace inaug {
namespace {

constexpr int kC = Image::kChannels;

constexpr std::array<std::string_view, kNumOpKinds> kNames{
    "ShearX",   "ShearY",    "TranslateX", "TranslateY", "Rotate",
    "AutoContrast", "Invert", "Equalize",  "Solarize",   "Posterize",
    "Contrast", "Color",     "Brightness", "Sharpness",  "CutOut",
};

std::size_t index_of(OpKind kind) { return static_cast<std::size_t>(kind); }

// Inverse-mapped nearest-neighbor warp. `map(xc, yc, u, v)` receives the
// destination pixel center and returns the source position.
template <typename Map>
Image warp_nearest(const Image& img, Map map) {
  const int w = img.width();
  const int h = img.height();
  Image out(w, h, kFillGray);
  for (int y = 0; y < h; ++y) {
    std::uint8_t* dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      double u, v;
      map(x + 0.5, y + 0.5, u, v);
      const double fu = std::floor(u);
      const double fv = std::floor(v);
      if (fu < 0.0 || fv < 0.0 || fu >= w || fv >= h) continue;
      std::memcpy(dst + x * kC, img.row(static_cast<int>(fv)) + static_cast<int>(fu) * kC, kC);
    }
  }
  return out;
}

using Lut = std::array<std::uint8_t, 256>;

void apply_luts(Image& img, const std::array<Lut, kC>& luts) {
  auto bytes = img.bytes();
  for (std::size_t i = 0; i < bytes.size(); i += kC) {
    bytes[i] = luts[0][bytes[i]];
    bytes[i + 1] = luts[1][bytes[i + 1]];
    bytes[i + 2] = luts[2][bytes[i + 2]];
  }
}

std::array<std::array<std::uint32_t, 256>, kC> histograms(const Image& img) {
  std::array<std::array<std::uint32_t, 256>, kC> hist{};
  auto bytes = img.bytes();
  for (std::size_t i = 0; i < bytes.size(); i += kC) {
    ++hist[0][bytes[i]];
    ++hist[1][bytes[i + 1]];
    ++hist[2][bytes[i + 2]];
  }
  return hist;
}

Image grayscale(const Image& img) {
  Image out(img.dims());
  auto src = img.bytes();
  auto dst = out.bytes();
  for (std::size_t i = 0; i < src.size(); i += kC) {
    const std::uint8_t l = luminance(src[i], src[i + 1], src[i + 2]);
    dst[i] = dst[i + 1] = dst[i + 2] = l;
  }
  return out;
}

int translate_pixels(const ParamRange& range, double param, int side) {
  const double px = range.unit == ParamUnit::kFraction ? param * side : param;
  return static_cast<int>(std::lround(px));
}

double parse_number(std::string_view token, std::string_view source, int line,
                    std::string_view field) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw SchemaError(std::string(source), line, std::string(field),
                      "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string_view op_kind_name(OpKind kind) { return kNames[index_of(kind)]; }

std::optional<OpKind> op_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<OpKind>(i);
  }
  return std::nullopt;
}

bool is_signed(OpKind kind) {
  switch (kind) {
    case OpKind::kShearX:
    case OpKind::kShearY:
    case OpKind::kTranslateX:
    case OpKind::kTranslateY:
    case OpKind::kRotate:
      return true;
    default:
      return false;
  }
}

bool is_parameterized(OpKind kind) {
  return kind != OpKind::kAutoContrast && kind != OpKind::kInvert && kind != OpKind::kEqualize;
}

// ---------------------------------------------------------------------------
// MagnitudeTable

MagnitudeTable MagnitudeTable::parse(std::string_view text, std::string_view profile,
                                     std::string_view source_name) {
  const std::string source(source_name);
  MagnitudeTable table;
  table.profile_ = std::string(profile);

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!saw_header) {
      if (tok.size() != 2 || tok[0] != "inaug-magnitudes" || tok[1] != "v1") {
        throw SchemaError(source, line_no, "header", "expected 'inaug-magnitudes v1'");
      }
      saw_header = true;
      continue;
    }
    if (tok.size() != 4 && tok.size() != 5) {
      throw SchemaError(source, line_no, "row", "expected '<profile> <kind> <min> <max> [unit]'");
    }
    const auto kind = op_kind_from_name(tok[1]);
    if (!kind) throw SchemaError(source, line_no, "kind", "unknown op kind '" + tok[1] + "'");
    if (!is_parameterized(*kind)) {
      throw SchemaError(source, line_no, "kind", tok[1] + " takes no parameter");
    }
    ParamRange range;
    range.min = parse_number(tok[2], source, line_no, "min");
    range.max = parse_number(tok[3], source, line_no, "max");
    if (tok.size() == 5) {
      if (tok[4] == "px") {
        range.unit = ParamUnit::kAbsolute;
      } else if (tok[4] == "frac") {
        range.unit = ParamUnit::kFraction;
      } else {
        throw SchemaError(source, line_no, "unit", "expected 'px' or 'frac'");
      }
    }
    if (tok[0] != profile) continue;
    if (table.ranges_[index_of(*kind)]) {
      throw SchemaError(source, line_no, "kind", "duplicate row for " + tok[1]);
    }
    table.ranges_[index_of(*kind)] = range;
  }
  if (!saw_header) throw SchemaError(source, 0, "header", "empty magnitude table");
  for (OpKind kind : kAllOpKinds) {
    if (is_parameterized(kind) && !table.ranges_[index_of(kind)]) {
      throw SchemaError(source, 0, std::string(op_kind_name(kind)),
                        "profile '" + std::string(profile) + "' has no range for this kind");
    }
  }
  return table;
}

const MagnitudeTable& MagnitudeTable::shipped(std::string_view profile) {
  static const MagnitudeTable cifar =
      parse(read_data_file("magnitudes.txt"), "cifar", "magnitudes.txt");
  static const MagnitudeTable imagenet =
      parse(read_data_file("magnitudes.txt"), "imagenet", "magnitudes.txt");
  if (profile == "cifar") return cifar;
  if (profile == "imagenet") return imagenet;
  throw ConfigError("unknown magnitude profile '" + std::string(profile) +
                    "' (expected cifar or imagenet)");
}

const ParamRange& MagnitudeTable::range(OpKind kind) const {
  const auto& r = ranges_[index_of(kind)];
  if (!r) throw InvalidArgument(std::string(op_kind_name(kind)) + " has no magnitude range");
  return *r;
}

double MagnitudeTable::param(OpKind kind, int level) const {
  const ParamRange& r = range(kind);
  return r.min + (r.max - r.min) * level / kMaxLevel;
}

// ---------------------------------------------------------------------------
// Geometric kernels

Image shear_x(const Image& img, double shear) {
  return warp_nearest(img, [shear](double x, double y, double& u, double& v) {
    u = x + shear * y;
    v = y;
  });
}

Image shear_y(const Image& img, double shear) {
  return warp_nearest(img, [shear](double x, double y, double& u, double& v) {
    u = x;
    v = y + shear * x;
  });
}

Image translate(const Image& img, int dx, int dy) {
  const int w = img.width();
  const int h = img.height();
  Image out(w, h, kFillGray);
  // Integer shift: destination x reads source x + dx.
  const int x0 = std::max(0, -dx);
  const int x1 = std::min(w, w - dx);
  if (x1 <= x0) return out;
  const std::size_t n = static_cast<std::size_t>(x1 - x0) * kC;
  for (int y = 0; y < h; ++y) {
    const int sy = y + dy;
    if (sy < 0 || sy >= h) continue;
    std::memcpy(out.row(y) + x0 * kC, img.row(sy) + (x0 + dx) * kC, n);
  }
  return out;
}

Image rotate(const Image& img, double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double cx = img.width() / 2.0;
  const double cy = img.height() / 2.0;
  return warp_nearest(img, [=](double x, double y, double& u, double& v) {
    const double dx = x - cx;
    const double dy = y - cy;
    u = cx + c * dx - s * dy;
    v = cy + s * dx + c * dy;
  });
}

// ---------------------------------------------------------------------------
// Color kernels

Image autocontrast(const Image& img) {
  const auto hist = histograms(img);
  std::array<Lut, kC> luts;
  for (int c = 0; c < kC; ++c) {
    int lo = 0;
    while (lo < 255 && hist[c][lo] == 0) ++lo;
    int hi = 255;
    while (hi > 0 && hist[c][hi] == 0) --hi;
    for (int v = 0; v < 256; ++v) {
      if (hi <= lo) {
        luts[c][v] = static_cast<std::uint8_t>(v);
      } else {
        // floor((v - lo) * 255 / span + 1/2) in exact integer arithmetic.
        const int span = hi - lo;
        const int num = std::clamp(v - lo, 0, span) * 255 * 2 + span;
        luts[c][v] = static_cast<std::uint8_t>(num / (2 * span));
      }
    }
  }
  Image out = img;
  apply_luts(out, luts);
  return out;
}

Image invert(const Image& img) {
  Image out(img.dims());
  simd::active_kernels().invert(img.bytes().data(), out.bytes().data(), img.size_bytes());
  return out;
}

Image equalize(const Image& img) {
  const auto hist = histograms(img);
  std::array<Lut, kC> luts;
  for (int c = 0; c < kC; ++c) {
    std::uint64_t total = 0;
    std::uint32_t last = 0;
    for (int v = 0; v < 256; ++v) {
      total += hist[c][v];
      if (hist[c][v] != 0) last = hist[c][v];
    }
    const std::uint64_t step = (total - last) / 255;
    for (int v = 0; v < 256; ++v) luts[c][v] = static_cast<std::uint8_t>(v);
    if (step == 0) continue;
    std::uint64_t acc = step / 2;
    for (int v = 0; v < 256; ++v) {
      luts[c][v] = static_cast<std::uint8_t>(std::min<std::uint64_t>(acc / step, 255));
      acc += hist[c][v];
    }
  }
  Image out = img;
  apply_luts(out, luts);
  return out;
}

Image solarize(const Image& img, int threshold) {
  if (threshold < 0 || threshold > 256) {
    throw InvalidArgument("solarize threshold must be in [0, 256]");
  }
  Image out(img.dims());
  simd::active_kernels().solarize(img.bytes().data(), out.bytes().data(), img.size_bytes(),
                                  threshold);
  return out;
}

Image posterize(const Image& img, int bits) {
  if (bits < 1 || bits > 8) throw InvalidArgument("posterize bits must be in [1, 8]");
  const auto m = static_cast<std::uint8_t>(0xFF << (8 - bits));
  Image out(img.dims());
  simd::active_kernels().mask(img.bytes().data(), out.bytes().data(), img.size_bytes(), m);
  return out;
}

Image contrast(const Image& img, double factor) {
  std::uint64_t sum = 0;
  auto src = img.bytes();
  for (std::size_t i = 0; i < src.size(); i += kC) sum += luminance(src[i], src[i + 1], src[i + 2]);
  const double mean = static_cast<double>(sum) / (static_cast<double>(src.size()) / kC);
  const auto ref = static_cast<float>(std::floor(mean + 0.5));
  Image out(img.dims());
  simd::active_kernels().blend_const(src.data(), out.bytes().data(), src.size(), ref,
                                     static_cast<float>(factor));
  return out;
}

Image color(const Image& img, double factor) {
  const Image gray = grayscale(img);
  Image out(img.dims());
  simd::active_kernels().blend(img.bytes().data(), gray.bytes().data(), out.bytes().data(),
                               img.size_bytes(), static_cast<float>(factor));
  return out;
}

Image brightness(const Image& img, double factor) {
  Image out(img.dims());
  simd::active_kernels().blend_const(img.bytes().data(), out.bytes().data(), img.size_bytes(),
                                     0.0f, static_cast<float>(factor));
  return out;
}

Image sharpness(const Image& img, double factor) {
  const int w = img.width();
  const int h = img.height();
  Image smooth = img;
  // [[1 1 1] [1 5 1] [1 1 1]] / 13 on interior pixels, rounded.
  for (int y = 1; y + 1 < h; ++y) {
    const std::uint8_t* up = img.row(y - 1);
    const std::uint8_t* mid = img.row(y);
    const std::uint8_t* down = img.row(y + 1);
    std::uint8_t* dst = smooth.row(y);
    for (int i = kC; i < (w - 1) * kC; ++i) {
      const int s = up[i - kC] + up[i] + up[i + kC] + mid[i - kC] + 5 * mid[i] + mid[i + kC] +
                    down[i - kC] + down[i] + down[i + kC];
      dst[i] = static_cast<std::uint8_t>((s + 6) / 13);
    }
  }
  Image out(img.dims());
  simd::active_kernels().blend(img.bytes().data(), smooth.bytes().data(), out.bytes().data(),
                               img.size_bytes(), static_cast<float>(factor));
  return out;
}

Image cutout(const Image& img, Dims cut, int cx, int cy, Rgb fill) {
  Image out = img;
  if (cut.w <= 0 || cut.h <= 0) return out;
  const Rect box{cx - cut.w / 2, cy - cut.h / 2, cut.w, cut.h};
  const int x0 = std::max(box.x, 0);
  const int y0 = std::max(box.y, 0);
  const int x1 = std::min(box.x + box.w, img.width());
  const int y1 = std::min(box.y + box.h, img.height());
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) out.set_pixel(x, y, fill);
  }
  return out;
}

// ---------------------------------------------------------------------------

Image apply_op(Image img, const OpSpec& spec, const OpDraw& draw, const MagnitudeTable& table) {
  if (!draw.fired) return img;
  const OpKind kind = spec.kind;
  double param = 0.0;
  if (is_parameterized(kind)) {
    param = table.param(kind, std::clamp(spec.magnitude, 0, kMaxLevel));
    if (is_signed(kind) && draw.direction < 0) param = -param;
  }
  switch (kind) {
    case OpKind::kShearX:
      return shear_x(img, param);
    case OpKind::kShearY:
      return shear_y(img, param);
    case OpKind::kTranslateX:
      return translate(img, translate_pixels(table.range(kind), param, img.width()), 0);
    case OpKind::kTranslateY:
      return translate(img, 0, translate_pixels(table.range(kind), param, img.height()));
    case OpKind::kRotate:
      return rotate(img, param);
    case OpKind::kAutoContrast:
      return autocontrast(img);
    case OpKind::kInvert:
      return invert(img);
    case OpKind::kEqualize:
      return equalize(img);
    case OpKind::kSolarize:
      return solarize(img, std::clamp(static_cast<int>(std::lround(param)), 0, 256));
    case OpKind::kPosterize:
      return posterize(img, std::clamp(static_cast<int>(std::lround(param)), 1, 8));
    case OpKind::kContrast:
      return contrast(img, param);
    case OpKind::kColor:
      return color(img, param);
    case OpKind::kBrightness:
      return brightness(img, param);
    case OpKind::kSharpness:
      return sharpness(img, param);
    case OpKind::kCutOut: {
      const ParamRange& r = table.range(kind);
      const int side = static_cast<int>(std::lround(
          r.unit == ParamUnit::kFraction ? param * std::min(img.width(), img.height()) : param));
      const auto cx = static_cast<int>(((draw.aux & 0xFFFFFFFFull) * img.width()) >> 32);
      const auto cy = static_cast<int>(((draw.aux >> 32) * img.height()) >> 32);
      return cutout(img, {side, side}, cx, cy);
    }
  }
  return img;
}

}  // namespace inaug
