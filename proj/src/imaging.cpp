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

#include "inaug/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "inaug/error.hpp"
#include "inaug/simd/kernels.hpp"

namespace inaug {
namespace {

constexpr int kC = Image::kChannels;

Image resize_nearest(const Image& img, Dims target) {
  const int sw = img.width();
  const int sh = img.height();
  std::vector<int> col(target.w);
  for (int x = 0; x < target.w; ++x) {
    const std::int64_t s = (std::int64_t{2} * x + 1) * sw / (std::int64_t{2} * target.w);
    col[x] = static_cast<int>(std::min<std::int64_t>(s, sw - 1)) * kC;
  }
  Image out(target);
  for (int y = 0; y < target.h; ++y) {
    const std::int64_t sy = (std::int64_t{2} * y + 1) * sh / (std::int64_t{2} * target.h);
    const std::uint8_t* src = img.row(static_cast<int>(std::min<std::int64_t>(sy, sh - 1)));
    std::uint8_t* dst = out.row(y);
    for (int x = 0; x < target.w; ++x) {
      std::memcpy(dst + x * kC, src + col[x], kC);
    }
  }
  return out;
}

struct Tap {
  int i0;
  int i1;
  float frac;
};

// Half-pixel-center source coordinate, clamped to [0, n - 1].
Tap bilinear_tap(int dst_index, int src_extent, int dst_extent) {
  const double scale = static_cast<double>(src_extent) / dst_extent;
  double s = (dst_index + 0.5) * scale - 0.5;
  s = std::clamp(s, 0.0, static_cast<double>(src_extent - 1));
  const int i0 = static_cast<int>(std::floor(s));
  const int i1 = std::min(i0 + 1, src_extent - 1);
  return {i0, i1, static_cast<float>(s - i0)};
}

Image resize_bilinear(const Image& img, Dims target) {
  const auto& k = simd::active_kernels();
  const int sw = img.width();
  const int sh = img.height();
  const std::size_t n = static_cast<std::size_t>(target.w) * kC;

  std::vector<Tap> cols(target.w);
  for (int x = 0; x < target.w; ++x) cols[x] = bilinear_tap(x, sw, target.w);
  std::vector<Tap> rows(target.h);
  std::vector<char> needed(sh, 0);
  for (int y = 0; y < target.h; ++y) {
    rows[y] = bilinear_tap(y, sh, target.h);
    needed[rows[y].i0] = 1;
    needed[rows[y].i1] = 1;
  }

  // Horizontal pass for every referenced source row.
  std::vector<float> horiz(static_cast<std::size_t>(sh) * n);
  for (int sy = 0; sy < sh; ++sy) {
    if (!needed[sy]) continue;
    const std::uint8_t* src = img.row(sy);
    float* dst = horiz.data() + sy * n;
    for (int x = 0; x < target.w; ++x) {
      const Tap& t = cols[x];
      const float s = 1.0f - t.frac;
      for (int c = 0; c < kC; ++c) {
        const float a = src[t.i0 * kC + c];
        const float b = src[t.i1 * kC + c];
        dst[x * kC + c] = s * a + t.frac * b;
      }
    }
  }

  Image out(target);
  for (int y = 0; y < target.h; ++y) {
    const Tap& t = rows[y];
    k.lerp_u8(horiz.data() + t.i0 * n, horiz.data() + t.i1 * n, out.row(y), n, t.frac);
  }
  return out;
}

// Source index for padded coordinate k (relative to the original origin).
int reflect_index(int k, int n) {
  const int period = 2 * n;
  int m = k % period;
  if (m < 0) m += period;
  return m >= n ? period - 1 - m : m;
}

int wrap_index(int k, int n) {
  int m = k % n;
  return m < 0 ? m + n : m;
}

}  // namespace

Rect clamp_rect(const Rect& r, Dims dims) {
  const std::int64_t x0 = std::max<std::int64_t>(r.x, 0);
  const std::int64_t y0 = std::max<std::int64_t>(r.y, 0);
  const std::int64_t x1 = std::min<std::int64_t>(std::int64_t{r.x} + std::max(r.w, 0), dims.w);
  const std::int64_t y1 = std::min<std::int64_t>(std::int64_t{r.y} + std::max(r.h, 0), dims.h);
  if (x1 <= x0 || y1 <= y0) {
    return {static_cast<int>(std::clamp<std::int64_t>(x0, 0, dims.w)),
            static_cast<int>(std::clamp<std::int64_t>(y0, 0, dims.h)), 0, 0};
  }
  return {static_cast<int>(x0), static_cast<int>(y0), static_cast<int>(x1 - x0),
          static_cast<int>(y1 - y0)};
}

Image resize(const Image& img, Dims target, InterpMode interp) {
  if (!target.valid()) {
    throw InvalidArgument("resize target must be >= 1x1, got " + std::to_string(target.w) + "x" +
                          std::to_string(target.h));
  }
  if (target == img.dims()) return img;
  return interp == InterpMode::kNearest ? resize_nearest(img, target)
                                        : resize_bilinear(img, target);
}

Image crop_clamped(const Image& img, const Rect& r) {
  const Rect c = clamp_rect(r, img.dims());
  if (c.empty()) {
    throw EmptyIntersection("rect (" + std::to_string(r.x) + "," + std::to_string(r.y) + "," +
                            std::to_string(r.w) + "," + std::to_string(r.h) +
                            ") does not intersect a " + std::to_string(img.width()) + "x" +
                            std::to_string(img.height()) + " image");
  }
  if (c.w == img.width() && c.h == img.height()) return img;
  Image out(c.w, c.h);
  const std::size_t n = static_cast<std::size_t>(c.w) * kC;
  for (int y = 0; y < c.h; ++y) {
    std::memcpy(out.row(y), img.row(c.y + y) + c.x * kC, n);
  }
  return out;
}

void blit_clipped_into(Image& dst, const Image& src, int x, int y) {
  const Rect c = clamp_rect({x, y, src.width(), src.height()}, dst.dims());
  if (c.empty()) return;
  const int sx = c.x - x;
  const int sy = c.y - y;
  const std::size_t n = static_cast<std::size_t>(c.w) * kC;
  for (int r = 0; r < c.h; ++r) {
    std::memcpy(dst.row(c.y + r) + c.x * kC, src.row(sy + r) + sx * kC, n);
  }
}

Image blit_clipped(const Image& dst, const Image& src, int x, int y) {
  Image out = dst;
  blit_clipped_into(out, src, x, y);
  return out;
}

Image pad(const Image& img, int d, PadMode mode) {
  if (d < 0) throw InvalidArgument("pad amount must be >= 0, got " + std::to_string(d));
  if (d == 0) return img;
  const int w = img.width();
  const int h = img.height();
  Image out(w + 2 * d, h + 2 * d);
  if (mode == PadMode::kZero) {
    blit_clipped_into(out, img, d, d);
    return out;
  }
  auto map = [mode](int k, int n) {
    return mode == PadMode::kSymmetric ? reflect_index(k, n) : wrap_index(k, n);
  };
  std::vector<int> col(out.width());
  for (int x = 0; x < out.width(); ++x) col[x] = map(x - d, w) * kC;
  for (int y = 0; y < out.height(); ++y) {
    const std::uint8_t* src = img.row(map(y - d, h));
    std::uint8_t* dst = out.row(y);
    for (int x = 0; x < out.width(); ++x) std::memcpy(dst + x * kC, src + col[x], kC);
  }
  return out;
}

Image gaussian_blur(const Image& img, double sigma) {
  if (!(sigma >= 0.0)) throw InvalidArgument("blur sigma must be >= 0");
  if (sigma == 0.0) return img;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  if (radius == 0) return img;
  const int taps = 2 * radius + 1;
  std::vector<double> wd(taps);
  double total = 0.0;
  for (int k = 0; k < taps; ++k) {
    const double t = k - radius;
    wd[k] = std::exp(-(t * t) / (2.0 * sigma * sigma));
    total += wd[k];
  }
  std::vector<float> weights(taps);
  for (int k = 0; k < taps; ++k) weights[k] = static_cast<float>(wd[k] / total);

  const auto& kern = simd::active_kernels();
  const int w = img.width();
  const int h = img.height();
  const std::size_t n = static_cast<std::size_t>(w) * kC;

  // Horizontal: widen each row into an edge-clamped padded buffer, then a
  // stride-3 correlation over interleaved channels.
  std::vector<float> padded(static_cast<std::size_t>(w + 2 * radius) * kC);
  std::vector<float> horiz(static_cast<std::size_t>(h) * n);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* src = img.row(y);
    kern.widen(src, padded.data() + radius * kC, n);
    for (int i = 0; i < radius; ++i) {
      for (int c = 0; c < kC; ++c) {
        padded[i * kC + c] = src[c];
        padded[(radius + w + i) * kC + c] = src[(w - 1) * kC + c];
      }
    }
    kern.correlate(padded.data(), horiz.data() + y * n, n, weights.data(), taps, kC);
  }

  Image out(w, h);
  std::vector<const float*> rows(taps);
  for (int y = 0; y < h; ++y) {
    for (int k = 0; k < taps; ++k) {
      rows[k] = horiz.data() + std::clamp(y + k - radius, 0, h - 1) * n;
    }
    kern.correlate_rows_u8(rows.data(), out.row(y), n, weights.data(), taps);
  }
  return out;
}

Image flip_horizontal(const Image& img) {
  Image out(img.dims());
  const int w = img.width();
  for (int y = 0; y < img.height(); ++y) {
    const std::uint8_t* src = img.row(y);
    std::uint8_t* dst = out.row(y);
    for (int x = 0; x < w; ++x) std::memcpy(dst + x * kC, src + (w - 1 - x) * kC, kC);
  }
  return out;
}

Image center_crop(const Image& img, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("center crop fraction must be in (0, 1]");
  }
  const int cw = std::max(1, static_cast<int>(std::lround(img.width() * fraction)));
  const int ch = std::max(1, static_cast<int>(std::lround(img.height() * fraction)));
  return crop_clamped(img, {(img.width() - cw) / 2, (img.height() - ch) / 2, cw, ch});
}

}  // namespace inaug
