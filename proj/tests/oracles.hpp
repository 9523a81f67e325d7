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

// Slow per-pixel reference implementations. They are written from the
// definitions (double precision, no lookup tables, no shared helpers with the
// library) and are used by the unit tests and the acceptance binary.

#ifndef INAUG_TESTS_ORACLES_HPP_
#define INAUG_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "inaug/image.hpp"
#include "inaug/inaugment.hpp"

namespace inaug::testing::oracle {

inline std::uint8_t round_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

inline Rgb sample_or_gray(const Image& src, double u, double v) {
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  if (fu < 0 || fv < 0 || fu >= src.width() || fv >= src.height()) return kFillGray;
  return src.pixel(static_cast<int>(fu), static_cast<int>(fv));
}

inline Image shear_x(const Image& src, double s) {
  Image out(src.dims());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      out.set_pixel(x, y, sample_or_gray(src, (x + 0.5) + s * (y + 0.5), y + 0.5));
    }
  }
  return out;
}

inline Image shear_y(const Image& src, double s) {
  Image out(src.dims());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      out.set_pixel(x, y, sample_or_gray(src, x + 0.5, (y + 0.5) + s * (x + 0.5)));
    }
  }
  return out;
}

/// Counter-clockwise (in image coordinates, y down) rotation about the center
/// as a complex multiplication of the destination offset.
inline Image rotate(const Image& src, double degrees) {
  const std::complex<double> c(src.width() / 2.0, src.height() / 2.0);
  const std::complex<double> turn = std::polar(1.0, degrees * std::numbers::pi / 180.0);
  Image out(src.dims());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      const std::complex<double> p = c + (std::complex<double>(x + 0.5, y + 0.5) - c) * turn;
      out.set_pixel(x, y, sample_or_gray(src, p.real(), p.imag()));
    }
  }
  return out;
}

inline Image translate(const Image& src, int dx, int dy) {
  Image out(src.dims());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      const int sx = x + dx;
      const int sy = y + dy;
      const bool in = sx >= 0 && sy >= 0 && sx < src.width() && sy < src.height();
      out.set_pixel(x, y, in ? src.pixel(sx, sy) : kFillGray);
    }
  }
  return out;
}

template <typename F>
Image per_byte(const Image& src, F f) {
  Image out(src.dims());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<std::uint8_t>(f(src.at(x, y, c), c));
    }
  }
  return out;
}

inline Image invert(const Image& src) {
  return per_byte(src, [](int v, int) { return 255 - v; });
}

inline Image solarize(const Image& src, int threshold) {
  return per_byte(src, [threshold](int v, int) { return v < threshold ? v : 255 - v; });
}

inline Image posterize(const Image& src, int bits) {
  const int q = 1 << (8 - bits);
  return per_byte(src, [q](int v, int) { return v - v % q; });
}

inline Image autocontrast(const Image& src) {
  std::array<int, 3> lo{255, 255, 255};
  std::array<int, 3> hi{0, 0, 0};
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        lo[c] = std::min<int>(lo[c], src.at(x, y, c));
        hi[c] = std::max<int>(hi[c], src.at(x, y, c));
      }
    }
  }
  return per_byte(src, [&](int v, int c) {
    if (hi[c] <= lo[c]) return v;
    return static_cast<int>(round_u8((v - lo[c]) * 255.0 / (hi[c] - lo[c])));
  });
}

/// Cumulative-histogram equalization in the usual imaging-library form.
inline Image equalize(const Image& src) {
  std::array<std::array<long, 256>, 3> lut{};
  for (int c = 0; c < 3; ++c) {
    std::array<long, 256> h{};
    for (int y = 0; y < src.height(); ++y) {
      for (int x = 0; x < src.width(); ++x) ++h[src.at(x, y, c)];
    }
    long total = 0;
    long last_nonzero = 0;
    for (int v = 0; v < 256; ++v) {
      total += h[v];
      if (h[v] > 0) last_nonzero = h[v];
    }
    const long step = (total - last_nonzero) / 255;
    for (int v = 0; v < 256; ++v) lut[c][v] = v;
    if (step == 0) continue;
    long n = step / 2;
    for (int v = 0; v < 256; ++v) {
      lut[c][v] = std::min(255L, n / step);
      n += h[v];
    }
  }
  return per_byte(src, [&](int v, int c) { return static_cast<int>(lut[c][v]); });
}

inline int luma(const Image& src, int x, int y) {
  // ITU-R 601-2, rounded to nearest.
  const double l = 0.299 * src.at(x, y, 0) + 0.587 * src.at(x, y, 1) + 0.114 * src.at(x, y, 2);
  return static_cast<int>(std::floor(l + 0.5));
}

inline Image blend(const Image& src, const Image& ref, double f) {
  Image out(src.dims());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        const double r = ref.at(x, y, c);
        out.at(x, y, c) = round_u8(r + f * (src.at(x, y, c) - r));
      }
    }
  }
  return out;
}

inline Image contrast(const Image& src, double f) {
  double sum = 0;
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) sum += luma(src, x, y);
  }
  const auto m = static_cast<std::uint8_t>(std::floor(sum / src.dims().area() + 0.5));
  return blend(src, Image(src.dims(), Rgb{m, m, m}), f);
}

inline Image color(const Image& src, double f) {
  Image gray(src.dims());
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      const auto l = static_cast<std::uint8_t>(luma(src, x, y));
      gray.set_pixel(x, y, {l, l, l});
    }
  }
  return blend(src, gray, f);
}

inline Image brightness(const Image& src, double f) { return blend(src, Image(src.dims()), f); }

inline Image sharpness(const Image& src, double f) {
  static constexpr double k[3][3] = {{1, 1, 1}, {1, 5, 1}, {1, 1, 1}};
  Image smooth = src;
  for (int y = 1; y + 1 < src.height(); ++y) {
    for (int x = 1; x + 1 < src.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        double s = 0;
        for (int j = -1; j <= 1; ++j) {
          for (int i = -1; i <= 1; ++i) s += k[j + 1][i + 1] * src.at(x + i, y + j, c);
        }
        smooth.at(x, y, c) = round_u8(s / 13.0);
      }
    }
  }
  return blend(src, smooth, f);
}

inline Image cutout(const Image& src, Dims cut, int cx, int cy) {
  Image out = src;
  const int x0 = cx - cut.w / 2;
  const int y0 = cy - cut.h / 2;
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      if (x >= x0 && x < x0 + cut.w && y >= y0 && y < y0 + cut.h) out.set_pixel(x, y, kFillGray);
    }
  }
  return out;
}

/// Per-pixel compositor: each output pixel shows the kept patch that covers
/// it and lies on top in the z-order (larger areas below smaller ones, equal
/// areas stacked in spec order), or the base pixel.
inline Image composite(const Image& base, const std::vector<Image>& patches,
                       const std::vector<PasteDecision>& plan) {
  Image out = base;
  for (int y = 0; y < base.height(); ++y) {
    for (int x = 0; x < base.width(); ++x) {
      int top = -1;
      for (std::size_t i = 0; i < patches.size(); ++i) {
        if (!plan[i].kept) continue;
        const int px = x - plan[i].x;
        const int py = y - plan[i].y;
        if (px < 0 || py < 0 || px >= patches[i].width() || py >= patches[i].height()) continue;
        if (top < 0) {
          top = static_cast<int>(i);
          continue;
        }
        const auto a_top = patches[top].dims().area();
        const auto a_i = patches[i].dims().area();
        // i is above top when strictly smaller, or equal-sized and later.
        if (a_i <= a_top) top = static_cast<int>(i);
      }
      if (top >= 0) out.set_pixel(x, y, patches[top].pixel(x - plan[top].x, y - plan[top].y));
    }
  }
  return out;
}

}  // namespace inaug::testing::oracle

#endif  // INAUG_TESTS_ORACLES_HPP_
