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

#ifndef INAUG_IMAGE_HPP_
#define INAUG_IMAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace inaug {

/// Width and height in pixels. Valid dims have both sides >= 1.
struct Dims {
  int w = 1;
  int h = 1;

  std::int64_t area() const { return std::int64_t{w} * h; }
  bool valid() const { return w >= 1 && h >= 1; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Axis-aligned rectangle. Offsets may lie outside any image; consumers clamp.
struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool empty() const { return w <= 0 || h <= 0; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Fill used by geometric kernels and CutOut.
inline constexpr Rgb kFillGray{128, 128, 128};

/// Owned H x W x 3 interleaved 8-bit RGB buffer, row-major.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() : Image(1, 1) {}
  Image(int width, int height, Rgb fill = {});
  explicit Image(Dims dims, Rgb fill = {}) : Image(dims.w, dims.h, fill) {}
  /// Takes ownership of `data`; its length must be width * height * 3.
  Image(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  Dims dims() const { return {width_, height_}; }
  std::size_t stride() const { return static_cast<std::size_t>(width_) * kChannels; }
  std::size_t size_bytes() const { return data_.size(); }

  std::span<const std::uint8_t> bytes() const { return data_; }
  std::span<std::uint8_t> bytes() { return data_; }

  const std::uint8_t* row(int y) const { return data_.data() + y * stride(); }
  std::uint8_t* row(int y) { return data_.data() + y * stride(); }

  std::uint8_t at(int x, int y, int c) const { return row(y)[x * kChannels + c]; }
  std::uint8_t& at(int x, int y, int c) { return row(y)[x * kChannels + c]; }

  Rgb pixel(int x, int y) const {
    const std::uint8_t* p = row(y) + x * kChannels;
    return {p[0], p[1], p[2]};
  }
  void set_pixel(int x, int y, Rgb v) {
    std::uint8_t* p = row(y) + x * kChannels;
    p[0] = v.r;
    p[1] = v.g;
    p[2] = v.b;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

}  // namespace inaug

#endif  // INAUG_IMAGE_HPP_
