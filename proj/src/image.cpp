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

#include "inaug/image.hpp"

#include <algorithm>
#include <string>

#include "inaug/error.hpp"

namespace inaug {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("image dims must be >= 1, got " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

}  // namespace

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  check_dims(width, height);
  data_.resize(static_cast<std::size_t>(width) * height * kChannels);
  if (fill.r == fill.g && fill.g == fill.b) {
    std::fill(data_.begin(), data_.end(), fill.r);
  } else {
    for (std::size_t i = 0; i < data_.size(); i += kChannels) {
      data_[i] = fill.r;
      data_[i + 1] = fill.g;
      data_[i + 2] = fill.b;
    }
  }
}

Image::Image(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  const std::size_t expected = static_cast<std::size_t>(width) * height * kChannels;
  if (data_.size() != expected) {
    throw InvalidArgument("image buffer holds " + std::to_string(data_.size()) +
                          " bytes, expected " + std::to_string(expected));
  }
}

}  // namespace inaug
