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

// Deterministic on-disk datasets for tests.

#ifndef INAUG_TESTS_FIXTURES_HPP_
#define INAUG_TESTS_FIXTURES_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "inaug/datasets.hpp"
#include "inaug/pipeline.hpp"

namespace inaug::testing {

struct CifarFixture {
  std::vector<Image> images;
  std::vector<int> labels;
};

/// Writes `n` CIFAR-10 (or CIFAR-100 when `fine_classes` > 10) records of
/// synthetic 32x32 images to `path`.
inline CifarFixture write_cifar_file(const std::filesystem::path& path, int n, std::uint64_t seed,
                                     int fine_classes = 10) {
  CifarFixture fx;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  const bool wide = fine_classes > 10;
  for (int i = 0; i < n; ++i) {
    const Image img = make_synthetic_image({kCifarSide, kCifarSide}, seed + i);
    const int label = static_cast<int>((seed + 7 * i) % fine_classes);
    std::vector<std::uint8_t> rec((wide ? 2 : 1) + kCifarPixelBytes);
    if (wide) {
      rec[0] = static_cast<std::uint8_t>(label / 5);  // coarse
      rec[1] = static_cast<std::uint8_t>(label);
    } else {
      rec[0] = static_cast<std::uint8_t>(label);
    }
    image_to_cifar_planes(img, std::span(rec).subspan(wide ? 2 : 1));
    out.write(reinterpret_cast<const char*>(rec.data()), static_cast<std::streamsize>(rec.size()));
    fx.images.push_back(img);
    fx.labels.push_back(label);
  }
  return fx;
}

/// class_a/ and class_b/ with PNG images of mixed sizes.
inline void write_image_dir(const std::filesystem::path& root, int per_class, std::uint64_t seed) {
  int k = 0;
  for (const char* cls : {"class_a", "class_b"}) {
    std::filesystem::create_directories(root / cls);
    for (int i = 0; i < per_class; ++i, ++k) {
      const Dims d{24 + 8 * (k % 3), 20 + 4 * (k % 5)};
      char name[32];
      std::snprintf(name, sizeof(name), "img_%03d.png", i);
      write_png(root / cls / name, make_synthetic_image(d, seed + k));
    }
  }
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Relative path -> bytes for every regular file under root.
inline std::map<std::string, std::string> tree_contents(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), root).string()] = read_file(e.path());
  }
  return out;
}

}  // namespace inaug::testing

#endif  // INAUG_TESTS_FIXTURES_HPP_
