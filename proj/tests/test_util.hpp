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

#ifndef INAUG_TESTS_TEST_UTIL_HPP_
#define INAUG_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "inaug/image.hpp"

namespace inaug::testing {

inline Image random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Image img(w, h);
  for (auto& b : img.bytes()) b = static_cast<std::uint8_t>(gen() & 0xFF);
  return img;
}

/// Largest per-byte absolute difference; -1 when the dims differ.
inline int max_abs_diff(const Image& a, const Image& b) {
  if (a.dims() != b.dims()) return -1;
  int m = 0;
  auto x = a.bytes();
  auto y = b.bytes();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(int{x[i]} - int{y[i]}));
  return m;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("inaug_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace inaug::testing

#endif  // INAUG_TESTS_TEST_UTIL_HPP_
