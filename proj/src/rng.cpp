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

#include "inaug/rng.hpp"

namespace inaug {
namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

// Counter word 3 tag reserved for split(); plain draws would need 2^96
// increments to reach it.
constexpr std::uint32_t kSplitTag = 0x53504C54;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t lo0, hi0, lo1, hi1;
  mulhilo(kPhiloxM4x32A, c[0], lo0, hi0);
  mulhilo(kPhiloxM4x32B, c[2], lo1, hi1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

PhiloxKey split_key(std::uint64_t key) {
  return {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kPhiloxW32A;
      key[1] += kPhiloxW32B;
    }
    counter = round(counter, key);
  }
  return counter;
}

std::uint64_t RngState::next() {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(counter_lo_),
                          static_cast<std::uint32_t>(counter_lo_ >> 32),
                          static_cast<std::uint32_t>(counter_hi_),
                          static_cast<std::uint32_t>(counter_hi_ >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, split_key(key_));
  if (++counter_lo_ == 0) ++counter_hi_;
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

RngState RngState::split(std::uint64_t label) const {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(label),
                          static_cast<std::uint32_t>(label >> 32), 0, kSplitTag};
  const PhiloxCounter out = philox4x32_10(ctr, split_key(key_));
  return RngState((static_cast<std::uint64_t>(out[1]) << 32) | out[0]);
}

void RngState::skip(std::uint64_t draws) {
  const std::uint64_t before = counter_lo_;
  counter_lo_ += draws;
  if (counter_lo_ < before) ++counter_hi_;
}

RngState derive_image_rng(std::uint64_t global_seed, std::uint64_t epoch,
                          std::uint64_t image_index) {
  return RngState(global_seed).split(epoch).split(image_index);
}

}  // namespace inaug
