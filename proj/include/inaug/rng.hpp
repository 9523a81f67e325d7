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

#ifndef INAUG_RNG_HPP_
#define INAUG_RNG_HPP_

#include <array>
#include <cstdint>

namespace inaug {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3").
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Counter-based random stream: 64-bit key, 128-bit counter.
///
/// One "draw" is one call to next() (or any helper below, each of which
/// consumes exactly one draw). A draw evaluates the block cipher at the
/// current counter and then increments the counter, so the state transition is
/// pure and streams can be positioned arbitrarily with skip().
class RngState {
 public:
  explicit RngState(std::uint64_t key = 0) : key_(key) {}
  RngState(std::uint64_t key, std::uint64_t counter_lo, std::uint64_t counter_hi)
      : key_(key), counter_lo_(counter_lo), counter_hi_(counter_hi) {}

  std::uint64_t next();

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n) by 64x64 -> 128 multiply-high; n must be >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_int(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// True with probability p. p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform() < p; }

  /// Independent stream; a pure function of (key, label), not of the counter.
  RngState split(std::uint64_t label) const;

  void skip(std::uint64_t draws);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter_lo() const { return counter_lo_; }
  std::uint64_t counter_hi() const { return counter_hi_; }

  friend bool operator==(const RngState&, const RngState&) = default;

 private:
  std::uint64_t key_;
  std::uint64_t counter_lo_ = 0;
  std::uint64_t counter_hi_ = 0;
};

/// Per-image stream for the batch pipeline: a pure function of the triple,
/// independent of worker count or scheduling.
RngState derive_image_rng(std::uint64_t global_seed, std::uint64_t epoch,
                          std::uint64_t image_index);

}  // namespace inaug

#endif  // INAUG_RNG_HPP_
