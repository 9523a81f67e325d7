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

#ifndef INAUG_INAUGMENT_HPP_
#define INAUG_INAUGMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "inaug/image.hpp"
#include "inaug/imaging.hpp"
#include "inaug/policy.hpp"
#include "inaug/rng.hpp"
#include "inaug/transforms.hpp"

// Internal augmentation: copy patches out of an image, resize and augment
// them with the same sampled transform as the image, and paste them back in
// decreasing order of size.
//
// Randomness. inaugment() splits the per-image stream into fixed substreams
// so that every stage consumes a count that depends only on the config and
// the policy shape:
//
//   split(kTransformStream)  sample_transform: 1 + 3 * max_ops draws
//   split(kCopyStream)       copy_patches: 4 draws per patch (size, x, y, target)
//   split(kPasteStream)      plan_paste: 3 draws per patch (keep, x, y)
//   split(kPatchDrawStream + i)  patch i's own op draws when share_draws is off
namespace inaug {

inline constexpr std::uint64_t kTransformStream = 0;
inline constexpr std::uint64_t kCopyStream = 1;
inline constexpr std::uint64_t kPasteStream = 2;
inline constexpr std::uint64_t kPatchDrawStream = 16;

inline constexpr std::uint64_t kCopyDrawsPerPatch = 4;
inline constexpr std::uint64_t kPasteDrawsPerPatch = 3;

/// Fixed H_p x W_p copy size.
struct FixedSize {
  Dims dims;
};
/// Square copy with side uniform in [lo, hi].
struct RandomSize {
  int lo = 1;
  int hi = 1;
};
using PatchSize = std::variant<FixedSize, RandomSize>;

/// Explicit target S_i.
struct TargetDims {
  Dims dims;
};
/// S_i = round(sigma * copied dims), at least 1 pixel per side. 1.0 keeps size.
struct TargetScale {
  double factor = 1.0;
};
/// Square target with side uniform in [lo, hi].
struct TargetRange {
  int lo = 1;
  int hi = 1;
};
using PatchTarget = std::variant<TargetDims, TargetScale, TargetRange>;

struct PatchSpec {
  PatchSize size = FixedSize{{1, 1}};
  PatchTarget target = TargetScale{1.0};
  double paste_prob = 1.0;

  /// Throws ConfigError on degenerate ranges or probabilities outside [0, 1].
  void validate() const;
};

enum class Ordering { kResizeFirst, kAugmentFirst };

struct InAugConfig {
  std::vector<PatchSpec> patches;
  Ordering ordering = Ordering::kAugmentFirst;
  std::shared_ptr<const Policy> policy;
  MagnitudeTable magnitudes;
  /// Patches reuse the image's fired/direction draws (true) or only its
  /// sub-policy choice (false).
  bool share_draws = true;
  InterpMode interp = InterpMode::kBilinear;

  void validate() const;
};

/// Copied pixels P_i with the rect actually read and the resolved target S_i.
struct Patch {
  Image pixels;
  Rect origin;
  Dims target;
  std::size_t spec_index = 0;
};

struct PasteDecision {
  bool kept = false;
  int x = 0;
  int y = 0;
};

/// Accumulated wall time per stage, in nanoseconds.
struct StageTimes {
  std::int64_t sample_ns = 0;
  std::int64_t copy_ns = 0;
  std::int64_t prepare_ns = 0;
  std::int64_t base_ns = 0;
  std::int64_t paste_ns = 0;

  std::int64_t total_ns() const { return sample_ns + copy_ns + prepare_ns + base_ns + paste_ns; }
};

/// sigma_i = 0.5^(i-1) for i = 1..n.
std::vector<double> halving_scale_schedule(int n);

/// Resolved target for a copied patch of `copied` dims (draws one value from
/// `rng` for TargetRange, none otherwise).
Dims resolve_target(const PatchTarget& target, Dims copied, RngState& rng);

/// Copies the trimmed rect; `requested` must have an in-bounds top-left.
Patch copy_patch(const Image& img, const Rect& requested, Dims target, std::size_t spec_index);

/// n patches in spec order; top-left uniform over the image, trimmed to bounds.
std::vector<Patch> copy_patches(const Image& img, const InAugConfig& cfg, RngState& rng);

/// T(Resize(P_i, S_i)).
std::vector<Image> prepare_resize_first(const std::vector<Patch>& patches, const InAugConfig& cfg,
                                        const SampledTransform& t);
/// Resize(T(P_i), S_i).
std::vector<Image> prepare_augment_first(const std::vector<Patch>& patches,
                                         const InAugConfig& cfg, const SampledTransform& t);
/// Dispatches on cfg.ordering with one transform per patch.
std::vector<Image> prepare_patches(const std::vector<Patch>& patches, const InAugConfig& cfg,
                                   std::span<const SampledTransform> per_patch);

std::vector<PasteDecision> plan_paste(std::span<const PatchSpec> specs, Dims base,
                                      RngState& rng);

/// Indices of kept patches in paste order: area descending, ties in spec order.
std::vector<std::size_t> paste_order(std::span<const Image> prepared,
                                     std::span<const PasteDecision> plan);

Image paste_with_plan(Image base, std::span<const Image> prepared,
                      std::span<const PasteDecision> plan);

/// plan_paste + paste_with_plan.
Image paste_patches(Image base, std::span<const Image> prepared, std::span<const PatchSpec> specs,
                    RngState& rng);

/// End-to-end map. Output dims always equal input dims.
Image inaugment(const Image& img, const InAugConfig& cfg, const RngState& rng,
                StageTimes* times = nullptr);

}  // namespace inaug

#endif  // INAUG_INAUGMENT_HPP_
