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

#ifndef INAUG_POLICY_HPP_
#define INAUG_POLICY_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "inaug/image.hpp"
#include "inaug/rng.hpp"
#include "inaug/transforms.hpp"

namespace inaug {

/// Ordered ops o_1..o_k applied left to right.
struct SubPolicy {
  std::vector<OpSpec> ops;
  friend bool operator==(const SubPolicy&, const SubPolicy&) = default;
};

/// A finite set of sub-policies; one is drawn uniformly per image.
struct Policy {
  std::string name;
  std::vector<SubPolicy> subpolicies;

  /// Longest sub-policy; fixes the per-image draw budget.
  std::size_t max_ops() const;
  friend bool operator==(const Policy&, const Policy&) = default;
};

/// Policy file format:
///
///   inaug-policy v1
///   name <identifier>
///   (Kind, probability, level) (Kind, probability, level) ...   # one sub-policy per line
///
/// '#' starts a comment. Throws SchemaError with line/field on bad input.
Policy parse_policy(std::string_view text, std::string_view source_name = "policy");
std::string serialize_policy(const Policy& policy);

/// Loads a shipped policy by name ("cifar-aa") or, if `name_or_path` names an
/// existing file, that file.
Policy load_policy(std::string_view name_or_path);

/// All stochastic choices for one image, drawn before any pixel is touched so
/// the same function can be applied to the base image and to every patch.
struct SampledTransform {
  std::size_t subpolicy = 0;
  std::vector<OpDraw> draws;    // one per op of the chosen sub-policy
  std::vector<int> magnitudes;  // resolved level per op

  friend bool operator==(const SampledTransform&, const SampledTransform&) = default;
};

/// Draws per op slot: fire, direction, aux (CutOut center).
inline constexpr std::uint64_t kDrawsPerOp = 3;

/// 1 (sub-policy choice) + 3 * policy.max_ops(). Consumed regardless of which
/// sub-policy is chosen or which ops fire.
std::uint64_t transform_draw_count(const Policy& policy);

SampledTransform sample_transform(const Policy& policy, RngState& rng);

/// Keeps the sub-policy of `t` but redraws fired/direction/aux for every op
/// (3 * max_ops() draws). Used when patches do not share coin flips.
SampledTransform resample_ops(const SampledTransform& t, const Policy& policy, RngState& rng);

/// Composition of the chosen sub-policy with the pre-sampled randomness.
Image apply_transform(Image img, const SampledTransform& t, const Policy& policy,
                      const MagnitudeTable& table);

}  // namespace inaug

#endif  // INAUG_POLICY_HPP_
