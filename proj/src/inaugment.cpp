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

#include "inaug/inaugment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "inaug/error.hpp"

namespace inaug {
namespace {

using Clock = std::chrono::steady_clock;

class ScopedStage {
 public:
  explicit ScopedStage(std::int64_t* sink) : sink_(sink), start_(sink ? Clock::now() : Clock::time_point{}) {}
  ~ScopedStage() {
    if (sink_ != nullptr) {
      *sink_ += std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_).count();
    }
  }
  ScopedStage(const ScopedStage&) = delete;
  ScopedStage& operator=(const ScopedStage&) = delete;

 private:
  std::int64_t* sink_;
  Clock::time_point start_;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Dims draw_size(const PatchSize& size, RngState& rng) {
  // One draw regardless of the variant.
  const std::uint64_t u = rng.next();
  return std::visit(Overloaded{
                        [](const FixedSize& f) { return f.dims; },
                        [u](const RandomSize& r) {
                          const auto span = static_cast<std::uint64_t>(r.hi - r.lo) + 1;
                          const int side = r.lo + static_cast<int>(
                                                      (static_cast<unsigned __int128>(u) * span) >> 64);
                          return Dims{side, side};
                        },
                    },
                    size);
}

}  // namespace

void PatchSpec::validate() const {
  std::visit(Overloaded{
                 [](const FixedSize& f) {
                   if (!f.dims.valid()) throw ConfigError("fixed patch size must be >= 1x1");
                 },
                 [](const RandomSize& r) {
                   if (r.lo < 1 || r.lo > r.hi) {
                     throw ConfigError("random patch size needs 1 <= lo <= hi");
                   }
                 },
             },
             size);
  std::visit(Overloaded{
                 [](const TargetDims& t) {
                   if (!t.dims.valid()) throw ConfigError("patch target must be >= 1x1");
                 },
                 [](const TargetScale& t) {
                   if (!(t.factor > 0.0) || !std::isfinite(t.factor)) {
                     throw ConfigError("patch scale factor must be > 0");
                   }
                 },
                 [](const TargetRange& t) {
                   if (t.lo < 1 || t.lo > t.hi) {
                     throw ConfigError("patch target range needs 1 <= lo <= hi");
                   }
                 },
             },
             target);
  if (!(paste_prob >= 0.0 && paste_prob <= 1.0)) {
    throw ConfigError("paste probability must be in [0, 1]");
  }
}

void InAugConfig::validate() const {
  if (!policy) throw ConfigError("config has no policy");
  if (policy->subpolicies.empty()) throw ConfigError("policy has no sub-policies");
  for (const auto& p : patches) p.validate();
}

std::vector<double> halving_scale_schedule(int n) {
  std::vector<double> out;
  double s = 1.0;
  for (int i = 0; i < n; ++i, s *= 0.5) out.push_back(s);
  return out;
}

Dims resolve_target(const PatchTarget& target, Dims copied, RngState& rng) {
  return std::visit(
      Overloaded{
          [](const TargetDims& t) { return t.dims; },
          [copied](const TargetScale& t) {
            return Dims{std::max(1, static_cast<int>(std::lround(copied.w * t.factor))),
                        std::max(1, static_cast<int>(std::lround(copied.h * t.factor)))};
          },
          [&rng](const TargetRange& t) {
            const int side = static_cast<int>(rng.uniform_range(t.lo, t.hi));
            return Dims{side, side};
          },
      },
      target);
}

Patch copy_patch(const Image& img, const Rect& requested, Dims target, std::size_t spec_index) {
  Patch p{crop_clamped(img, requested), clamp_rect(requested, img.dims()), target, spec_index};
  return p;
}

std::vector<Patch> copy_patches(const Image& img, const InAugConfig& cfg, RngState& rng) {
  std::vector<Patch> out;
  out.reserve(cfg.patches.size());
  for (std::size_t i = 0; i < cfg.patches.size(); ++i) {
    const PatchSpec& spec = cfg.patches[i];
    const Dims size = draw_size(spec.size, rng);
    const int x = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(img.width())));
    const int y = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(img.height())));
    const Rect requested{x, y, size.w, size.h};
    const Rect trimmed = clamp_rect(requested, img.dims());
    // The target draw is consumed even for non-random targets.
    RngState target_rng = rng;
    rng.skip(1);
    const Dims target = resolve_target(spec.target, {trimmed.w, trimmed.h}, target_rng);
    out.push_back(copy_patch(img, requested, target, i));
  }
  return out;
}

std::vector<Image> prepare_patches(const std::vector<Patch>& patches, const InAugConfig& cfg,
                                   std::span<const SampledTransform> per_patch) {
  if (per_patch.size() != patches.size()) {
    throw InvalidArgument("one sampled transform per patch required");
  }
  std::vector<Image> out;
  out.reserve(patches.size());
  for (std::size_t i = 0; i < patches.size(); ++i) {
    const Patch& p = patches[i];
    if (cfg.ordering == Ordering::kResizeFirst) {
      out.push_back(apply_transform(resize(p.pixels, p.target, cfg.interp), per_patch[i],
                                    *cfg.policy, cfg.magnitudes));
    } else {
      out.push_back(resize(apply_transform(p.pixels, per_patch[i], *cfg.policy, cfg.magnitudes),
                           p.target, cfg.interp));
    }
  }
  return out;
}

std::vector<Image> prepare_resize_first(const std::vector<Patch>& patches, const InAugConfig& cfg,
                                        const SampledTransform& t) {
  InAugConfig c = cfg;
  c.ordering = Ordering::kResizeFirst;
  const std::vector<SampledTransform> shared(patches.size(), t);
  return prepare_patches(patches, c, shared);
}

std::vector<Image> prepare_augment_first(const std::vector<Patch>& patches,
                                         const InAugConfig& cfg, const SampledTransform& t) {
  InAugConfig c = cfg;
  c.ordering = Ordering::kAugmentFirst;
  const std::vector<SampledTransform> shared(patches.size(), t);
  return prepare_patches(patches, c, shared);
}

std::vector<PasteDecision> plan_paste(std::span<const PatchSpec> specs, Dims base,
                                      RngState& rng) {
  std::vector<PasteDecision> plan;
  plan.reserve(specs.size());
  for (const PatchSpec& spec : specs) {
    PasteDecision d;
    d.kept = rng.bernoulli(spec.paste_prob);
    d.x = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(base.w)));
    d.y = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(base.h)));
    plan.push_back(d);
  }
  return plan;
}

std::vector<std::size_t> paste_order(std::span<const Image> prepared,
                                     std::span<const PasteDecision> plan) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < prepared.size() && i < plan.size(); ++i) {
    if (plan[i].kept) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return prepared[a].dims().area() > prepared[b].dims().area();
  });
  return order;
}

Image paste_with_plan(Image base, std::span<const Image> prepared,
                      std::span<const PasteDecision> plan) {
  for (std::size_t i : paste_order(prepared, plan)) {
    blit_clipped_into(base, prepared[i], plan[i].x, plan[i].y);
  }
  return base;
}

Image paste_patches(Image base, std::span<const Image> prepared, std::span<const PatchSpec> specs,
                    RngState& rng) {
  const auto plan = plan_paste(specs, base.dims(), rng);
  return paste_with_plan(std::move(base), prepared, plan);
}

Image inaugment(const Image& img, const InAugConfig& cfg, const RngState& rng,
                StageTimes* times) {
  auto stage = [times](std::int64_t StageTimes::*field) -> std::int64_t* {
    return times != nullptr ? &(times->*field) : nullptr;
  };
  const Policy& policy = *cfg.policy;

  SampledTransform t;
  std::vector<SampledTransform> per_patch;
  {
    ScopedStage s(stage(&StageTimes::sample_ns));
    RngState transform_rng = rng.split(kTransformStream);
    t = sample_transform(policy, transform_rng);
    per_patch.reserve(cfg.patches.size());
    for (std::size_t i = 0; i < cfg.patches.size(); ++i) {
      if (cfg.share_draws) {
        per_patch.push_back(t);
      } else {
        RngState patch_rng = rng.split(kPatchDrawStream + i);
        per_patch.push_back(resample_ops(t, policy, patch_rng));
      }
    }
  }

  std::vector<Patch> patches;
  {
    ScopedStage s(stage(&StageTimes::copy_ns));
    RngState copy_rng = rng.split(kCopyStream);
    patches = copy_patches(img, cfg, copy_rng);
  }

  std::vector<Image> prepared;
  {
    ScopedStage s(stage(&StageTimes::prepare_ns));
    prepared = prepare_patches(patches, cfg, per_patch);
  }

  Image base;
  {
    ScopedStage s(stage(&StageTimes::base_ns));
    base = apply_transform(img, t, policy, cfg.magnitudes);
  }

  ScopedStage s(stage(&StageTimes::paste_ns));
  RngState paste_rng = rng.split(kPasteStream);
  return paste_patches(std::move(base), prepared, cfg.patches, paste_rng);
}

}  // namespace inaug
