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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "inaug/imaging.hpp"
#include "inaug/inaugment.hpp"
#include "inaug/pipeline.hpp"
#include "inaug/policy.hpp"
#include "inaug/simd/kernels.hpp"
#include "inaug/transforms.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using namespace inaug;
namespace fs = std::filesystem;
namespace oracle = inaug::testing::oracle;
using inaug::testing::random_image;

// Pinned tolerances.
constexpr int kCompositorTrials = 1000;
constexpr int kOracleImages = 25;
constexpr int kEnhanceTolerance = 1;
constexpr int kOrderingTrials = 100;
constexpr int kDropTrials = 10000;
constexpr double kDropLo = 0.485;
constexpr double kDropHi = 0.515;
constexpr int kFixtureImages = 100;
constexpr double kDeterminismBudgetS = 60.0;
constexpr double kCifarMinPerSec = 5000.0;
constexpr double kResnetMinPerSec = 150.0;
constexpr double kBenchSeconds = 2.0;
constexpr double kEfficiencySeconds = 1.5;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// --- criteria ----------------------------------------------------------------

Outcome preset_fidelity() {
  const auto fixed_of = [](const PatchSpec& p) { return std::get<FixedSize>(p.size).dims; };
  const auto scale_of = [](const PatchSpec& p) { return std::get<TargetScale>(p.target).factor; };

  const Recipe wrn = parse_recipe(load_preset("cifar-wrn"));
  const auto& w = wrn.inaug.patches;
  if (w.size() != 1 || fixed_of(w[0]) != Dims{32, 32} || scale_of(w[0]) != 1.0 || w[0].paste_prob != 1.0 ||
      wrn.preprocess.resize) {
    return fail("cifar-wrn");
  }
  const Recipe ss = parse_recipe(load_preset("cifar-shakeshake"));
  const auto& s = ss.inaug.patches;
  if (s.size() != 2 || fixed_of(s[0]) != Dims{32, 32} || fixed_of(s[1]) != Dims{32, 32} ||
      scale_of(s[0]) != 1.0 || scale_of(s[1]) != 0.5 || s[0].paste_prob != 1.0 || s[1].paste_prob != 1.0) {
    return fail("cifar-shakeshake");
  }
  const Recipe r50 = parse_recipe(load_preset("imagenet-resnet50"));
  const auto& r = r50.inaug.patches;
  const int r50_targets[] = {134, 80, 48};
  if (r.size() != 3) return fail("imagenet-resnet50 patch count");
  for (int i = 0; i < 3; ++i) {
    const auto* t = std::get_if<TargetDims>(&r[i].target);
    if (t == nullptr || t->dims != Dims{r50_targets[i], r50_targets[i]} || r[i].paste_prob != 0.5) {
      return fail("imagenet-resnet50 patch " + std::to_string(i));
    }
  }
  const Recipe b3 = parse_recipe(load_preset("imagenet-effnet-b3"));
  const auto& b = b3.inaug.patches;
  const std::pair<int, int> b3_ranges[] = {{150, 300}, {8, 150}};
  if (b.size() != 2) return fail("imagenet-effnet-b3 patch count");
  for (int i = 0; i < 2; ++i) {
    const auto* t = std::get_if<TargetRange>(&b[i].target);
    if (t == nullptr || t->lo != b3_ranges[i].first || t->hi != b3_ranges[i].second) {
      return fail("imagenet-effnet-b3 patch " + std::to_string(i));
    }
  }
  return {true, "5 presets"};
}

Outcome multipatch_schedule() {
  const std::vector<double> want{1.0, 0.5, 0.25};
  if (halving_scale_schedule(3) != want) return fail("halving_scale_schedule(3)");
  const Recipe x3 = parse_recipe(load_preset("cifar-multipatch-x3"));
  if (x3.inaug.patches.size() != 3) return fail("patch count");
  // Resolved targets on a 32x32 copy: 32, 16, 8.
  for (int i = 0; i < 3; ++i) {
    if (std::get<TargetScale>(x3.inaug.patches[i].target).factor != want[i]) return fail("preset scale");
    RngState rng(0);
    const Dims t = resolve_target(x3.inaug.patches[i].target, {32, 32}, rng);
    const int side = static_cast<int>(32 * want[i]);
    if (t != Dims{side, side}) return fail("resolved target " + std::to_string(i));
  }
  return {true, "1.0/0.5/0.25"};
}

Outcome compositor_oracle() {
  std::mt19937_64 gen(2024);
  for (int t = 0; t < kCompositorTrials; ++t) {
    const Image base = random_image(16, 16, gen());
    const int n = 1 + static_cast<int>(gen() % 5);
    std::vector<Image> prepared;
    std::vector<PatchSpec> specs;
    for (int i = 0; i < n; ++i) {
      const int w = 1 + static_cast<int>(gen() % 16);
      const int h = (gen() & 1) ? w : 1 + static_cast<int>(gen() % 16);
      prepared.push_back(random_image(w, h, gen()));
      specs.push_back({FixedSize{{w, h}}, TargetScale{1.0}, static_cast<double>(gen() % 3) / 2});
    }
    RngState rng(gen());
    RngState plan_rng = rng;
    const auto plan = plan_paste(specs, base.dims(), plan_rng);
    if (paste_patches(base, prepared, specs, rng) != oracle::composite(base, prepared, plan)) {
      return fail("config " + std::to_string(t));
    }
  }
  return {true, std::to_string(kCompositorTrials) + " configs byte-exact"};
}

Outcome transform_oracles() {
  std::mt19937 gen(77);
  std::uniform_real_distribution<double> shear(-0.6, 0.6);
  std::uniform_real_distribution<double> angle(-180.0, 180.0);
  std::uniform_int_distribution<int> shift(-10, 10);
  std::uniform_int_distribution<int> thresh(0, 256);
  std::uniform_int_distribution<int> bits(1, 8);
  std::uniform_real_distribution<double> factor(0.1, 1.9);
  std::uniform_int_distribution<int> side(0, 12);
  std::uniform_int_distribution<int> pos(-4, 12);
  int worst_enhance = 0;
  for (int k = 0; k < kOracleImages; ++k) {
    const Image src = random_image(8, 8, 5000 + k);
    const std::string at = " on image " + std::to_string(k);
    const double s = shear(gen);
    if (shear_x(src, s) != oracle::shear_x(src, s)) return fail("ShearX" + at);
    if (shear_y(src, s) != oracle::shear_y(src, s)) return fail("ShearY" + at);
    const int dx = shift(gen);
    if (translate(src, dx, 0) != oracle::translate(src, dx, 0)) return fail("TranslateX" + at);
    if (translate(src, 0, dx) != oracle::translate(src, 0, dx)) return fail("TranslateY" + at);
    const double a = angle(gen);
    if (rotate(src, a) != oracle::rotate(src, a)) return fail("Rotate" + at);
    if (autocontrast(src) != oracle::autocontrast(src)) return fail("AutoContrast" + at);
    if (invert(src) != oracle::invert(src)) return fail("Invert" + at);
    if (equalize(src) != oracle::equalize(src)) return fail("Equalize" + at);
    const int th = thresh(gen);
    if (solarize(src, th) != oracle::solarize(src, th)) return fail("Solarize" + at);
    const int b = bits(gen);
    if (posterize(src, b) != oracle::posterize(src, b)) return fail("Posterize" + at);
    const Dims cut{side(gen), side(gen)};
    const int cx = pos(gen);
    const int cy = pos(gen);
    if (cutout(src, cut, cx, cy) != oracle::cutout(src, cut, cx, cy)) return fail("CutOut" + at);
    const double f = factor(gen);
    const std::pair<const char*, int> enh[] = {
        {"Contrast", testing::max_abs_diff(contrast(src, f), oracle::contrast(src, f))},
        {"Color", testing::max_abs_diff(color(src, f), oracle::color(src, f))},
        {"Brightness", testing::max_abs_diff(brightness(src, f), oracle::brightness(src, f))},
        {"Sharpness", testing::max_abs_diff(sharpness(src, f), oracle::sharpness(src, f))},
    };
    for (const auto& [name, d] : enh) {
      if (d < 0 || d > kEnhanceTolerance) return fail(std::string(name) + at + " diff " + std::to_string(d));
      worst_enhance = std::max(worst_enhance, d);
    }
  }
  // Equalize is the identity on 8x8 (too few pixels for a nonzero step), so
  // also check it where it does work.
  for (int k = 0; k < 5; ++k) {
    const Image src = random_image(48, 40, 6000 + k);
    if (equalize(src) != oracle::equalize(src)) return fail("Equalize on 48x40");
  }
  return {true, "15 kernels x " + std::to_string(kOracleImages) + " images, enhancement max diff " +
                    std::to_string(worst_enhance)};
}

std::string hex(const Image& img) {
  std::string s;
  char buf[3];
  for (auto b : img.bytes()) {
    std::snprintf(buf, sizeof(buf), "%02x", b);
    s += buf;
  }
  return s;
}

Outcome ordering_contract() {
  auto policy = std::make_shared<const Policy>(load_policy("cifar-aa"));
  std::mt19937_64 gen(31);
  for (int t = 0; t < kOrderingTrials; ++t) {
    const Image img = random_image(32, 32, gen());
    InAugConfig cfg;
    cfg.policy = policy;
    cfg.magnitudes = MagnitudeTable::shipped("cifar");
    const int a = 4 + static_cast<int>(gen() % 29);
    const int b = 2 + static_cast<int>(gen() % 16);
    cfg.patches = {{FixedSize{{a, a}}, TargetScale{1.0}, 1.0}, {FixedSize{{b, a}}, TargetScale{1.0}, 1.0}};
    const RngState rng(gen());
    cfg.ordering = Ordering::kResizeFirst;
    const Image rf = inaugment(img, cfg, rng);
    cfg.ordering = Ordering::kAugmentFirst;
    if (rf != inaugment(img, cfg, rng)) return fail("trial " + std::to_string(t));
  }

  // Committed golden: 30 degree rotation with a 16 -> 8 downscale.
  std::ifstream in(std::string(INAUG_GOLDEN_DIR) + "/ordering_pair.txt");
  if (!in) return fail("missing golden ordering_pair.txt");
  std::string line, rf_hex, af_hex;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key, value;
    ss >> key >> value;
    (key == "resize_first" ? rf_hex : af_hex) = value;
  }
  InAugConfig cfg;
  cfg.policy = std::make_shared<const Policy>(parse_policy("inaug-policy v1\nname r\n(Rotate, 1.0, 9)\n"));
  cfg.magnitudes = MagnitudeTable::shipped("cifar");
  const Image img = random_image(16, 16, 0x0dd);
  const std::vector<Patch> patches{copy_patch(img, {0, 0, 16, 16}, {8, 8}, 0)};
  SampledTransform st;
  st.subpolicy = 0;
  st.draws = {{true, 1, 0}};
  st.magnitudes = {9};
  const std::string rf = hex(prepare_resize_first(patches, cfg, st)[0]);
  const std::string af = hex(prepare_augment_first(patches, cfg, st)[0]);
  if (rf != rf_hex || af != af_hex) return fail("engine does not reproduce the golden pair");
  if (rf_hex == af_hex) return fail("golden pair does not differ");
  return {true, std::to_string(kOrderingTrials) + " equal trials, golden pair differs"};
}

Outcome drop_statistics() {
  const std::vector<PatchSpec> specs{{FixedSize{{8, 8}}, TargetScale{1.0}, 0.5}};
  int kept = 0;
  for (int s = 0; s < kDropTrials; ++s) {
    RngState rng = derive_image_rng(99, 0, static_cast<std::uint64_t>(s)).split(kPasteStream);
    kept += plan_paste(specs, {32, 32}, rng)[0].kept ? 1 : 0;
  }
  const double f = static_cast<double>(kept) / kDropTrials;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "paste frequency %.4f", f);
  return {f >= kDropLo && f <= kDropHi, buf};
}

Outcome determinism() {
  const auto start = std::chrono::steady_clock::now();
  testing::TempDir dir("acceptance_det");
  testing::write_cifar_file(dir.path() / "fixture.bin", kFixtureImages, 11);
  testing::write_image_dir(dir.path() / "imgs", kFixtureImages / 2, 12);

  struct Case {
    const char* preset;
    DatasetSource source;
  };
  const Case cases[] = {
      {"cifar-multipatch-x3", {DatasetKind::kCifar10, dir.path() / "fixture.bin", "train"}},
      {"imagenet-resnet50", {DatasetKind::kImageDir, dir.path() / "imgs", "train"}},
  };
  for (const auto& c : cases) {
    std::map<std::string, std::string> reference;
    for (int workers : {1, 4, 8}) {
      PipelineConfig cfg = load_pipeline_config(c.preset, std::nullopt);
      cfg.source = c.source;
      cfg.seed = 20260101;
      cfg.workers = workers;
      cfg.batch_size = 32;
      cfg.sink_root = dir.path() / (std::string(c.preset) + "_w" + std::to_string(workers));
      const Manifest m = run_augment(cfg);
      if (m.entries.size() != static_cast<std::size_t>(kFixtureImages)) {
        return fail(std::string(c.preset) + ": manifest has " + std::to_string(m.entries.size()) + " entries");
      }
      auto tree = testing::tree_contents(cfg.sink_root);
      if (workers == 1) {
        reference = std::move(tree);
      } else if (tree != reference) {
        return fail(std::string(c.preset) + ": workers=" + std::to_string(workers) + " differs");
      }
    }
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "2 fixtures x workers {1,4,8} identical, %.1f s", s);
  return {s < kDeterminismBudgetS, buf};
}

double mean_abs_laplacian(const Image& img, const std::function<bool(int, int)>& in_region) {
  double sum = 0;
  long n = 0;
  for (int y = 1; y + 1 < img.height(); ++y) {
    for (int x = 1; x + 1 < img.width(); ++x) {
      if (!in_region(x, y)) continue;
      for (int c = 0; c < 3; ++c) {
        sum += std::abs(4.0 * img.at(x, y, c) - img.at(x - 1, y, c) - img.at(x + 1, y, c) -
                        img.at(x, y - 1, c) - img.at(x, y + 1, c));
        ++n;
      }
    }
  }
  return n == 0 ? 0.0 : sum / n;
}

Outcome ood_generator() {
  const Image img = make_synthetic_image({32, 32}, 404);
  std::string detail;
  for (int d : {64, 128, 256, 512}) {
    OodConfig ood;
    ood.pad = d;
    ood.mode = PadMode::kSymmetric;
    const Image out = ood_pad(img, ood);
    const std::string at = "D=" + std::to_string(d);
    if (out.dims() != Dims{32 + 2 * d, 32 + 2 * d}) return fail(at + ": dims");
    if (crop_clamped(out, {d, d, 32, 32}) != img) return fail(at + ": central window changed");
    const double ring = mean_abs_laplacian(out, [&](int x, int y) {
      return x < d || y < d || x >= d + 32 || y >= d + 32;
    });
    const double interior = mean_abs_laplacian(out, [&](int x, int y) {
      return x > d && y > d && x < d + 31 && y < d + 31;
    });
    if (!(ring < interior)) return fail(at + ": ring " + std::to_string(ring) + " >= interior");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%d:%.3f<%.1f", detail.empty() ? "" : " ", d, ring, interior);
    detail += buf;
  }
  return {true, "ring<interior " + detail};
}

Outcome throughput() {
  const auto rate = [](const char* preset) {
    PipelineConfig cfg = load_pipeline_config(preset, std::nullopt);
    cfg.workers = 1;
    return run_bench(cfg, kBenchSeconds).images_per_sec;
  };
  const double cifar = rate("cifar-wrn");
  const double r50 = rate("imagenet-resnet50");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "cifar-wrn %.0f/s (>= %.0f), imagenet-resnet50 %.0f/s (>= %.0f), kernels %s",
                cifar, kCifarMinPerSec, r50, kResnetMinPerSec, simd::active_kernels().name);
  return {cifar >= kCifarMinPerSec && r50 >= kResnetMinPerSec, buf};
}

Outcome efficiency_direction() {
  // 224x224 inputs, large copies, small targets.
  Recipe recipe = parse_recipe(R"({
    "policy": "imagenet-efficientnet-aa",
    "magnitudes": "imagenet",
    "inaugment": {"patches": [
      {"size": {"fixed": 160}, "target": {"dims": 48}},
      {"size": {"fixed": 128}, "target": {"dims": 32}}
    ]}
  })");
  std::vector<Image> corpus;
  for (int i = 0; i < 8; ++i) corpus.push_back(make_synthetic_image({224, 224}, 900 + i));
  recipe.inaug.ordering = Ordering::kResizeFirst;
  const BenchReport rf = run_bench(recipe, corpus, kEfficiencySeconds, 1, 5);
  recipe.inaug.ordering = Ordering::kAugmentFirst;
  const BenchReport af = run_bench(recipe, corpus, kEfficiencySeconds, 1, 5);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "resize_first %.0f us < augment_first %.0f us (prepare %.0f vs %.0f us)",
                rf.mean_ns / 1e3, af.mean_ns / 1e3, rf.prepare_ns / 1e3, af.prepare_ns / 1e3);
  return {rf.mean_ns < af.mean_ns, buf};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"preset-fidelity", preset_fidelity},
      {"multipatch-schedule", multipatch_schedule},
      {"paste-compositor-oracle", compositor_oracle},
      {"transform-oracle-suite", transform_oracles},
      {"ordering-contract", ordering_contract},
      {"drop-probability", drop_statistics},
      {"determinism", determinism},
      {"ood-generator", ood_generator},
      {"throughput", throughput},
      {"efficiency-direction", efficiency_direction},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    std::printf("%s  %-24s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
