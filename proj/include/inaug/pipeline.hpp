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

#ifndef INAUG_PIPELINE_HPP_
#define INAUG_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inaug/datasets.hpp"
#include "inaug/image.hpp"
#include "inaug/imaging.hpp"
#include "inaug/inaugment.hpp"
#include "inaug/rng.hpp"

namespace inaug {

inline constexpr int kConfigVersion = 1;

/// Per-image stream used by the standard preprocess: crop x, crop y, flip.
inline constexpr std::uint64_t kPreprocessStream = 3;

/// Standard training preprocess applied before the augmentation:
/// optional resize, zero pad + random crop back to size, random flip (p = 0.5).
struct PreprocessConfig {
  bool enabled = false;
  std::optional<Dims> resize;
  int pad = 0;
  bool flip = false;
};

/// Everything needed to turn one input image into one augmented image. This
/// is what the shipped presets describe.
struct Recipe {
  InAugConfig inaug;
  PreprocessConfig preprocess;
  std::string policy_ref;
  std::string magnitude_profile = "cifar";
};

struct OodConfig {
  int pad = 0;
  PadMode mode = PadMode::kSymmetric;
  /// Blur of the padded ring in symmetric mode; defaults to pad / 8.
  std::optional<double> blur_sigma;
  double crop_fraction = 0.875;
  std::optional<Dims> target;

  double effective_sigma() const { return blur_sigma.value_or(pad / 8.0); }
};

struct BenchConfig {
  double duration_s = 2.0;
  Dims synthetic{224, 224};
  int corpus_size = 32;
};

struct PreviewConfig {
  std::optional<Dims> cell;
  int gutter = 2;
};

struct PipelineConfig {
  Recipe recipe;
  std::optional<DatasetSource> source;
  std::filesystem::path sink_root = "out";
  OutputFormat format = OutputFormat::kPng;
  int epochs = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  int batch_size = 256;
  OodConfig ood;
  BenchConfig bench;
  PreviewConfig preview;

  /// Throws ConfigError (epochs, workers, missing files, ...).
  void validate() const;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> epochs;
  std::optional<std::filesystem::path> out;
};

// Config documents are JSON objects with "version": 1. A preset supplies
// "policy", "magnitudes", "inaugment" and "preprocess"; a user config adds
// "source", "sink", run settings and may override any preset field.
// Relative paths resolve against `base_dir`.

Recipe parse_recipe(std::string_view json_text, const std::filesystem::path& base_dir = {});
PipelineConfig parse_pipeline_config(std::string_view json_text,
                                     const std::filesystem::path& base_dir = {});

/// Preset text merged under the user config file, then flag overrides.
PipelineConfig load_pipeline_config(const std::optional<std::string>& preset,
                                    const std::optional<std::filesystem::path>& config_path,
                                    const ConfigOverrides& overrides = {});

std::vector<std::string> preset_names();
/// Exact contents of data/presets/<name>.json; UnknownPreset lists the names.
std::string load_preset(std::string_view name);

/// Random crop/flip (and resize) with draws from rng.split(kPreprocessStream).
Image standard_preprocess(const Image& img, const PreprocessConfig& pre, const RngState& rng);

/// Preprocess (if enabled) then inaugment().
Image augment_sample(const Image& img, const Recipe& recipe, const RngState& rng,
                     StageTimes* times = nullptr, std::int64_t* preprocess_ns = nullptr);

/// Deterministic textured test image (gradients, blobs and noise).
Image make_synthetic_image(Dims dims, std::uint64_t seed);

/// Streams the source in batches of cfg.batch_size, augments every
/// (epoch, image) on cfg.workers threads, writes outputs plus manifest.tsv
/// and skipped.txt under the sink root. Output bytes do not depend on the
/// worker count.
Manifest run_augment(const PipelineConfig& cfg);

struct BenchReport {
  std::uint64_t samples = 0;
  double elapsed_s = 0.0;
  double images_per_sec = 0.0;
  double mean_ns = 0.0;
  double p50_ns = 0.0;
  double p99_ns = 0.0;
  // Mean per-image time per stage.
  double preprocess_ns = 0.0;
  double sample_ns = 0.0;
  double copy_ns = 0.0;
  double prepare_ns = 0.0;
  double base_ns = 0.0;
  double paste_ns = 0.0;
  int workers = 1;
  std::string kernels;

  double stage_sum_ns() const {
    return preprocess_ns + sample_ns + copy_ns + prepare_ns + base_ns + paste_ns;
  }
  std::string to_json() const;
};

/// Runs augment_sample over the corpus (the configured source's first
/// bench.corpus_size images, or synthetic images) for at least `duration_s`
/// of wall time on cfg.workers threads. duration 0 yields an empty report.
BenchReport run_bench(const PipelineConfig& cfg, double duration_s);
BenchReport run_bench(const Recipe& recipe, const std::vector<Image>& corpus, double duration_s,
                      int workers = 1, std::uint64_t seed = 0);

/// rows x cols grid; column 0 holds the originals, column c > 0 the
/// augmentation of epoch c - 1. Each cell occupies (cell + gutter) pixels.
/// Throws EmptySource.
Image run_preview(const PipelineConfig& cfg, int rows, int cols);

/// Padded image before the evaluation crop: (H + 2D) x (W + 2D). In symmetric
/// mode the whole padded image is blurred and the central window restored.
Image ood_pad(const Image& img, const OodConfig& ood);
/// Center crop by ood.crop_fraction, then resize to ood.target (if set).
Image eval_preprocess(const Image& img, const OodConfig& ood);

Manifest run_ood_gen(const DatasetSource& src, const OodConfig& ood,
                     const std::filesystem::path& sink_root, int workers = 1);

}  // namespace inaug

#endif  // INAUG_PIPELINE_HPP_
