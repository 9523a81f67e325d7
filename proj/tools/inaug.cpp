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

// inaug: command-line front end.
//
//   inaug augment --preset cifar-wrn --config run.json --seed 7 --workers 4
//   inaug preview --preset imagenet-resnet50 --config run.json --rows 4 --cols 6
//   inaug bench   --preset cifar-wrn --duration 5
//   inaug ood-gen --config val.json --pad 64 --mode symmetric --out ood64
//
// Exit codes: 0 success, 1 config error, 2 data error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "inaug/error.hpp"
#include "inaug/pipeline.hpp"
#include "inaug/simd/kernels.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

struct CommonArgs {
  std::optional<std::string> preset;
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> epochs;
  std::optional<std::string> out;
  std::optional<std::string> source_kind;
  std::optional<std::string> source_root;
  std::optional<std::string> split;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--preset", a.preset, "Shipped preset name");
  cmd->add_option("--config", a.config, "JSON config file (merged over the preset)");
  cmd->add_option("--seed", a.seed, "Global seed");
  cmd->add_option("--workers", a.workers, "Worker threads");
  cmd->add_option("--epochs", a.epochs, "Epochs to generate");
  cmd->add_option("--out", a.out, "Output location");
  cmd->add_option("--source-kind", a.source_kind, "cifar10, cifar100 or image_dir");
  cmd->add_option("--source-root", a.source_root, "Dataset root directory or file");
  cmd->add_option("--split", a.split, "Dataset split (train or test)");
}

inaug::PipelineConfig build_config(const CommonArgs& a, bool out_is_sink) {
  if (!a.preset && !a.config) throw inaug::ConfigError("need --preset and/or --config");
  inaug::ConfigOverrides ov;
  ov.seed = a.seed;
  ov.workers = a.workers;
  ov.epochs = a.epochs;
  if (out_is_sink && a.out) ov.out = *a.out;
  std::optional<std::filesystem::path> config_path;
  if (a.config) config_path = *a.config;
  inaug::PipelineConfig cfg = inaug::load_pipeline_config(a.preset, config_path, ov);
  if (a.source_root) {
    inaug::DatasetSource src;
    const std::string kind_name = a.source_kind.value_or("cifar10");
    const auto kind = inaug::dataset_kind_from_name(kind_name);
    if (!kind) throw inaug::ConfigError("unknown --source-kind " + kind_name);
    src.kind = *kind;
    src.root = *a.source_root;
    cfg.source = src;
  }
  if (cfg.source && a.split) cfg.source->split = *a.split;
  cfg.validate();
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"InAugment image augmentation engine"};
  std::optional<std::string> data_dir;
  std::optional<std::string> simd;
  app.add_option("--data-dir", data_dir, "Read shipped data files from this directory");
  app.add_option("--simd", simd, "Kernel table: scalar, avx2 or auto");
  bool list_presets = false;
  app.add_flag("--list-presets", list_presets, "Print shipped preset names and exit");

  CommonArgs aug_args;
  auto* augment = app.add_subcommand("augment", "Augment a dataset to disk");
  add_common(augment, aug_args);

  CommonArgs prev_args;
  int rows = 4;
  int cols = 5;
  auto* preview = app.add_subcommand("preview", "Render a before/after PNG grid");
  add_common(preview, prev_args);
  preview->add_option("--rows", rows, "Grid rows (source images)");
  preview->add_option("--cols", cols, "Grid columns (original + epochs)");

  CommonArgs bench_args;
  std::optional<double> duration;
  auto* bench = app.add_subcommand("bench", "Measure augmentation throughput");
  add_common(bench, bench_args);
  bench->add_option("--duration", duration, "Seconds of measured work");

  CommonArgs ood_args;
  std::optional<int> pad;
  std::optional<std::string> mode;
  std::optional<double> sigma;
  std::optional<double> crop_fraction;
  std::optional<int> target;
  auto* ood = app.add_subcommand("ood-gen", "Write a padded out-of-distribution validation set");
  add_common(ood, ood_args);
  ood->add_option("--pad", pad, "Padding width D in pixels");
  ood->add_option("--mode", mode, "symmetric, zero or tile");
  ood->add_option("--sigma", sigma, "Ring blur sigma (default D / 8)");
  ood->add_option("--crop-fraction", crop_fraction, "Center crop fraction");
  ood->add_option("--target", target, "Square output side after the crop");

  app.require_subcommand(0, 1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (data_dir) ::setenv("INAUG_DATA_DIR", data_dir->c_str(), 1);
  if (simd && !inaug::simd::select_kernels(*simd)) {
    throw inaug::ConfigError("kernel table '" + *simd + "' is not available");
  }
  if (list_presets) {
    for (const auto& n : inaug::preset_names()) std::cout << n << "\n";
    return 0;
  }

  if (augment->parsed()) {
    const auto cfg = build_config(aug_args, true);
    const auto manifest = inaug::run_augment(cfg);
    std::cout << "wrote " << manifest.entries.size() << " samples to " << cfg.sink_root.string()
              << " (" << manifest.skipped.size() << " skipped)\n";
    return 0;
  }
  if (preview->parsed()) {
    const auto cfg = build_config(prev_args, false);
    const std::filesystem::path out = prev_args.out.value_or("preview.png");
    inaug::write_png(out, inaug::run_preview(cfg, rows, cols));
    std::cout << "wrote " << out.string() << "\n";
    return 0;
  }
  if (bench->parsed()) {
    // Bench runs on synthetic images when neither flags nor config name a source.
    const bool has_input = bench_args.preset || bench_args.config;
    if (!has_input) bench_args.preset = "cifar-wrn";
    const auto cfg = build_config(bench_args, false);
    const auto report = inaug::run_bench(cfg, duration.value_or(cfg.bench.duration_s));
    const std::string text = report.to_json();
    std::cout << text << "\n";
    if (bench_args.out) {
      std::ofstream f(*bench_args.out);
      if (!f) throw inaug::IoError("cannot write " + *bench_args.out);
      f << text << "\n";
    }
    return 0;
  }
  if (ood->parsed()) {
    if (!ood_args.preset && !ood_args.config) ood_args.preset = "cifar-wrn";
    auto cfg = build_config(ood_args, true);
    if (!cfg.source) throw inaug::ConfigError("ood-gen needs a source");
    if (pad) cfg.ood.pad = *pad;
    if (mode) {
      if (*mode == "symmetric") {
        cfg.ood.mode = inaug::PadMode::kSymmetric;
      } else if (*mode == "zero") {
        cfg.ood.mode = inaug::PadMode::kZero;
      } else if (*mode == "tile") {
        cfg.ood.mode = inaug::PadMode::kTile;
      } else {
        throw inaug::ConfigError("unknown --mode " + *mode);
      }
    }
    if (sigma) cfg.ood.blur_sigma = *sigma;
    if (crop_fraction) cfg.ood.crop_fraction = *crop_fraction;
    if (target) cfg.ood.target = inaug::Dims{*target, *target};
    cfg.validate();
    const auto manifest = inaug::run_ood_gen(*cfg.source, cfg.ood, cfg.sink_root, cfg.workers);
    std::cout << "wrote " << manifest.entries.size() << " images to " << cfg.sink_root.string()
              << "\n";
    return 0;
  }
  if (list_presets) return 0;
  std::cerr << app.help();
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const inaug::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const inaug::SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const inaug::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const inaug::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
