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

#include "inaug/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "inaug/data_catalog.hpp"
#include "inaug/error.hpp"
#include "inaug/simd/kernels.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace inaug {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count();
}

// --- JSON helpers ----------------------------------------------------------

[[noreturn]] void schema_fail(const std::string& field, const std::string& message) {
  throw SchemaError("config", 0, field, message);
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(source, 0, "", std::string("invalid JSON: ") + e.what());
  }
}

const json* find(const json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return (it == obj.end() || it->is_null()) ? nullptr : &*it;
}

template <typename T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    schema_fail(field, e.what());
  }
}

Dims get_dims(const json& j, const std::string& field) {
  if (j.is_number_integer()) {
    const int s = j.get<int>();
    if (s < 1) schema_fail(field, "dims must be >= 1");
    return {s, s};
  }
  if (!j.is_array() || j.size() != 2) schema_fail(field, "expected [w, h] or a side length");
  const Dims d{get_as<int>(j[0], field), get_as<int>(j[1], field)};
  if (!d.valid()) schema_fail(field, "dims must be >= 1");
  return d;
}

std::pair<int, int> get_range(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) schema_fail(field, "expected [lo, hi]");
  const int lo = get_as<int>(j[0], field);
  const int hi = get_as<int>(j[1], field);
  if (lo < 1 || lo > hi) schema_fail(field, "range needs 1 <= lo <= hi");
  return {lo, hi};
}

PatchSpec parse_patch(const json& j, const std::string& field) {
  if (!j.is_object()) schema_fail(field, "expected an object");
  PatchSpec spec;
  const json* size = find(j, "size");
  if (size == nullptr) schema_fail(field + ".size", "missing");
  if (const json* f = find(*size, "fixed")) {
    spec.size = FixedSize{get_dims(*f, field + ".size.fixed")};
  } else if (const json* r = find(*size, "random")) {
    auto [lo, hi] = get_range(*r, field + ".size.random");
    spec.size = RandomSize{lo, hi};
  } else {
    schema_fail(field + ".size", "expected {\"fixed\": ...} or {\"random\": [lo, hi]}");
  }
  if (const json* t = find(j, "target")) {
    if (const json* d = find(*t, "dims")) {
      spec.target = TargetDims{get_dims(*d, field + ".target.dims")};
    } else if (const json* s = find(*t, "scale")) {
      spec.target = TargetScale{get_as<double>(*s, field + ".target.scale")};
    } else if (const json* r = find(*t, "range")) {
      auto [lo, hi] = get_range(*r, field + ".target.range");
      spec.target = TargetRange{lo, hi};
    } else {
      schema_fail(field + ".target", "expected dims, scale or range");
    }
  }
  if (const json* p = find(j, "paste_prob")) spec.paste_prob = get_as<double>(*p, field + ".paste_prob");
  try {
    spec.validate();
  } catch (const ConfigError& e) {
    schema_fail(field, e.what());
  }
  return spec;
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

std::shared_ptr<const Policy> resolve_policy(const json& doc, const fs::path& base,
                                             std::string& ref) {
  if (const json* inline_text = find(doc, "policy_text")) {
    ref = "<inline>";
    return std::make_shared<const Policy>(
        parse_policy(get_as<std::string>(*inline_text, "policy_text"), "policy_text"));
  }
  const json* p = find(doc, "policy");
  if (p == nullptr) schema_fail("policy", "missing (a shipped name or a .policy path)");
  ref = get_as<std::string>(*p, "policy");
  const bool looks_like_path = ref.find('/') != std::string::npos || ref.ends_with(".policy");
  if (looks_like_path) {
    const fs::path path = resolve(ref, base);
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) throw ConfigError("policy file not found: " + path.string());
    return std::make_shared<const Policy>(load_policy(path.string()));
  }
  return std::make_shared<const Policy>(load_policy(ref));
}

Recipe recipe_from_json(const json& doc, const fs::path& base) {
  if (!doc.is_object()) schema_fail("", "config must be a JSON object");
  if (const json* v = find(doc, "version")) {
    if (get_as<int>(*v, "version") != kConfigVersion) {
      schema_fail("version", "unsupported config version (expected 1)");
    }
  }
  Recipe r;
  r.inaug.policy = resolve_policy(doc, base, r.policy_ref);
  if (const json* m = find(doc, "magnitudes")) {
    const std::string ref = get_as<std::string>(*m, "magnitudes");
    if (ref == "cifar" || ref == "imagenet") {
      r.magnitude_profile = ref;
      r.inaug.magnitudes = MagnitudeTable::shipped(ref);
    } else {
      // "<path>:<profile>"
      const auto colon = ref.rfind(':');
      if (colon == std::string::npos) schema_fail("magnitudes", "expected cifar, imagenet or path:profile");
      const fs::path path = resolve(ref.substr(0, colon), base);
      std::ifstream in(path, std::ios::binary);
      if (!in) throw ConfigError("magnitude table not found: " + path.string());
      std::ostringstream ss;
      ss << in.rdbuf();
      r.magnitude_profile = ref.substr(colon + 1);
      r.inaug.magnitudes = MagnitudeTable::parse(ss.str(), r.magnitude_profile, path.string());
    }
  } else {
    r.inaug.magnitudes = MagnitudeTable::shipped("cifar");
  }

  if (const json* ia = find(doc, "inaugment")) {
    if (const json* o = find(*ia, "ordering")) {
      const std::string s = get_as<std::string>(*o, "inaugment.ordering");
      if (s == "resize_first") {
        r.inaug.ordering = Ordering::kResizeFirst;
      } else if (s == "augment_first") {
        r.inaug.ordering = Ordering::kAugmentFirst;
      } else {
        schema_fail("inaugment.ordering", "expected resize_first or augment_first");
      }
    }
    if (const json* s = find(*ia, "share_draws")) r.inaug.share_draws = get_as<bool>(*s, "inaugment.share_draws");
    if (const json* s = find(*ia, "interp")) {
      const std::string v = get_as<std::string>(*s, "inaugment.interp");
      if (v == "bilinear") {
        r.inaug.interp = InterpMode::kBilinear;
      } else if (v == "nearest") {
        r.inaug.interp = InterpMode::kNearest;
      } else {
        schema_fail("inaugment.interp", "expected bilinear or nearest");
      }
    }
    if (const json* ps = find(*ia, "patches")) {
      if (!ps->is_array()) schema_fail("inaugment.patches", "expected an array");
      for (std::size_t i = 0; i < ps->size(); ++i) {
        r.inaug.patches.push_back(
            parse_patch((*ps)[i], "inaugment.patches[" + std::to_string(i) + "]"));
      }
    }
  }

  if (const json* pre = find(doc, "preprocess")) {
    PreprocessConfig& p = r.preprocess;
    p.enabled = true;
    if (const json* e = find(*pre, "enabled")) p.enabled = get_as<bool>(*e, "preprocess.enabled");
    if (const json* rs = find(*pre, "resize")) p.resize = get_dims(*rs, "preprocess.resize");
    if (const json* pd = find(*pre, "pad")) p.pad = get_as<int>(*pd, "preprocess.pad");
    if (const json* f = find(*pre, "flip")) p.flip = get_as<bool>(*f, "preprocess.flip");
    if (p.pad < 0) schema_fail("preprocess.pad", "must be >= 0");
  }
  return r;
}

PipelineConfig pipeline_from_json(const json& doc, const fs::path& base) {
  PipelineConfig cfg;
  cfg.recipe = recipe_from_json(doc, base);
  if (const json* s = find(doc, "source")) {
    DatasetSource src;
    const json* kind = find(*s, "kind");
    if (kind == nullptr) schema_fail("source.kind", "missing");
    const auto k = dataset_kind_from_name(get_as<std::string>(*kind, "source.kind"));
    if (!k) schema_fail("source.kind", "expected cifar10, cifar100 or image_dir");
    src.kind = *k;
    const json* root = find(*s, "root");
    if (root == nullptr) schema_fail("source.root", "missing");
    src.root = resolve(get_as<std::string>(*root, "source.root"), base);
    if (const json* sp = find(*s, "split")) src.split = get_as<std::string>(*sp, "source.split");
    cfg.source = src;
  }
  if (const json* s = find(doc, "sink")) {
    if (const json* root = find(*s, "root")) cfg.sink_root = resolve(get_as<std::string>(*root, "sink.root"), base);
    if (const json* f = find(*s, "format")) {
      const std::string name = get_as<std::string>(*f, "sink.format");
      const auto fmt = output_format_from_name(name);
      if (!fmt) schema_fail("sink.format", "'" + name + "' is not lossless; expected png or cifar_record");
      cfg.format = *fmt;
    }
  }
  if (const json* v = find(doc, "epochs")) cfg.epochs = get_as<int>(*v, "epochs");
  if (const json* v = find(doc, "seed")) cfg.seed = get_as<std::uint64_t>(*v, "seed");
  if (const json* v = find(doc, "workers")) cfg.workers = get_as<int>(*v, "workers");
  if (const json* v = find(doc, "batch_size")) cfg.batch_size = get_as<int>(*v, "batch_size");
  if (const json* o = find(doc, "ood")) {
    if (const json* v = find(*o, "pad")) cfg.ood.pad = get_as<int>(*v, "ood.pad");
    if (const json* v = find(*o, "mode")) {
      const std::string m = get_as<std::string>(*v, "ood.mode");
      if (m == "symmetric") {
        cfg.ood.mode = PadMode::kSymmetric;
      } else if (m == "zero") {
        cfg.ood.mode = PadMode::kZero;
      } else if (m == "tile") {
        cfg.ood.mode = PadMode::kTile;
      } else {
        schema_fail("ood.mode", "expected symmetric, zero or tile");
      }
    }
    if (const json* v = find(*o, "blur_sigma")) cfg.ood.blur_sigma = get_as<double>(*v, "ood.blur_sigma");
    if (const json* v = find(*o, "crop_fraction")) cfg.ood.crop_fraction = get_as<double>(*v, "ood.crop_fraction");
    if (const json* v = find(*o, "target")) cfg.ood.target = get_dims(*v, "ood.target");
  }
  if (const json* b = find(doc, "bench")) {
    if (const json* v = find(*b, "duration")) cfg.bench.duration_s = get_as<double>(*v, "bench.duration");
    if (const json* v = find(*b, "synthetic")) cfg.bench.synthetic = get_dims(*v, "bench.synthetic");
    if (const json* v = find(*b, "corpus_size")) cfg.bench.corpus_size = get_as<int>(*v, "bench.corpus_size");
  }
  if (const json* p = find(doc, "preview")) {
    if (const json* v = find(*p, "cell")) cfg.preview.cell = get_dims(*v, "preview.cell");
    if (const json* v = find(*p, "gutter")) cfg.preview.gutter = get_as<int>(*v, "preview.gutter");
  }
  return cfg;
}

// --- parallel helpers ------------------------------------------------------

/// Runs fn(i) for i in [0, n) on `workers` threads. The first exception (by
/// index) is rethrown after all threads finish.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  if (n == 0) return;
  const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), n);
  std::vector<std::exception_ptr> errors(n);
  auto body = [&](std::atomic<std::size_t>& next) {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::atomic<std::size_t> next{0};
  if (threads == 1) {
    body(next);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back([&] { body(next); });
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

[[noreturn]] void rethrow_with_id(std::exception_ptr e, const std::string& id) {
  try {
    std::rethrow_exception(e);
  } catch (const DataError& err) {
    throw DataError(id + ": " + err.what());
  } catch (const ConfigError& err) {
    throw ConfigError(id + ": " + err.what());
  } catch (const SchemaError& err) {
    throw ConfigError(id + ": " + err.what());
  } catch (const std::exception& err) {
    throw DataError(id + ": " + err.what());
  }
}

std::vector<LabeledImage> read_batch(ImageReader& reader, std::size_t n) {
  std::vector<LabeledImage> batch;
  while (batch.size() < n) {
    auto item = reader.next();
    if (!item) break;
    batch.push_back(std::move(*item));
  }
  return batch;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

double percentile(std::vector<std::int64_t>& v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  return static_cast<double>(v[std::min(idx, v.size() - 1)]);
}

}  // namespace

// ---------------------------------------------------------------------------

void PipelineConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (ood.pad < 0) throw ConfigError("ood.pad must be >= 0");
  if (ood.blur_sigma && !(*ood.blur_sigma >= 0.0)) throw ConfigError("ood.blur_sigma must be >= 0");
  if (!(ood.crop_fraction > 0.0 && ood.crop_fraction <= 1.0)) {
    throw ConfigError("ood.crop_fraction must be in (0, 1]");
  }
  if (bench.corpus_size < 1) throw ConfigError("bench.corpus_size must be >= 1");
  if (preview.gutter < 0) throw ConfigError("preview.gutter must be >= 0");
  recipe.inaug.validate();
  if (source) {
    std::error_code ec;
    if (!fs::exists(source->root, ec)) {
      throw ConfigError("source root does not exist: " + source->root.string());
    }
  }
}

Recipe parse_recipe(std::string_view json_text, const fs::path& base_dir) {
  return recipe_from_json(parse_json(json_text, "config"), base_dir);
}

PipelineConfig parse_pipeline_config(std::string_view json_text, const fs::path& base_dir) {
  return pipeline_from_json(parse_json(json_text, "config"), base_dir);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& f : list_data_files("presets/")) {
    if (!f.ends_with(".json")) continue;
    names.push_back(fs::path(f).stem().string());
  }
  return names;
}

std::string load_preset(std::string_view name) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw UnknownPreset("unknown preset '" + std::string(name) + "' (available: " + list + ")");
  }
  return read_data_file("presets/" + std::string(name) + ".json");
}

PipelineConfig load_pipeline_config(const std::optional<std::string>& preset,
                                    const std::optional<fs::path>& config_path,
                                    const ConfigOverrides& overrides) {
  json doc = json::object();
  if (preset) doc = parse_json(load_preset(*preset), "preset " + *preset);
  fs::path base;
  if (config_path) {
    std::ifstream in(*config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config " + config_path->string());
    std::ostringstream ss;
    ss << in.rdbuf();
    const json user = parse_json(ss.str(), config_path->string());
    if (!user.is_object()) throw SchemaError(config_path->string(), 0, "", "expected a JSON object");
    // A user "policy" replaces any inline policy text from the preset.
    if (user.contains("policy")) doc.erase("policy_text");
    doc.merge_patch(user);
    base = config_path->parent_path();
  }
  PipelineConfig cfg = pipeline_from_json(doc, base);
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.workers) cfg.workers = *overrides.workers;
  if (overrides.epochs) cfg.epochs = *overrides.epochs;
  if (overrides.out) cfg.sink_root = *overrides.out;
  cfg.validate();
  return cfg;
}

Image standard_preprocess(const Image& img, const PreprocessConfig& pre, const RngState& rng) {
  RngState r = rng.split(kPreprocessStream);
  const std::uint64_t crop_x = r.next();
  const std::uint64_t crop_y = r.next();
  const bool flip = r.bernoulli(0.5);
  if (!pre.enabled) return img;
  Image out = pre.resize ? resize(img, *pre.resize) : img;
  if (pre.pad > 0) {
    const auto span = static_cast<unsigned __int128>(2 * pre.pad + 1);
    const int ox = static_cast<int>((crop_x * span) >> 64);
    const int oy = static_cast<int>((crop_y * span) >> 64);
    out = crop_clamped(pad(out, pre.pad, PadMode::kZero), {ox, oy, out.width(), out.height()});
  }
  if (pre.flip && flip) out = flip_horizontal(out);
  return out;
}

Image augment_sample(const Image& img, const Recipe& recipe, const RngState& rng,
                     StageTimes* times, std::int64_t* preprocess_ns) {
  const auto start = Clock::now();
  Image pre = standard_preprocess(img, recipe.preprocess, rng);
  if (preprocess_ns != nullptr) *preprocess_ns += elapsed_ns(start);
  return inaugment(pre, recipe.inaug, rng, times);
}

Image make_synthetic_image(Dims dims, std::uint64_t seed) {
  RngState rng(seed);
  Image img(dims);
  const double fx = 1.0 + rng.uniform() * 3.0;
  const double fy = 1.0 + rng.uniform() * 3.0;
  const double phase = rng.uniform() * 6.28318;
  for (int y = 0; y < dims.h; ++y) {
    for (int x = 0; x < dims.w; ++x) {
      const double u = static_cast<double>(x) / dims.w;
      const double v = static_cast<double>(y) / dims.h;
      const double wave = 0.5 + 0.5 * std::sin(phase + 6.28318 * (fx * u + fy * v));
      img.set_pixel(x, y,
                    {static_cast<std::uint8_t>(40 + 150 * u + 50 * wave),
                     static_cast<std::uint8_t>(30 + 120 * v + 60 * (1 - wave)),
                     static_cast<std::uint8_t>(60 + 140 * wave * (1 - u))});
    }
  }
  // A few solid blobs so that the histogram has structure.
  for (int b = 0; b < 4; ++b) {
    const int cx = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(dims.w)));
    const int cy = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(dims.h)));
    const int rad = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(std::max(1, dims.w / 6))));
    const Rgb col{static_cast<std::uint8_t>(rng.next()), static_cast<std::uint8_t>(rng.next()),
                  static_cast<std::uint8_t>(rng.next())};
    for (int y = std::max(0, cy - rad); y < std::min(dims.h, cy + rad); ++y) {
      for (int x = std::max(0, cx - rad); x < std::min(dims.w, cx + rad); ++x) {
        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= rad * rad) img.set_pixel(x, y, col);
      }
    }
  }
  // Low-amplitude noise.
  for (auto& b : img.bytes()) {
    const int n = static_cast<int>(rng.uniform_int(9)) - 4;
    b = static_cast<std::uint8_t>(std::clamp(b + n, 0, 255));
  }
  return img;
}

Manifest run_augment(const PipelineConfig& cfg) {
  cfg.validate();
  if (!cfg.source) throw ConfigError("augment needs a source");
  Manifest manifest;
  std::optional<OutputSink> sink;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto reader = open_reader(*cfg.source);
    if (!sink) sink.emplace(cfg.sink_root, cfg.format, reader->num_classes());
    std::uint64_t index = 0;
    while (true) {
      std::vector<LabeledImage> batch = read_batch(*reader, static_cast<std::size_t>(cfg.batch_size));
      if (batch.empty()) break;
      std::vector<ManifestEntry> entries(batch.size());
      const bool parallel_write = cfg.format == OutputFormat::kPng;
      std::vector<std::exception_ptr> errors(batch.size());
      parallel_for(batch.size(), cfg.workers, [&](std::size_t i) {
        try {
          const RngState rng = derive_image_rng(cfg.seed, static_cast<std::uint64_t>(epoch), index + i);
          LabeledImage& item = batch[i];
          item.image = augment_sample(item.image, cfg.recipe, rng);
          entries[i] = {item.source_id, item.label, "", rng.key()};
          if (parallel_write) entries[i].output_path = sink->write(item, static_cast<std::uint64_t>(epoch));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
      for (std::size_t i = 0; i < batch.size(); ++i) {
        if (errors[i]) rethrow_with_id(errors[i], batch[i].source_id);
        if (!parallel_write) {
          try {
            entries[i].output_path = sink->write(batch[i], static_cast<std::uint64_t>(epoch));
          } catch (...) {
            rethrow_with_id(std::current_exception(), batch[i].source_id);
          }
        }
        manifest.entries.push_back(std::move(entries[i]));
      }
      index += batch.size();
    }
    if (epoch == 0) manifest.skipped = reader->skipped();
  }
  if (!sink) sink.emplace(cfg.sink_root, cfg.format, 10);
  manifest.write(cfg.sink_root / "manifest.tsv");
  std::string skipped;
  for (const auto& s : manifest.skipped) skipped += s + "\n";
  write_text(cfg.sink_root / "skipped.txt", skipped);
  return manifest;
}

std::string BenchReport::to_json() const {
  json j;
  j["samples"] = samples;
  j["elapsed_s"] = elapsed_s;
  j["images_per_sec"] = images_per_sec;
  j["workers"] = workers;
  j["kernels"] = kernels;
  j["latency_ns"] = {{"mean", mean_ns}, {"p50", p50_ns}, {"p99", p99_ns}};
  j["stages_ns"] = {{"preprocess", preprocess_ns}, {"sample", sample_ns}, {"copy", copy_ns},
                    {"prepare", prepare_ns},       {"base", base_ns},     {"paste", paste_ns}};
  return j.dump(2);
}

BenchReport run_bench(const Recipe& recipe, const std::vector<Image>& corpus, double duration_s,
                      int workers, std::uint64_t seed) {
  BenchReport report;
  report.workers = std::max(workers, 1);
  report.kernels = simd::active_kernels().name;
  if (!(duration_s > 0.0) || corpus.empty()) return report;

  struct Local {
    std::vector<std::int64_t> latencies;
    StageTimes stages;
    std::int64_t preprocess_ns = 0;
  };
  std::vector<Local> locals(static_cast<std::size_t>(report.workers));
  const auto budget = std::chrono::duration<double>(duration_s);

  // Warm-up outside the measured window.
  for (std::size_t i = 0; i < std::min<std::size_t>(corpus.size(), 4); ++i) {
    (void)augment_sample(corpus[i], recipe, derive_image_rng(seed, ~0ull, i));
  }

  const auto start = Clock::now();
  auto worker = [&](std::size_t w) {
    Local& local = locals[w];
    for (std::uint64_t n = 0;; ++n) {
      if (Clock::now() - start >= budget) break;
      const std::uint64_t index = n * locals.size() + w;
      const Image& img = corpus[index % corpus.size()];
      const auto t0 = Clock::now();
      Image out = augment_sample(img, recipe, derive_image_rng(seed, 0, index), &local.stages,
                                 &local.preprocess_ns);
      local.latencies.push_back(elapsed_ns(t0));
    }
  };
  if (locals.size() == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < locals.size(); ++w) pool.emplace_back(worker, w);
  }
  report.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();

  std::vector<std::int64_t> all;
  StageTimes stages;
  std::int64_t preprocess = 0;
  for (const auto& l : locals) {
    all.insert(all.end(), l.latencies.begin(), l.latencies.end());
    stages.sample_ns += l.stages.sample_ns;
    stages.copy_ns += l.stages.copy_ns;
    stages.prepare_ns += l.stages.prepare_ns;
    stages.base_ns += l.stages.base_ns;
    stages.paste_ns += l.stages.paste_ns;
    preprocess += l.preprocess_ns;
  }
  report.samples = all.size();
  if (report.samples == 0) return report;
  const auto n = static_cast<double>(report.samples);
  double sum = 0.0;
  for (auto v : all) sum += static_cast<double>(v);
  report.mean_ns = sum / n;
  report.images_per_sec = n / report.elapsed_s;
  report.p50_ns = percentile(all, 0.50);
  report.p99_ns = percentile(all, 0.99);
  report.preprocess_ns = static_cast<double>(preprocess) / n;
  report.sample_ns = static_cast<double>(stages.sample_ns) / n;
  report.copy_ns = static_cast<double>(stages.copy_ns) / n;
  report.prepare_ns = static_cast<double>(stages.prepare_ns) / n;
  report.base_ns = static_cast<double>(stages.base_ns) / n;
  report.paste_ns = static_cast<double>(stages.paste_ns) / n;
  return report;
}

BenchReport run_bench(const PipelineConfig& cfg, double duration_s) {
  cfg.validate();
  std::vector<Image> corpus;
  if (cfg.source) {
    auto reader = open_reader(*cfg.source);
    while (corpus.size() < static_cast<std::size_t>(cfg.bench.corpus_size)) {
      auto item = reader->next();
      if (!item) break;
      corpus.push_back(std::move(item->image));
    }
  } else {
    for (int i = 0; i < cfg.bench.corpus_size; ++i) {
      corpus.push_back(make_synthetic_image(cfg.bench.synthetic, cfg.seed + static_cast<std::uint64_t>(i)));
    }
  }
  return run_bench(cfg.recipe, corpus, duration_s, cfg.workers, cfg.seed);
}

Image run_preview(const PipelineConfig& cfg, int rows, int cols) {
  cfg.validate();
  if (rows < 1 || cols < 1) throw ConfigError("preview needs rows >= 1 and cols >= 1");
  if (!cfg.source) throw ConfigError("preview needs a source");
  auto reader = open_reader(*cfg.source);
  std::vector<Image> originals;
  while (originals.size() < static_cast<std::size_t>(rows)) {
    auto item = reader->next();
    if (!item) break;
    originals.push_back(std::move(item->image));
  }
  if (originals.empty()) throw EmptySource("preview source has no images");
  const Dims cell = cfg.preview.cell.value_or(originals.front().dims());
  const int g = cfg.preview.gutter;
  Image grid(cols * (cell.w + g), rows * (cell.h + g), Rgb{255, 255, 255});
  for (std::size_t r = 0; r < originals.size(); ++r) {
    for (int c = 0; c < cols; ++c) {
      Image tile = originals[r];
      if (c > 0) {
        tile = augment_sample(tile, cfg.recipe,
                              derive_image_rng(cfg.seed, static_cast<std::uint64_t>(c - 1), r));
      }
      blit_clipped_into(grid, resize(tile, cell), c * (cell.w + g), static_cast<int>(r) * (cell.h + g));
    }
  }
  return grid;
}

Image ood_pad(const Image& img, const OodConfig& ood) {
  Image padded = pad(img, ood.pad, ood.mode);
  if (ood.mode != PadMode::kSymmetric || ood.pad == 0) return padded;
  Image blurred = gaussian_blur(padded, ood.effective_sigma());
  blit_clipped_into(blurred, img, ood.pad, ood.pad);
  return blurred;
}

Image eval_preprocess(const Image& img, const OodConfig& ood) {
  Image cropped = center_crop(img, ood.crop_fraction);
  return ood.target ? resize(cropped, *ood.target) : cropped;
}

Manifest run_ood_gen(const DatasetSource& src, const OodConfig& ood, const fs::path& sink_root,
                     int workers) {
  if (ood.pad < 0) throw ConfigError("ood.pad must be >= 0");
  auto reader = open_reader(src);
  OutputSink sink(sink_root, OutputFormat::kPng, reader->num_classes());
  Manifest manifest;
  constexpr std::size_t kBatch = 64;
  while (true) {
    std::vector<LabeledImage> batch = read_batch(*reader, kBatch);
    if (batch.empty()) break;
    std::vector<std::string> paths(batch.size());
    parallel_for(batch.size(), workers, [&](std::size_t i) {
      try {
        batch[i].image = eval_preprocess(ood_pad(batch[i].image, ood), ood);
        paths[i] = sink.write(batch[i], 0);
      } catch (...) {
        rethrow_with_id(std::current_exception(), batch[i].source_id);
      }
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      manifest.entries.push_back({batch[i].source_id, batch[i].label, paths[i], 0});
    }
  }
  manifest.skipped = reader->skipped();
  manifest.write(sink_root / "manifest.tsv");
  return manifest;
}

}  // namespace inaug
