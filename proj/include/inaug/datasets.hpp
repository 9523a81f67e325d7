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

#ifndef INAUG_DATASETS_HPP_
#define INAUG_DATASETS_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inaug/image.hpp"

namespace inaug {

enum class DatasetKind { kCifar10, kCifar100, kImageDir };

std::string_view dataset_kind_name(DatasetKind kind);
std::optional<DatasetKind> dataset_kind_from_name(std::string_view name);

/// `root` is a directory (or, for CIFAR, a single .bin file). `split` selects
/// the CIFAR batch files ("train" or "test"); image_dir ignores it.
struct DatasetSource {
  DatasetKind kind = DatasetKind::kCifar10;
  std::filesystem::path root;
  std::string split = "train";
};

struct LabeledImage {
  Image image;
  int label = 0;
  std::string source_id;
};

/// Sequential, single-consumer stream in a deterministic order.
class ImageReader {
 public:
  virtual ~ImageReader() = default;
  virtual std::optional<LabeledImage> next() = 0;
  virtual int num_classes() const = 0;
  /// Files skipped because they failed to decode (image_dir only).
  virtual const std::vector<std::string>& skipped() const { return no_skips_; }

 private:
  std::vector<std::string> no_skips_;
};

// CIFAR binary layout: per record 1 label byte (CIFAR-100: coarse then fine),
// then 3072 bytes as R, G, B planes of 32x32 row-major.
inline constexpr int kCifarSide = 32;
inline constexpr std::size_t kCifarPixelBytes = 3 * 32 * 32;

/// Files of a CIFAR split in read order. A root that is a regular file is
/// returned as-is.
std::vector<std::filesystem::path> cifar_files(const DatasetSource& src);

/// Throws TruncatedFile if any file size is not a multiple of the record
/// length; LabelOutOfRange is thrown from next().
std::unique_ptr<ImageReader> read_cifar(const DatasetSource& src);

/// Class-named subdirectories of PNG/PPM files; classes and files in
/// lexicographic order, labels by sorted class name. Undecodable files are
/// skipped with a warning on stderr.
std::unique_ptr<ImageReader> read_image_dir(const DatasetSource& src);

std::unique_ptr<ImageReader> open_reader(const DatasetSource& src);

/// Decoders: PNG (any bit depth/color type, converted to 8-bit RGB) and
/// binary PPM (P6, maxval 255). Throw DecodeError.
Image decode_png(std::span<const std::uint8_t> bytes);
Image decode_ppm(std::span<const std::uint8_t> bytes);
Image read_image_file(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const Image& img);
void write_png(const std::filesystem::path& path, const Image& img);

/// Interleaved RGB <-> CIFAR planes.
Image image_from_cifar_planes(std::span<const std::uint8_t> planes);
void image_to_cifar_planes(const Image& img, std::span<std::uint8_t> planes);

enum class OutputFormat { kPng, kCifarRecord };

std::optional<OutputFormat> output_format_from_name(std::string_view name);

/// Writes augmented samples under `root`.
///   png:          <root>/<label>/<source_id>_<epoch>.png
///   cifar_record: appended to <root>/records.bin, CIFAR-10 layout when the
///                 source has <= 10 classes, otherwise CIFAR-100 layout with a
///                 zero coarse label.
/// Thread-safe; record appends are serialized.
class OutputSink {
 public:
  OutputSink(std::filesystem::path root, OutputFormat format, int num_classes);

  /// Returns the output location relative to root (records as
  /// "records.bin#<index>"). Throws IoError.
  std::string write(const LabeledImage& sample, std::uint64_t epoch);

  const std::filesystem::path& root() const { return root_; }
  OutputFormat format() const { return format_; }
  static constexpr std::string_view kRecordFile = "records.bin";

 private:
  std::filesystem::path root_;
  OutputFormat format_;
  int num_classes_;
  std::mutex mutex_;
  std::ofstream records_;
  std::uint64_t record_count_ = 0;
};

struct ManifestEntry {
  std::string source_id;
  int label = 0;
  std::string output_path;
  std::uint64_t seed = 0;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// One line per written record: <source_id>\t<label>\t<output path>\t<seed>,
/// seed as 16 lowercase hex digits. Skipped inputs are kept separately.
struct Manifest {
  std::vector<ManifestEntry> entries;
  std::vector<std::string> skipped;

  std::string to_text() const;
  void write(const std::filesystem::path& path) const;
};

}  // namespace inaug

#endif  // INAUG_DATASETS_HPP_
