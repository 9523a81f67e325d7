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

#include "inaug/datasets.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <sstream>

#include "inaug/error.hpp"

namespace fs = std::filesystem;

namespace inaug {
namespace {

constexpr std::size_t kPlane = kCifarSide * kCifarSide;

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class CifarReader : public ImageReader {
 public:
  CifarReader(DatasetKind kind, std::vector<fs::path> files)
      : kind_(kind), files_(std::move(files)) {
    for (const auto& f : files_) {
      std::error_code ec;
      const auto size = fs::file_size(f, ec);
      if (ec) throw IoError("cannot stat " + f.string() + ": " + ec.message());
      if (size % record_bytes() != 0) {
        throw TruncatedFile(f.string() + ": size " + std::to_string(size) +
                            " is not a multiple of the " + std::to_string(record_bytes()) +
                            "-byte record");
      }
    }
    buffer_.resize(record_bytes());
  }

  std::optional<LabeledImage> next() override {
    while (true) {
      if (!in_.is_open()) {
        if (file_index_ >= files_.size()) return std::nullopt;
        in_.open(files_[file_index_], std::ios::binary);
        if (!in_) throw IoError("cannot open " + files_[file_index_].string());
        record_index_ = 0;
      }
      in_.read(reinterpret_cast<char*>(buffer_.data()),
               static_cast<std::streamsize>(buffer_.size()));
      if (in_.gcount() == static_cast<std::streamsize>(buffer_.size())) break;
      if (in_.gcount() != 0) {
        throw TruncatedFile(files_[file_index_].string() + ": short record");
      }
      in_.close();
      ++file_index_;
    }
    const fs::path& file = files_[file_index_];
    const std::size_t label_bytes = kind_ == DatasetKind::kCifar100 ? 2 : 1;
    int label = buffer_[label_bytes - 1];
    if (kind_ == DatasetKind::kCifar100 && buffer_[0] >= 20) {
      throw LabelOutOfRange(file.string() + " record " + std::to_string(record_index_) +
                            ": coarse label " + std::to_string(buffer_[0]) + " >= 20");
    }
    if (label >= num_classes()) {
      throw LabelOutOfRange(file.string() + " record " + std::to_string(record_index_) +
                            ": label " + std::to_string(label) + " >= " +
                            std::to_string(num_classes()));
    }
    char id[32];
    std::snprintf(id, sizeof(id), "_%05llu", static_cast<unsigned long long>(record_index_));
    LabeledImage out{image_from_cifar_planes(std::span(buffer_).subspan(label_bytes)), label,
                     file.stem().string() + id};
    ++record_index_;
    return out;
  }

  int num_classes() const override { return kind_ == DatasetKind::kCifar100 ? 100 : 10; }

 private:
  std::size_t record_bytes() const {
    return (kind_ == DatasetKind::kCifar100 ? 2 : 1) + kCifarPixelBytes;
  }

  DatasetKind kind_;
  std::vector<fs::path> files_;
  std::size_t file_index_ = 0;
  std::uint64_t record_index_ = 0;
  std::ifstream in_;
  std::vector<std::uint8_t> buffer_;
};

bool is_image_file(const fs::path& p) {
  const std::string ext = lower(p.extension().string());
  return ext == ".png" || ext == ".ppm" || ext == ".pnm";
}

class ImageDirReader : public ImageReader {
 public:
  explicit ImageDirReader(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root.string());
    std::vector<fs::path> classes;
    for (const auto& e : fs::directory_iterator(root)) {
      if (e.is_directory()) classes.push_back(e.path());
    }
    std::sort(classes.begin(), classes.end());
    num_classes_ = static_cast<int>(classes.size());
    for (std::size_t label = 0; label < classes.size(); ++label) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(classes[label])) {
        if (e.is_regular_file() && is_image_file(e.path())) files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (auto& f : files) entries_.push_back({std::move(f), static_cast<int>(label)});
    }
  }

  std::optional<LabeledImage> next() override {
    while (index_ < entries_.size()) {
      const Entry& e = entries_[index_++];
      const std::string id =
          e.path.parent_path().filename().string() + "_" + e.path.stem().string();
      try {
        return LabeledImage{read_image_file(e.path), e.label, id};
      } catch (const DecodeError& err) {
        std::cerr << "warning: skipping " << e.path.string() << ": " << err.what() << "\n";
        skipped_.push_back(id);
      }
    }
    return std::nullopt;
  }

  int num_classes() const override { return num_classes_; }
  const std::vector<std::string>& skipped() const override { return skipped_; }

 private:
  struct Entry {
    fs::path path;
    int label;
  };
  std::vector<Entry> entries_;
  std::size_t index_ = 0;
  int num_classes_ = 0;
  std::vector<std::string> skipped_;
};

}  // namespace

std::string_view dataset_kind_name(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kCifar10:
      return "cifar10";
    case DatasetKind::kCifar100:
      return "cifar100";
    case DatasetKind::kImageDir:
      return "image_dir";
  }
  return "?";
}

std::optional<DatasetKind> dataset_kind_from_name(std::string_view name) {
  if (name == "cifar10") return DatasetKind::kCifar10;
  if (name == "cifar100") return DatasetKind::kCifar100;
  if (name == "image_dir") return DatasetKind::kImageDir;
  return std::nullopt;
}

std::vector<fs::path> cifar_files(const DatasetSource& src) {
  std::error_code ec;
  if (fs::is_regular_file(src.root, ec)) return {src.root};
  if (!fs::is_directory(src.root, ec)) throw IoError("no such dataset: " + src.root.string());
  std::vector<std::string> names;
  if (src.kind == DatasetKind::kCifar100) {
    names = {src.split == "test" ? "test.bin" : "train.bin"};
  } else if (src.split == "test") {
    names = {"test_batch.bin"};
  } else {
    for (int i = 1; i <= 5; ++i) names.push_back("data_batch_" + std::to_string(i) + ".bin");
  }
  std::vector<fs::path> files;
  for (const auto& n : names) {
    const fs::path p = src.root / n;
    if (!fs::is_regular_file(p, ec)) throw IoError("missing CIFAR file " + p.string());
    files.push_back(p);
  }
  return files;
}

std::unique_ptr<ImageReader> read_cifar(const DatasetSource& src) {
  if (src.kind == DatasetKind::kImageDir) throw InvalidArgument("read_cifar on an image_dir source");
  return std::make_unique<CifarReader>(src.kind, cifar_files(src));
}

std::unique_ptr<ImageReader> read_image_dir(const DatasetSource& src) {
  return std::make_unique<ImageDirReader>(src.root);
}

std::unique_ptr<ImageReader> open_reader(const DatasetSource& src) {
  return src.kind == DatasetKind::kImageDir ? read_image_dir(src) : read_cifar(src);
}

Image image_from_cifar_planes(std::span<const std::uint8_t> planes) {
  if (planes.size() < kCifarPixelBytes) throw TruncatedFile("short CIFAR record");
  std::vector<std::uint8_t> data(kCifarPixelBytes);
  for (std::size_t i = 0; i < kPlane; ++i) {
    data[i * 3] = planes[i];
    data[i * 3 + 1] = planes[kPlane + i];
    data[i * 3 + 2] = planes[2 * kPlane + i];
  }
  return Image(kCifarSide, kCifarSide, std::move(data));
}

void image_to_cifar_planes(const Image& img, std::span<std::uint8_t> planes) {
  if (img.width() != kCifarSide || img.height() != kCifarSide) {
    throw IoError("CIFAR records hold 32x32 images, got " + std::to_string(img.width()) + "x" +
                  std::to_string(img.height()));
  }
  const auto src = img.bytes();
  for (std::size_t i = 0; i < kPlane; ++i) {
    planes[i] = src[i * 3];
    planes[kPlane + i] = src[i * 3 + 1];
    planes[2 * kPlane + i] = src[i * 3 + 2];
  }
}

Image decode_png(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw DecodeError(std::string("png: ") + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  if (image.width == 0 || image.height == 0 || image.width > (1u << 16) ||
      image.height > (1u << 16)) {
    png_image_free(&image);
    throw DecodeError("png: unsupported dimensions");
  }
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, data.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw DecodeError("png: " + msg);
  }
  return Image(static_cast<int>(image.width), static_cast<int>(image.height), std::move(data));
}

Image decode_ppm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> long {
    skip_ws();
    long v = 0;
    const std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(bytes[pos]) && v < (1L << 24)) {
      v = v * 10 + (bytes[pos++] - '0');
    }
    if (pos == start) throw DecodeError("ppm: malformed header");
    return v;
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw DecodeError("ppm: not a binary P6 file");
  }
  pos = 2;
  const long w = read_int();
  const long h = read_int();
  const long maxval = read_int();
  if (w < 1 || h < 1 || w > (1 << 16) || h > (1 << 16)) throw DecodeError("ppm: bad dimensions");
  if (maxval != 255) throw DecodeError("ppm: only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw DecodeError("ppm: malformed header");
  ++pos;
  const std::size_t need = static_cast<std::size_t>(w) * h * 3;
  if (bytes.size() - pos < need) throw DecodeError("ppm: truncated pixel data");
  std::vector<std::uint8_t> data(bytes.begin() + pos, bytes.begin() + pos + need);
  return Image(static_cast<int>(w), static_cast<int>(h), std::move(data));
}

Image read_image_file(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  const std::string ext = lower(path.extension().string());
  if (ext == ".ppm" || ext == ".pnm") return decode_ppm(bytes);
  return decode_png(bytes);
}

std::vector<std::uint8_t> encode_png(const Image& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, img.bytes().data(), 0, nullptr)) {
    throw IoError(std::string("png encode: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, img.bytes().data(), 0, nullptr)) {
    throw IoError(std::string("png encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

void write_png(const fs::path& path, const Image& img) {
  const auto bytes = encode_png(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::optional<OutputFormat> output_format_from_name(std::string_view name) {
  if (name == "png") return OutputFormat::kPng;
  if (name == "cifar_record") return OutputFormat::kCifarRecord;
  return std::nullopt;
}

OutputSink::OutputSink(fs::path root, OutputFormat format, int num_classes)
    : root_(std::move(root)), format_(format), num_classes_(num_classes) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw IoError("cannot create " + root_.string() + ": " + ec.message());
  if (format_ == OutputFormat::kCifarRecord) {
    records_.open(root_ / kRecordFile, std::ios::binary | std::ios::trunc);
    if (!records_) throw IoError("cannot open " + (root_ / kRecordFile).string());
  }
}

std::string OutputSink::write(const LabeledImage& sample, std::uint64_t epoch) {
  if (format_ == OutputFormat::kPng) {
    const std::string label_dir = std::to_string(sample.label);
    const std::string name = sample.source_id + "_" + std::to_string(epoch) + ".png";
    const fs::path dir = root_ / label_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    write_png(dir / name, sample.image);
    return label_dir + "/" + name;
  }
  const bool wide = num_classes_ > 10;
  if (sample.label < 0 || sample.label > 255) throw IoError("label does not fit a record byte");
  std::vector<std::uint8_t> record((wide ? 2 : 1) + kCifarPixelBytes, 0);
  record[wide ? 1 : 0] = static_cast<std::uint8_t>(sample.label);
  image_to_cifar_planes(sample.image, std::span(record).subspan(wide ? 2 : 1));
  std::lock_guard lock(mutex_);
  records_.write(reinterpret_cast<const char*>(record.data()),
                 static_cast<std::streamsize>(record.size()));
  records_.flush();
  if (!records_) throw IoError("write failed: " + (root_ / kRecordFile).string());
  return std::string(kRecordFile) + "#" + std::to_string(record_count_++);
}

std::string Manifest::to_text() const {
  std::string out;
  char seed[17];
  for (const auto& e : entries) {
    std::snprintf(seed, sizeof(seed), "%016llx", static_cast<unsigned long long>(e.seed));
    out += e.source_id + "\t" + std::to_string(e.label) + "\t" + e.output_path + "\t" + seed + "\n";
  }
  return out;
}

void Manifest::write(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_text();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace inaug
