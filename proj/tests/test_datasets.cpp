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

#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "inaug/datasets.hpp"
#include "inaug/error.hpp"
#include "test_util.hpp"

namespace inaug {
namespace {

namespace fs = std::filesystem;
using testing::random_image;
using testing::read_file;
using testing::TempDir;

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

TEST(CifarPlanes, RoundTrip) {
  const Image img = random_image(32, 32, 1);
  std::vector<std::uint8_t> planes(kCifarPixelBytes);
  image_to_cifar_planes(img, planes);
  // Red plane first, row-major.
  EXPECT_EQ(planes[0], img.at(0, 0, 0));
  EXPECT_EQ(planes[1], img.at(1, 0, 0));
  EXPECT_EQ(planes[1024], img.at(0, 0, 1));
  EXPECT_EQ(planes[2048 + 33], img.at(1, 1, 2));
  EXPECT_EQ(image_from_cifar_planes(planes), img);
}

TEST(ReadCifar, Cifar10FileRoundTrip) {
  TempDir dir("cifar10");
  const auto fx = testing::write_cifar_file(dir.path() / "data_batch_1.bin", 12, 5);
  auto reader = open_reader({DatasetKind::kCifar10, dir.path() / "data_batch_1.bin", "train"});
  EXPECT_EQ(reader->num_classes(), 10);
  for (int i = 0; i < 12; ++i) {
    auto item = reader->next();
    ASSERT_TRUE(item);
    EXPECT_EQ(item->image, fx.images[i]);
    EXPECT_EQ(item->label, fx.labels[i]);
  }
  EXPECT_FALSE(reader->next());
}

TEST(ReadCifar, DirectoryLayoutOrderAndIds) {
  TempDir dir("cifar10dir");
  for (int b = 1; b <= 5; ++b) {
    testing::write_cifar_file(dir.path() / ("data_batch_" + std::to_string(b) + ".bin"), 2, b * 10);
  }
  testing::write_cifar_file(dir.path() / "test_batch.bin", 3, 99);
  const auto files = cifar_files({DatasetKind::kCifar10, dir.path(), "train"});
  ASSERT_EQ(files.size(), 5u);
  EXPECT_EQ(files[4].filename(), "data_batch_5.bin");
  auto train = open_reader({DatasetKind::kCifar10, dir.path(), "train"});
  std::vector<std::string> ids;
  while (auto item = train->next()) ids.push_back(item->source_id);
  ASSERT_EQ(ids.size(), 10u);
  EXPECT_EQ(ids[0], "data_batch_1_00000");
  EXPECT_EQ(ids[3], "data_batch_2_00001");
  auto test = open_reader({DatasetKind::kCifar10, dir.path(), "test"});
  int n = 0;
  while (test->next()) ++n;
  EXPECT_EQ(n, 3);
}

TEST(ReadCifar, Cifar100UsesFineLabel) {
  TempDir dir("cifar100");
  const auto fx = testing::write_cifar_file(dir.path() / "train.bin", 20, 3, 100);
  auto reader = open_reader({DatasetKind::kCifar100, dir.path(), "train"});
  EXPECT_EQ(reader->num_classes(), 100);
  for (int i = 0; i < 20; ++i) {
    auto item = reader->next();
    ASSERT_TRUE(item);
    EXPECT_EQ(item->label, fx.labels[i]);
    EXPECT_EQ(item->image, fx.images[i]);
  }
}

TEST(ReadCifar, TruncatedFileIsRejected) {
  TempDir dir("trunc");
  const fs::path f = dir.path() / "b.bin";
  testing::write_cifar_file(f, 3, 1);
  fs::resize_file(f, 3 * 3073 - 100);
  EXPECT_THROW(open_reader({DatasetKind::kCifar10, f, "train"}), TruncatedFile);
}

TEST(ReadCifar, LabelOutOfRange) {
  TempDir dir("label");
  const fs::path f = dir.path() / "b.bin";
  testing::write_cifar_file(f, 2, 1);
  {
    std::fstream io(f, std::ios::binary | std::ios::in | std::ios::out);
    io.seekp(3073);
    io.put(static_cast<char>(10));
  }
  auto reader = open_reader({DatasetKind::kCifar10, f, "train"});
  EXPECT_TRUE(reader->next());
  EXPECT_THROW(reader->next(), LabelOutOfRange);
}

TEST(ReadCifar, MissingRoot) {
  EXPECT_THROW(open_reader({DatasetKind::kCifar10, "/nonexistent/inaug", "train"}), IoError);
}

TEST(Png, EncodeDecodeRoundTrip) {
  for (Dims d : {Dims{1, 1}, Dims{7, 3}, Dims{64, 48}}) {
    const Image img = random_image(d.w, d.h, d.area());
    EXPECT_EQ(decode_png(encode_png(img)), img);
  }
  EXPECT_THROW(decode_png(bytes_of("not a png")), DecodeError);
}

TEST(Ppm, Decode) {
  std::string text = "P6\n# comment\n2 1\n255\n";
  text += std::string("\x01\x02\x03\xff\xfe\xfd", 6);
  const Image img = decode_ppm(bytes_of(text));
  EXPECT_EQ(img.dims(), (Dims{2, 1}));
  EXPECT_EQ(img.pixel(1, 0), (Rgb{255, 254, 253}));
  EXPECT_THROW(decode_ppm(bytes_of("P3\n1 1\n255\n1 2 3")), DecodeError);
  EXPECT_THROW(decode_ppm(bytes_of("P6\n4 4\n255\n\x01")), DecodeError);
  EXPECT_THROW(decode_ppm(bytes_of("P6\n1 1\n65535\n\x01\x01\x01\x01\x01\x01")), DecodeError);
}

TEST(ImageDir, SortedClassesAndSkipsUndecodable) {
  TempDir dir("imgdir");
  testing::write_image_dir(dir.path(), 3, 7);
  {
    std::ofstream bad(dir.path() / "class_a" / "img_001b.png");
    bad << "garbage";
    std::ofstream ignored(dir.path() / "class_b" / "notes.txt");
    ignored << "not an image";
  }
  auto reader = open_reader({DatasetKind::kImageDir, dir.path(), "train"});
  EXPECT_EQ(reader->num_classes(), 2);
  std::vector<std::pair<std::string, int>> seen;
  while (auto item = reader->next()) seen.emplace_back(item->source_id, item->label);
  ASSERT_EQ(seen.size(), 6u);
  EXPECT_EQ(seen[0], (std::pair<std::string, int>{"class_a_img_000", 0}));
  EXPECT_EQ(seen[2], (std::pair<std::string, int>{"class_a_img_002", 0}));
  EXPECT_EQ(seen[3], (std::pair<std::string, int>{"class_b_img_000", 1}));
  ASSERT_EQ(reader->skipped().size(), 1u);
  EXPECT_EQ(reader->skipped()[0], "class_a_img_001b");
}

TEST(OutputSink, PngLayout) {
  TempDir dir("sinkpng");
  OutputSink sink(dir.path() / "out", OutputFormat::kPng, 10);
  const Image img = random_image(5, 4, 2);
  const std::string rel = sink.write({img, 3, "x_00001"}, 2);
  EXPECT_EQ(rel, "3/x_00001_2.png");
  EXPECT_EQ(read_image_file(dir.path() / "out" / rel), img);
}

TEST(OutputSink, CifarRecordsReadBack) {
  TempDir dir("sinkrec");
  std::vector<Image> written;
  {
    OutputSink sink(dir.path(), OutputFormat::kCifarRecord, 10);
    for (int i = 0; i < 4; ++i) {
      written.push_back(random_image(32, 32, 10 + i));
      EXPECT_EQ(sink.write({written.back(), i, "s"}, 0), "records.bin#" + std::to_string(i));
    }
    EXPECT_THROW(sink.write({random_image(8, 8, 1), 0, "small"}, 0), IoError);
  }
  auto reader = open_reader({DatasetKind::kCifar10, dir.path() / "records.bin", "train"});
  for (int i = 0; i < 4; ++i) {
    auto item = reader->next();
    ASSERT_TRUE(item);
    EXPECT_EQ(item->image, written[i]);
    EXPECT_EQ(item->label, i);
  }
}

TEST(OutputSink, WideRecordsForHundredClasses) {
  TempDir dir("sinkwide");
  const Image img = random_image(32, 32, 3);
  {
    OutputSink sink(dir.path(), OutputFormat::kCifarRecord, 100);
    sink.write({img, 57, "s"}, 0);
  }
  const std::string raw = read_file(dir.path() / "records.bin");
  ASSERT_EQ(raw.size(), 2 + kCifarPixelBytes);
  EXPECT_EQ(raw[0], 0);
  EXPECT_EQ(raw[1], 57);
  auto reader = open_reader({DatasetKind::kCifar100, dir.path() / "records.bin", "train"});
  EXPECT_EQ(reader->next()->label, 57);
}

TEST(OutputFormat, OnlyLosslessNames) {
  EXPECT_EQ(output_format_from_name("png"), OutputFormat::kPng);
  EXPECT_EQ(output_format_from_name("cifar_record"), OutputFormat::kCifarRecord);
  EXPECT_FALSE(output_format_from_name("jpeg").has_value());
}

TEST(Manifest, TabSeparatedWithHexSeed) {
  Manifest m;
  m.entries.push_back({"a_00000", 3, "3/a_00000_0.png", 0xabcull});
  m.entries.push_back({"b", 12, "records.bin#1", ~0ull});
  EXPECT_EQ(m.to_text(),
            "a_00000\t3\t3/a_00000_0.png\t0000000000000abc\n"
            "b\t12\trecords.bin#1\tffffffffffffffff\n");
}

TEST(DatasetKind, Names) {
  for (auto k : {DatasetKind::kCifar10, DatasetKind::kCifar100, DatasetKind::kImageDir}) {
    EXPECT_EQ(dataset_kind_from_name(dataset_kind_name(k)), k);
  }
  EXPECT_FALSE(dataset_kind_from_name("imagenet"));
}

}  // namespace
}  // namespace inaug
