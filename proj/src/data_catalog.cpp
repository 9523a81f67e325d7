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

#include "inaug/data_catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "inaug/error.hpp"

namespace inaug {
namespace {

const char* override_dir() {
  const char* dir = std::getenv("INAUG_DATA_DIR");
  return (dir != nullptr && *dir != '\0') ? dir : nullptr;
}

}  // namespace

std::string read_data_file(std::string_view relative_path) {
  if (const char* dir = override_dir()) {
    const std::filesystem::path p = std::filesystem::path(dir) / relative_path;
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("data file not found: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  for (const auto& f : detail::embedded_files()) {
    if (f.path == relative_path) return std::string(f.contents);
  }
  throw ConfigError("data file not found: " + std::string(relative_path));
}

std::vector<std::string> list_data_files(std::string_view prefix) {
  std::vector<std::string> out;
  if (const char* dir = override_dir()) {
    const std::filesystem::path root(dir);
    std::error_code ec;
    for (auto it = std::filesystem::recursive_directory_iterator(root, ec);
         !ec && it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
      if (!it->is_regular_file()) continue;
      std::string rel = std::filesystem::relative(it->path(), root).generic_string();
      if (rel.starts_with(prefix)) out.push_back(std::move(rel));
    }
  } else {
    for (const auto& f : detail::embedded_files()) {
      if (f.path.starts_with(prefix)) out.emplace_back(f.path);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace inaug
