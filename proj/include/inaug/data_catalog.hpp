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

#ifndef INAUG_DATA_CATALOG_HPP_
#define INAUG_DATA_CATALOG_HPP_

#include <string>
#include <string_view>
#include <vector>

// Shipped data files (magnitude table, policies, presets). Every file under
// data/ is compiled into the library; setting INAUG_DATA_DIR makes lookups
// read from that directory instead.
namespace inaug {

namespace detail {
struct EmbeddedFile {
  std::string_view path;
  std::string_view contents;
};
const std::vector<EmbeddedFile>& embedded_files();
}  // namespace detail

/// Contents of a data file by path relative to the data root, e.g.
/// "policies/cifar-aa.policy". Throws ConfigError if it does not exist.
std::string read_data_file(std::string_view relative_path);

/// Relative paths of all data files under `prefix`, sorted.
std::vector<std::string> list_data_files(std::string_view prefix);

}  // namespace inaug

#endif  // INAUG_DATA_CATALOG_HPP_
