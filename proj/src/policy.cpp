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

#include "inaug/policy.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "inaug/data_catalog.hpp"
#include "inaug/error.hpp"

namespace inaug {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class LineParser {
 public:
  LineParser(std::string_view source, int line, std::string_view text)
      : source_(source), line_(line), text_(text) {}

  std::vector<OpSpec> parse_ops() {
    std::vector<OpSpec> ops;
    skip_space();
    while (pos_ < text_.size()) {
      ops.push_back(parse_op());
      skip_space();
    }
    return ops;
  }

 private:
  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw SchemaError(std::string(source_), line_, field, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void expect(char c, const std::string& field) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(field, std::string("expected '") + c + "' at column " + std::to_string(pos_ + 1));
    }
    ++pos_;
  }

  std::string_view field_until(char stop) {
    const std::size_t end = text_.find(stop, pos_);
    if (end == std::string_view::npos) return trim(text_.substr(pos_, 0));
    std::string_view f = trim(text_.substr(pos_, end - pos_));
    pos_ = end;
    return f;
  }

  OpSpec parse_op() {
    expect('(', "op");
    const std::string_view name = field_until(',');
    expect(',', "kind");
    const auto kind = op_kind_from_name(name);
    if (!kind) fail("kind", "unknown op kind '" + std::string(name) + "'");

    const std::string_view prob_text = field_until(',');
    expect(',', "probability");
    double prob = 0.0;
    {
      auto [p, ec] = std::from_chars(prob_text.data(), prob_text.data() + prob_text.size(), prob);
      if (ec != std::errc() || p != prob_text.data() + prob_text.size() || !(prob >= 0.0) ||
          prob > 1.0) {
        fail("probability", "expected a number in [0, 1], got '" + std::string(prob_text) + "'");
      }
    }

    const std::string_view level_text = field_until(')');
    expect(')', "level");
    int level = 0;
    {
      auto [p, ec] =
          std::from_chars(level_text.data(), level_text.data() + level_text.size(), level);
      if (ec != std::errc() || p != level_text.data() + level_text.size() || level < 0 ||
          level > kMaxLevel) {
        fail("level", "expected an integer in [0, 9], got '" + std::string(level_text) + "'");
      }
    }
    return {*kind, prob, level};
  }

  std::string_view source_;
  int line_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_probability(double p) {
  char buf[32];
  // Shortest representation that parses back to the same double.
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, end);
}

OpDraw draw_op(const OpSpec* spec, RngState& rng) {
  OpDraw d;
  const double u = rng.uniform();
  const std::uint64_t sign = rng.next();
  d.aux = rng.next();
  if (spec != nullptr) {
    d.fired = u < spec->probability;
    d.direction = (is_signed(spec->kind) && (sign & 1u)) ? -1 : 1;
  }
  return d;
}

void draw_ops(SampledTransform& t, const Policy& policy, RngState& rng) {
  const auto& ops = policy.subpolicies[t.subpolicy].ops;
  t.draws.clear();
  t.magnitudes.clear();
  const std::size_t slots = policy.max_ops();
  for (std::size_t j = 0; j < slots; ++j) {
    const OpSpec* spec = j < ops.size() ? &ops[j] : nullptr;
    const OpDraw d = draw_op(spec, rng);
    if (spec != nullptr) {
      t.draws.push_back(d);
      t.magnitudes.push_back(spec->magnitude);
    }
  }
}

}  // namespace

std::size_t Policy::max_ops() const {
  std::size_t m = 0;
  for (const auto& sp : subpolicies) m = std::max(m, sp.ops.size());
  return m;
}

Policy parse_policy(std::string_view text, std::string_view source_name) {
  Policy policy;
  bool saw_header = false;
  bool saw_name = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!saw_header) {
      if (line != "inaug-policy v1") {
        throw SchemaError(std::string(source_name), line_no, "header",
                          "expected 'inaug-policy v1'");
      }
      saw_header = true;
    } else if (line.starts_with("name")) {
      if (saw_name) throw SchemaError(std::string(source_name), line_no, "name", "duplicate name");
      const std::string_view value = trim(line.substr(4));
      if (value.empty() || value.find_first_of(" \t") != std::string_view::npos) {
        throw SchemaError(std::string(source_name), line_no, "name",
                          "expected a single identifier");
      }
      policy.name = std::string(value);
      saw_name = true;
    } else {
      LineParser parser(source_name, line_no, line);
      SubPolicy sp{parser.parse_ops()};
      if (sp.ops.empty()) {
        throw SchemaError(std::string(source_name), line_no, "subpolicy", "no ops");
      }
      policy.subpolicies.push_back(std::move(sp));
    }
    if (end == text.size()) break;
  }
  if (!saw_header) throw SchemaError(std::string(source_name), 0, "header", "empty policy file");
  if (!saw_name) throw SchemaError(std::string(source_name), 0, "name", "missing name line");
  if (policy.subpolicies.empty()) {
    throw SchemaError(std::string(source_name), 0, "subpolicies",
                      "a policy needs at least one sub-policy");
  }
  return policy;
}

std::string serialize_policy(const Policy& policy) {
  std::string out = "inaug-policy v1\nname " + policy.name + "\n";
  for (const auto& sp : policy.subpolicies) {
    for (std::size_t i = 0; i < sp.ops.size(); ++i) {
      const OpSpec& op = sp.ops[i];
      if (i > 0) out += ' ';
      out += '(';
      out += op_kind_name(op.kind);
      out += ", " + format_probability(op.probability) + ", " + std::to_string(op.magnitude) + ")";
    }
    out += '\n';
  }
  return out;
}

Policy load_policy(std::string_view name_or_path) {
  const std::filesystem::path p(name_or_path);
  std::error_code ec;
  if (std::filesystem::is_regular_file(p, ec)) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_policy(ss.str(), p.string());
  }
  const std::string rel = "policies/" + std::string(name_or_path) + ".policy";
  return parse_policy(read_data_file(rel), rel);
}

std::uint64_t transform_draw_count(const Policy& policy) {
  return 1 + kDrawsPerOp * policy.max_ops();
}

SampledTransform sample_transform(const Policy& policy, RngState& rng) {
  SampledTransform t;
  t.subpolicy = static_cast<std::size_t>(rng.uniform_int(policy.subpolicies.size()));
  draw_ops(t, policy, rng);
  return t;
}

SampledTransform resample_ops(const SampledTransform& t, const Policy& policy, RngState& rng) {
  SampledTransform out;
  out.subpolicy = t.subpolicy;
  draw_ops(out, policy, rng);
  return out;
}

Image apply_transform(Image img, const SampledTransform& t, const Policy& policy,
                      const MagnitudeTable& table) {
  const auto& ops = policy.subpolicies.at(t.subpolicy).ops;
  for (std::size_t j = 0; j < ops.size() && j < t.draws.size(); ++j) {
    OpSpec spec = ops[j];
    spec.magnitude = t.magnitudes[j];
    img = apply_op(std::move(img), spec, t.draws[j], table);
  }
  return img;
}

}  // namespace inaug
