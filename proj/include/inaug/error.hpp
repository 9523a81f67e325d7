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

#ifndef INAUG_ERROR_HPP_
#define INAUG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace inaug {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

/// Malformed policy, magnitude table or config document. Carries the
/// offending line (1-based, 0 when not line oriented) and field name.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& source, int line, const std::string& field,
              const std::string& message)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
              (field.empty() ? std::string() : " [" + field + "]") + ": " +
              message),
        line_(line),
        field_(field) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Base for failures caused by input or output data rather than by config.
class DataError : public Error {
 public:
  using Error::Error;
};

class TruncatedFile : public DataError {
 public:
  using DataError::DataError;
};

class LabelOutOfRange : public DataError {
 public:
  using DataError::DataError;
};

class DecodeError : public DataError {
 public:
  using DataError::DataError;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class EmptySource : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace inaug

#endif  // INAUG_ERROR_HPP_
