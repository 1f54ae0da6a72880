// Copyright 2026 The topkduel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPKDUEL_ERRORS_H_
#define TOPKDUEL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace topkduel {

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid benchmark or generator configuration; names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Matrix environment file problems.
class MatrixFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MatrixFormatError : public MatrixFileError {
 public:
  using MatrixFileError::MatrixFileError;
};
class MatrixShapeError : public MatrixFileError {
 public:
  using MatrixFileError::MatrixFileError;
};
class MatrixValueError : public MatrixFileError {
 public:
  using MatrixFileError::MatrixFileError;
};

}  // namespace topkduel

#endif  // TOPKDUEL_ERRORS_H_
