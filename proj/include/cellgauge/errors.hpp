// Copyright 2026 The Cellgauge Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellgauge {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SyntaxErrorKind { kMalformed, kUnbalancedParens, kEmptyFormula };

/// Formula text could not be parsed. `offset()` is a 0-based character
/// offset into the original formula text.
class SyntaxError : public Error {
 public:
  SyntaxError(SyntaxErrorKind kind, std::size_t offset, const std::string& what)
      : Error(what), kind_(kind), offset_(offset) {}

  SyntaxErrorKind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  SyntaxErrorKind kind_;
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed workbook document or CSV grid.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnknownCellError : public Error {
 public:
  using Error::Error;
};

class LimitExceededError : public Error {
 public:
  explicit LimitExceededError(std::size_t limit)
      : Error("path enumeration exceeded limit of " + std::to_string(limit)),
        limit_(limit) {}

  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

}  // namespace cellgauge
