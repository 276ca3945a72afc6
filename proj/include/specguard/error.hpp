// Copyright 2026 The specguard Authors.
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
#include <vector>

namespace specguard {

enum class ErrorCode {
  kSyntax,      // expression text does not parse
  kType,        // expression does not typecheck
  kEval,        // runtime evaluation failure
  kSchema,      // record or schema does not conform
  kSpec,        // partial specification is not well formed
  kClassifier,  // classifier failed to produce a prediction
  kPattern,     // architecture pattern could not decide
  kConfig,      // invalid configuration value
  kIo,          // file or stream failure
  kFormat,      // malformed JSON document
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every exception thrown by the library. `details()` carries the
/// individual findings when one error aggregates several (e.g. all static
/// issues of a spec document).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string token,
              const std::string& reason);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

enum class EvalErrorKind {
  kDivisionByZero,
  kMissingField,
  kUnboundOutput,
  kTypeMismatch,
  kIndexOutOfRange,
};

const char* to_string(EvalErrorKind kind) noexcept;

class EvalError : public Error {
 public:
  EvalError(EvalErrorKind kind, const std::string& message);

  EvalErrorKind kind() const noexcept { return kind_; }

 private:
  EvalErrorKind kind_;
};

}  // namespace specguard
