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

#include "specguard/error.hpp"

#include <utility>

namespace specguard {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax_error";
    case ErrorCode::kType: return "type_error";
    case ErrorCode::kEval: return "evaluation_error";
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kSpec: return "spec_error";
    case ErrorCode::kClassifier: return "classifier_error";
    case ErrorCode::kPattern: return "pattern_error";
    case ErrorCode::kConfig: return "config_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kFormat: return "format_error";
  }
  return "error";
}

const char* to_string(EvalErrorKind kind) noexcept {
  switch (kind) {
    case EvalErrorKind::kDivisionByZero: return "division by zero";
    case EvalErrorKind::kMissingField: return "missing field";
    case EvalErrorKind::kUnboundOutput: return "unbound output";
    case EvalErrorKind::kTypeMismatch: return "type mismatch";
    case EvalErrorKind::kIndexOutOfRange: return "index out of range";
  }
  return "evaluation error";
}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::string> details)
    : std::runtime_error(message), code_(code), details_(std::move(details)) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::string token,
                         const std::string& reason)
    : Error(ErrorCode::kSyntax,
            "syntax error at line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + reason +
                (token.empty() ? std::string(" at end of input")
                               : " at token '" + token + "'")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

EvalError::EvalError(EvalErrorKind kind, const std::string& message)
    : Error(ErrorCode::kEval, message), kind_(kind) {}

}  // namespace specguard
