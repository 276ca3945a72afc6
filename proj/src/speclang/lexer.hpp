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
#include <string>
#include <string_view>
#include <vector>

namespace specguard::lang {

enum class Tok {
  kNumber, kString, kIdent,
  kLParen, kRParen, kLBracket, kRBracket, kComma, kDot,
  kPlus, kMinus, kStar, kSlash,
  kLt, kLe, kGt, kGe, kEqEq, kNe,
  kAndAnd, kOrOr, kBang,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;   // raw source slice ("" for kEnd)
  std::string value;  // unescaped payload for kString
  double number = 0;  // kNumber
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Whole-input tokenization; throws SyntaxError on an unknown character or an
/// unterminated string. The last token is always kEnd.
std::vector<Token> tokenize(std::string_view text);

}  // namespace specguard::lang
