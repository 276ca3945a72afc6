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

#include "speclang/lexer.hpp"

#include <cctype>
#include <charconv>

#include "specguard/error.hpp"

namespace specguard::lang {
namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back(Token{Tok::kEnd, "", "", 0, line_, column_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        column_ = 1;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance(1);
      } else {
        break;
      }
    }
  }

  void advance(std::size_t n) {
    pos_ += n;
    column_ += n;
  }

  Token make(Tok kind, std::size_t len) {
    Token t{kind, std::string(text_.substr(pos_, len)), "", 0, line_, column_};
    advance(len);
    return t;
  }

  Token next() {
    const char c = text_[pos_];
    const char n = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
    switch (c) {
      case '(': return make(Tok::kLParen, 1);
      case ')': return make(Tok::kRParen, 1);
      case '[': return make(Tok::kLBracket, 1);
      case ']': return make(Tok::kRBracket, 1);
      case ',': return make(Tok::kComma, 1);
      case '.': return make(Tok::kDot, 1);
      case '+': return make(Tok::kPlus, 1);
      case '-': return make(Tok::kMinus, 1);
      case '*': return make(Tok::kStar, 1);
      case '/': return make(Tok::kSlash, 1);
      case '<': return n == '=' ? make(Tok::kLe, 2) : make(Tok::kLt, 1);
      case '>': return n == '=' ? make(Tok::kGe, 2) : make(Tok::kGt, 1);
      case '!': return n == '=' ? make(Tok::kNe, 2) : make(Tok::kBang, 1);
      case '=':
        if (n == '=') return make(Tok::kEqEq, 2);
        throw SyntaxError(line_, column_, "=", "unexpected character (did you mean '==')");
      case '&':
        if (n == '&') return make(Tok::kAndAnd, 2);
        throw SyntaxError(line_, column_, "&", "unexpected character (did you mean '&&')");
      case '|':
        if (n == '|') return make(Tok::kOrOr, 2);
        throw SyntaxError(line_, column_, "|", "unexpected character (did you mean '||')");
      case '"': return string_literal();
      default: break;
    }
    if (is_digit(c)) return number();
    if (is_ident_start(c)) {
      std::size_t len = 1;
      while (pos_ + len < text_.size() && is_ident_char(text_[pos_ + len])) ++len;
      return make(Tok::kIdent, len);
    }
    // Report a whole UTF-8 sequence rather than a stray byte.
    std::size_t len = 1;
    while (pos_ + len < text_.size() &&
           (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80)
      ++len;
    throw SyntaxError(line_, column_, std::string(text_.substr(pos_, len)),
                      "unexpected character");
  }

  Token number() {
    std::size_t len = 0;
    auto digits = [&] {
      while (pos_ + len < text_.size() && is_digit(text_[pos_ + len])) ++len;
    };
    digits();
    if (pos_ + len + 1 < text_.size() && text_[pos_ + len] == '.' &&
        is_digit(text_[pos_ + len + 1])) {
      ++len;
      digits();
    }
    if (pos_ + len < text_.size() &&
        (text_[pos_ + len] == 'e' || text_[pos_ + len] == 'E')) {
      std::size_t save = len;
      ++len;
      if (pos_ + len < text_.size() &&
          (text_[pos_ + len] == '+' || text_[pos_ + len] == '-'))
        ++len;
      if (pos_ + len < text_.size() && is_digit(text_[pos_ + len]))
        digits();
      else
        len = save;
    }
    std::string_view slice = text_.substr(pos_, len);
    double value = 0;
    auto [ptr, ec] = std::from_chars(slice.data(), slice.data() + slice.size(), value);
    if (ec != std::errc() || ptr != slice.data() + slice.size())
      throw SyntaxError(line_, column_, std::string(slice), "invalid number");
    Token t = make(Tok::kNumber, len);
    t.number = value;
    return t;
  }

  Token string_literal() {
    const std::size_t start_line = line_, start_col = column_;
    std::size_t i = pos_ + 1;
    std::string value;
    while (i < text_.size() && text_[i] != '"') {
      char c = text_[i];
      if (c == '\n')
        throw SyntaxError(start_line, start_col, "\"", "unterminated string");
      if (c == '\\') {
        if (i + 1 >= text_.size()) break;
        char e = text_[i + 1];
        switch (e) {
          case '"': value.push_back('"'); break;
          case '\\': value.push_back('\\'); break;
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          default:
            throw SyntaxError(line_, column_ + (i - pos_),
                              std::string("\\") + e, "unknown escape");
        }
        i += 2;
        continue;
      }
      value.push_back(c);
      ++i;
    }
    if (i >= text_.size())
      throw SyntaxError(start_line, start_col, "\"", "unterminated string");
    Token t = make(Tok::kString, i + 1 - pos_);
    t.value = std::move(value);
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace specguard::lang
