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

#include <limits>

#include "speclang/lexer.hpp"
#include "specguard/error.hpp"
#include "specguard/speclang.hpp"

namespace specguard {

Expression::Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

namespace {

bool nodes_equal(const Node& a, const Node& b);

bool args_equal(const std::vector<Expression>& a, const std::vector<Expression>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, NumberLit> || std::is_same_v<T, BoolLit> ||
                      std::is_same_v<T, StringLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, InputPath>) {
          return x.field == y.field && x.cell == y.cell;
        } else if constexpr (std::is_same_v<T, OutputPath>) {
          return x.field == y.field;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return x.op == y.op && x.operand == y.operand;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
        } else {
          return x.function == y.function && args_equal(x.args, y.args);
        }
      },
      a.v);
}

Expression wrap(Node n) { return Expression(std::make_shared<const Node>(std::move(n))); }

}  // namespace

bool operator==(const Expression& a, const Expression& b) {
  return a.root_ == b.root_ || nodes_equal(*a.root_, *b.root_);
}

Expression make_number(double value) { return wrap(Node{NumberLit{value}}); }
Expression make_bool(bool value) { return wrap(Node{BoolLit{value}}); }
Expression make_string(std::string value) { return wrap(Node{StringLit{std::move(value)}}); }
Expression make_input(std::string field) {
  return wrap(Node{InputPath{std::move(field), std::nullopt}});
}
Expression make_cell(std::string field, std::size_t row, std::size_t col) {
  return wrap(Node{InputPath{std::move(field), std::make_pair(row, col)}});
}
Expression make_output(OutputField field) { return wrap(Node{OutputPath{field}}); }
Expression make_unary(UnaryOp op, Expression operand) {
  return wrap(Node{Unary{op, std::move(operand)}});
}
Expression make_binary(BinaryOp op, Expression lhs, Expression rhs) {
  return wrap(Node{Binary{op, std::move(lhs), std::move(rhs)}});
}
Expression make_call(std::string function, std::vector<Expression> args) {
  return wrap(Node{Call{std::move(function), std::move(args)}});
}

namespace {

using lang::Tok;
using lang::Token;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expression parse_all() {
    Expression e = parse_or();
    if (peek().kind != Tok::kEnd) fail("unexpected token");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& why) const {
    const Token& t = peek();
    throw SyntaxError(t.line, t.column, t.text, why);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }

  Expression parse_or() {
    Expression lhs = parse_and();
    while (accept(Tok::kOrOr)) lhs = make_binary(BinaryOp::kOr, lhs, parse_and());
    return lhs;
  }

  Expression parse_and() {
    Expression lhs = parse_cmp();
    while (accept(Tok::kAndAnd)) lhs = make_binary(BinaryOp::kAnd, lhs, parse_cmp());
    return lhs;
  }

  static bool comparison(Tok k, BinaryOp* op) {
    switch (k) {
      case Tok::kLt: *op = BinaryOp::kLt; return true;
      case Tok::kLe: *op = BinaryOp::kLe; return true;
      case Tok::kGt: *op = BinaryOp::kGt; return true;
      case Tok::kGe: *op = BinaryOp::kGe; return true;
      case Tok::kEqEq: *op = BinaryOp::kEq; return true;
      case Tok::kNe: *op = BinaryOp::kNe; return true;
      default: return false;
    }
  }

  Expression parse_cmp() {
    Expression lhs = parse_sum();
    BinaryOp op;
    if (comparison(peek().kind, &op)) {
      ++pos_;
      Expression rhs = parse_sum();
      if (comparison(peek().kind, &op))
        fail("comparisons do not chain; add parentheses");
      return make_binary(op, lhs, rhs);
    }
    return lhs;
  }

  Expression parse_sum() {
    Expression lhs = parse_prod();
    while (true) {
      if (accept(Tok::kPlus)) {
        lhs = make_binary(BinaryOp::kAdd, lhs, parse_prod());
      } else if (accept(Tok::kMinus)) {
        lhs = make_binary(BinaryOp::kSub, lhs, parse_prod());
      } else {
        return lhs;
      }
    }
  }

  Expression parse_prod() {
    Expression lhs = parse_unary();
    while (true) {
      if (accept(Tok::kStar)) {
        lhs = make_binary(BinaryOp::kMul, lhs, parse_unary());
      } else if (accept(Tok::kSlash)) {
        lhs = make_binary(BinaryOp::kDiv, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expression parse_unary() {
    if (accept(Tok::kMinus)) return make_unary(UnaryOp::kNeg, parse_unary());
    if (accept(Tok::kBang)) return make_unary(UnaryOp::kNot, parse_unary());
    return parse_atom();
  }

  std::size_t parse_index() {
    const Token& t = peek();
    if (t.kind != Tok::kNumber || t.text.find_first_not_of("0123456789") != std::string::npos)
      fail("expected a non-negative integer index");
    ++pos_;
    if (t.number > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2))
      throw SyntaxError(t.line, t.column, t.text, "index too large");
    return static_cast<std::size_t>(t.number);
  }

  Expression parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kNumber:
        ++pos_;
        return make_number(t.number);
      case Tok::kString:
        ++pos_;
        return make_string(t.value);
      case Tok::kLParen: {
        ++pos_;
        Expression inner = parse_or();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kIdent:
        break;
      default:
        fail("expected an operand");
    }
    const Token& ident = take();
    if (ident.text == "true") return make_bool(true);
    if (ident.text == "false") return make_bool(false);
    if (ident.text == "input") {
      expect(Tok::kDot, "'.' after 'input'");
      if (peek().kind != Tok::kIdent) fail("expected a field name");
      std::string field = take().text;
      if (accept(Tok::kLBracket)) {
        std::size_t row = parse_index();
        expect(Tok::kRBracket, "']'");
        expect(Tok::kLBracket, "'[' (grid cells take a row and a column)");
        std::size_t col = parse_index();
        expect(Tok::kRBracket, "']'");
        return make_cell(std::move(field), row, col);
      }
      return make_input(std::move(field));
    }
    if (ident.text == "output") {
      expect(Tok::kDot, "'.' after 'output'");
      const Token& f = peek();
      if (f.kind == Tok::kIdent && f.text == "label") {
        ++pos_;
        return make_output(OutputField::kLabel);
      }
      if (f.kind == Tok::kIdent && f.text == "confidence") {
        ++pos_;
        return make_output(OutputField::kConfidence);
      }
      fail("expected 'label' or 'confidence'");
    }
    if (peek().kind != Tok::kLParen) {
      // Point at the identifier itself, not at what follows it.
      throw SyntaxError(ident.line, ident.column, ident.text,
                        "bare identifier; expected input.<field>, output.<field> "
                        "or a function call");
    }
    ++pos_;
    std::vector<Expression> args;
    args.push_back(parse_or());
    while (accept(Tok::kComma)) args.push_back(parse_or());
    expect(Tok::kRParen, "')' or ','");
    return make_call(ident.text, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text) {
  return Parser(lang::tokenize(text)).parse_all();
}

Condition::Condition(std::string_view source)
    : expr(parse(source)), text(source) {}

Condition::Condition(Expression e) : expr(std::move(e)), text(print(expr)) {}

}  // namespace specguard
