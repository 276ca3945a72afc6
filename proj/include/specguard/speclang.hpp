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

// The condition language: a small typed boolean/arithmetic expression
// language over `input.<field>` and `output.{label,confidence}`.
//
//   expr := or ;  or := and ("||" and)* ;  and := cmp ("&&" cmp)* ;
//   cmp  := sum (("<"|"<="|">"|">="|"=="|"!=") sum)? ;
//   sum  := prod (("+"|"-") prod)* ;  prod := unary (("*"|"/") unary)* ;
//   unary := ("-" | "!") unary | atom ;
//   atom := NUMBER | STRING | "true" | "false" | path
//         | IDENT "(" expr ("," expr)* ")" | "(" expr ")" ;
//   path := "input" "." IDENT ("[" INT "]" "[" INT "]")?
//         | "output" "." ("label" | "confidence")
//
// Built-in functions: abs, min, max (numbers), len (strings), rows, cols and
// sum (grid fields).

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "specguard/record.hpp"

namespace specguard {

enum class ValueType { kNumber, kBoolean, kString, kGrid };

const char* to_string(ValueType type) noexcept;

using Value = std::variant<double, bool, std::string>;

enum class UnaryOp { kNeg, kNot };

enum class BinaryOp {
  kAdd, kSub, kMul, kDiv,
  kLt, kLe, kGt, kGe, kEq, kNe,
  kAnd, kOr,
};

const char* to_string(BinaryOp op) noexcept;

enum class OutputField { kLabel, kConfidence };

struct Node;

/// Immutable expression tree. Copies share structure; equality is
/// structural.
class Expression {
 public:
  explicit Expression(std::shared_ptr<const Node> root);

  const Node& node() const noexcept { return *root_; }

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  std::shared_ptr<const Node> root_;
};

struct NumberLit { double value; };
struct BoolLit { bool value; };
struct StringLit { std::string value; };
struct InputPath {
  std::string field;
  std::optional<std::pair<std::size_t, std::size_t>> cell;
};
struct OutputPath { OutputField field; };
struct Unary { UnaryOp op; Expression operand; };
struct Binary { BinaryOp op; Expression lhs; Expression rhs; };
struct Call { std::string function; std::vector<Expression> args; };

struct Node {
  std::variant<NumberLit, BoolLit, StringLit, InputPath, OutputPath, Unary,
               Binary, Call>
      v;
};

// Construction helpers, mostly for programmatic specs and test generators.
Expression make_number(double value);
Expression make_bool(bool value);
Expression make_string(std::string value);
Expression make_input(std::string field);
Expression make_cell(std::string field, std::size_t row, std::size_t col);
Expression make_output(OutputField field);
Expression make_unary(UnaryOp op, Expression operand);
Expression make_binary(BinaryOp op, Expression lhs, Expression rhs);
Expression make_call(std::string function, std::vector<Expression> args);

/// Throws SyntaxError carrying the 1-based line/column of the offending token.
Expression parse(std::string_view text);

/// Canonical text form; parse(print(e)) == e for every parsed e.
std::string print(const Expression& expr);

struct TypeCheckResult {
  std::optional<ValueType> type;
  std::vector<std::string> errors;

  bool ok() const noexcept { return errors.empty(); }
};

/// Resolves paths against `schema`. With `output_allowed == false` any
/// `output.*` reference is an error (input-only conditions).
TypeCheckResult typecheck(const Expression& expr, const Schema& schema,
                          bool output_allowed);

struct EvalContext {
  const FeatureRecord& input;
  const Prediction* output = nullptr;
};

/// Pure and deterministic. Numeric `==`/`!=` use an absolute tolerance of
/// 1e-9. Throws EvalError on division by zero, missing fields, an unbound
/// output, or a value of the wrong runtime type.
Value evaluate(const Expression& expr, const EvalContext& ctx);

/// evaluate() restricted to boolean results.
bool holds(const Expression& expr, const EvalContext& ctx);

std::set<std::string> referenced_fields(const Expression& expr);
bool references_output(const Expression& expr);

/// A parsed condition together with its source text.
struct Condition {
  Expression expr;
  std::string text;

  explicit Condition(std::string_view source);
  explicit Condition(Expression e);
};

inline constexpr double kEqualityTolerance = 1e-9;

}  // namespace specguard
