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

#include <charconv>

#include "specguard/speclang.hpp"

namespace specguard {

const char* to_string(ValueType type) noexcept {
  switch (type) {
    case ValueType::kNumber: return "number";
    case ValueType::kBoolean: return "boolean";
    case ValueType::kString: return "string";
    case ValueType::kGrid: return "grid";
  }
  return "unknown";
}

const char* to_string(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

namespace {

// Binding strength, loosest first; mirrors the grammar levels.
enum Level : int { kOr = 1, kAnd, kCmp, kSum, kProd, kUnary, kAtom };

int level_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return kOr;
    case BinaryOp::kAnd: return kAnd;
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return kSum;
    case BinaryOp::kMul:
    case BinaryOp::kDiv: return kProd;
    default: return kCmp;
  }
}

int level_of(const Node& n) {
  if (std::holds_alternative<Unary>(n.v)) return kUnary;
  if (const auto* b = std::get_if<Binary>(&n.v)) return level_of(b->op);
  return kAtom;
}

void print_number(std::string& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void print_string(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
}

void print_node(std::string& out, const Node& n);

// Prints `e`, parenthesized when it binds looser than `min_level` requires.
void print_at(std::string& out, const Expression& e, int min_level) {
  const bool parens = level_of(e.node()) < min_level;
  if (parens) out.push_back('(');
  print_node(out, e.node());
  if (parens) out.push_back(')');
}

void print_node(std::string& out, const Node& n) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NumberLit>) {
          print_number(out, x.value);
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          out += x.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, StringLit>) {
          print_string(out, x.value);
        } else if constexpr (std::is_same_v<T, InputPath>) {
          out += "input.";
          out += x.field;
          if (x.cell) {
            out += "[" + std::to_string(x.cell->first) + "][" +
                   std::to_string(x.cell->second) + "]";
          }
        } else if constexpr (std::is_same_v<T, OutputPath>) {
          out += x.field == OutputField::kLabel ? "output.label" : "output.confidence";
        } else if constexpr (std::is_same_v<T, Unary>) {
          out.push_back(x.op == UnaryOp::kNeg ? '-' : '!');
          print_at(out, x.operand, kUnary);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const int lvl = level_of(x.op);
          // Left-associative levels keep a same-level left child bare;
          // comparisons do not associate at all.
          const int left_min = lvl == kCmp ? kSum : lvl;
          const int right_min = lvl == kCmp ? kSum : lvl + 1;
          print_at(out, x.lhs, left_min);
          out.push_back(' ');
          out += to_string(x.op);
          out.push_back(' ');
          print_at(out, x.rhs, right_min);
        } else {
          out += x.function;
          out.push_back('(');
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (i) out += ", ";
            print_node(out, x.args[i].node());
          }
          out.push_back(')');
        }
      },
      n.v);
}

}  // namespace

std::string print(const Expression& expr) {
  std::string out;
  print_node(out, expr.node());
  return out;
}

}  // namespace specguard
