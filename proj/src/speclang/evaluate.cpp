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

#include <algorithm>
#include <cmath>

#include "specguard/error.hpp"
#include "specguard/speclang.hpp"

namespace specguard {
namespace {

const char* type_name(const Value& v) {
  switch (v.index()) {
    case 0: return "number";
    case 1: return "boolean";
    default: return "string";
  }
}

class Evaluator {
 public:
  explicit Evaluator(const EvalContext& ctx) : ctx_(ctx) {}

  Value eval(const Expression& e) {
    return std::visit([&](const auto& x) { return visit(x); }, e.node().v);
  }

 private:
  double number(const Expression& e) {
    Value v = eval(e);
    if (const auto* d = std::get_if<double>(&v)) return *d;
    throw EvalError(EvalErrorKind::kTypeMismatch,
                    "'" + print(e) + "' evaluated to " + type_name(v) + ", expected number");
  }

  bool boolean(const Expression& e) {
    Value v = eval(e);
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    throw EvalError(EvalErrorKind::kTypeMismatch,
                    "'" + print(e) + "' evaluated to " + type_name(v) + ", expected boolean");
  }

  const FieldValue& field(const std::string& name) {
    const FieldValue* v = ctx_.input.find(name);
    if (v == nullptr)
      throw EvalError(EvalErrorKind::kMissingField, "missing field: input." + name);
    return *v;
  }

  const Grid& grid(const Expression& arg) {
    const auto* p = std::get_if<InputPath>(&arg.node().v);
    if (p == nullptr || p->cell)
      throw EvalError(EvalErrorKind::kTypeMismatch, "'" + print(arg) + "' is not a grid field");
    const auto* g = std::get_if<Grid>(&field(p->field));
    if (g == nullptr)
      throw EvalError(EvalErrorKind::kTypeMismatch, "input." + p->field + " is not a grid");
    return *g;
  }

  Value visit(const NumberLit& x) { return x.value; }
  Value visit(const BoolLit& x) { return x.value; }
  Value visit(const StringLit& x) { return x.value; }

  Value visit(const InputPath& p) {
    const FieldValue& v = field(p.field);
    if (p.cell) {
      const auto* g = std::get_if<Grid>(&v);
      if (g == nullptr)
        throw EvalError(EvalErrorKind::kTypeMismatch, "input." + p.field + " is not a grid");
      if (p.cell->first >= g->rows || p.cell->second >= g->cols)
        throw EvalError(EvalErrorKind::kIndexOutOfRange,
                        "index out of range on input." + p.field);
      return g->at(p.cell->first, p.cell->second);
    }
    return std::visit(
        [&](const auto& x) -> Value {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Grid>) {
            throw EvalError(EvalErrorKind::kTypeMismatch,
                            "grid input." + p.field + " used as a scalar");
          } else {
            return x;
          }
        },
        v);
  }

  Value visit(const OutputPath& p) {
    if (ctx_.output == nullptr)
      throw EvalError(EvalErrorKind::kUnboundOutput,
                      "output referenced but no prediction is bound");
    if (p.field == OutputField::kLabel) return ctx_.output->label;
    if (!ctx_.output->confidence)
      throw EvalError(EvalErrorKind::kMissingField,
                      "missing field: output.confidence (prediction has no confidence)");
    return *ctx_.output->confidence;
  }

  Value visit(const Unary& u) {
    if (u.op == UnaryOp::kNeg) return -number(u.operand);
    return !boolean(u.operand);
  }

  Value visit(const Binary& b) {
    switch (b.op) {
      case BinaryOp::kAnd: return boolean(b.lhs) && boolean(b.rhs);
      case BinaryOp::kOr: return boolean(b.lhs) || boolean(b.rhs);
      case BinaryOp::kEq: return equal(b);
      case BinaryOp::kNe: return !equal(b);
      default: break;
    }
    const double l = number(b.lhs);
    const double r = number(b.rhs);
    switch (b.op) {
      case BinaryOp::kAdd: return l + r;
      case BinaryOp::kSub: return l - r;
      case BinaryOp::kMul: return l * r;
      case BinaryOp::kDiv:
        if (r == 0.0)
          throw EvalError(EvalErrorKind::kDivisionByZero,
                          "division by zero in '" + print(b.rhs) + "'");
        return l / r;
      case BinaryOp::kLt: return l < r;
      case BinaryOp::kLe: return l <= r;
      case BinaryOp::kGt: return l > r;
      case BinaryOp::kGe: return l >= r;
      default: break;
    }
    return false;  // unreachable
  }

  bool equal(const Binary& b) {
    Value l = eval(b.lhs);
    Value r = eval(b.rhs);
    if (l.index() != r.index())
      throw EvalError(EvalErrorKind::kTypeMismatch,
                      std::string("cannot compare ") + type_name(l) + " with " + type_name(r));
    if (const auto* x = std::get_if<double>(&l))
      return std::fabs(*x - std::get<double>(r)) <= kEqualityTolerance;
    return l == r;
  }

  Value visit(const Call& c) {
    const std::string& f = c.function;
    if (f == "abs") return std::fabs(number(c.args.at(0)));
    if (f == "min" || f == "max") {
      double acc = number(c.args.at(0));
      for (std::size_t i = 1; i < c.args.size(); ++i) {
        double x = number(c.args[i]);
        acc = f == "min" ? std::min(acc, x) : std::max(acc, x);
      }
      return acc;
    }
    if (f == "len") {
      Value v = eval(c.args.at(0));
      const auto* s = std::get_if<std::string>(&v);
      if (s == nullptr)
        throw EvalError(EvalErrorKind::kTypeMismatch, "len() needs a string");
      // Code points, not bytes.
      return static_cast<double>(std::count_if(s->begin(), s->end(), [](char ch) {
        return (static_cast<unsigned char>(ch) & 0xC0) != 0x80;
      }));
    }
    if (f == "rows") return static_cast<double>(grid(c.args.at(0)).rows);
    if (f == "cols") return static_cast<double>(grid(c.args.at(0)).cols);
    if (f == "sum") {
      const Grid& g = grid(c.args.at(0));
      double total = 0;
      for (double x : g.cells) total += x;
      return total;
    }
    throw EvalError(EvalErrorKind::kTypeMismatch, "unknown function '" + f + "'");
  }

  const EvalContext& ctx_;
};

void collect_fields(const Node& n, std::set<std::string>& out, bool& output) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, InputPath>) {
          out.insert(x.field);
        } else if constexpr (std::is_same_v<T, OutputPath>) {
          output = true;
        } else if constexpr (std::is_same_v<T, Unary>) {
          collect_fields(x.operand.node(), out, output);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_fields(x.lhs.node(), out, output);
          collect_fields(x.rhs.node(), out, output);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (const auto& a : x.args) collect_fields(a.node(), out, output);
        }
      },
      n.v);
}

}  // namespace

Value evaluate(const Expression& expr, const EvalContext& ctx) {
  return Evaluator(ctx).eval(expr);
}

bool holds(const Expression& expr, const EvalContext& ctx) {
  Value v = evaluate(expr, ctx);
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw EvalError(EvalErrorKind::kTypeMismatch,
                  "condition '" + print(expr) + "' is not boolean");
}

std::set<std::string> referenced_fields(const Expression& expr) {
  std::set<std::string> out;
  bool output = false;
  collect_fields(expr.node(), out, output);
  return out;
}

bool references_output(const Expression& expr) {
  std::set<std::string> out;
  bool output = false;
  collect_fields(expr.node(), out, output);
  return output;
}

}  // namespace specguard
