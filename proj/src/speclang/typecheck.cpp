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

#include "specguard/speclang.hpp"

namespace specguard {
namespace {

using Type = std::optional<ValueType>;  // nullopt: already reported

class Checker {
 public:
  Checker(const Schema& schema, bool output_allowed)
      : schema_(schema), output_allowed_(output_allowed) {}

  Type check(const Expression& e) { return check_node(e.node()); }

  std::vector<std::string> take_errors() { return std::move(errors_); }

 private:
  void error(std::string msg) { errors_.push_back(std::move(msg)); }

  // Rejects grid values outside the aggregate functions.
  Type scalar(const Expression& e, const char* context) {
    Type t = check(e);
    if (t == ValueType::kGrid) {
      error(std::string("grid value '") + print(e) + "' used as a scalar in " + context);
      return std::nullopt;
    }
    return t;
  }

  bool expect(const Type& t, ValueType want, const Expression& e, const char* context) {
    if (!t) return false;
    if (*t != want) {
      error(std::string("type mismatch: '") + print(e) + "' is " + to_string(*t) +
            " but " + context + " needs " + to_string(want));
      return false;
    }
    return true;
  }

  Type check_node(const Node& n) {
    return std::visit([&](const auto& x) { return visit(x); }, n.v);
  }

  Type visit(const NumberLit&) { return ValueType::kNumber; }
  Type visit(const BoolLit&) { return ValueType::kBoolean; }
  Type visit(const StringLit&) { return ValueType::kString; }

  Type visit(const InputPath& p) {
    const FieldDecl* decl = schema_.find(p.field);
    if (decl == nullptr) {
      error("unresolved path: input." + p.field + " is not declared in the schema");
      return std::nullopt;
    }
    if (p.cell) {
      if (decl->type.kind != FieldKind::kGrid) {
        error("input." + p.field + " is not a grid and cannot be indexed");
        return std::nullopt;
      }
      if (p.cell->first >= decl->type.rows || p.cell->second >= decl->type.cols) {
        error("index [" + std::to_string(p.cell->first) + "][" +
              std::to_string(p.cell->second) + "] out of range for input." + p.field +
              " (" + std::to_string(decl->type.rows) + "x" +
              std::to_string(decl->type.cols) + ")");
        return std::nullopt;
      }
      return ValueType::kNumber;
    }
    switch (decl->type.kind) {
      case FieldKind::kNumber:
      case FieldKind::kInteger: return ValueType::kNumber;
      case FieldKind::kBoolean: return ValueType::kBoolean;
      case FieldKind::kCategory: return ValueType::kString;
      case FieldKind::kGrid: return ValueType::kGrid;
    }
    return std::nullopt;
  }

  Type visit(const OutputPath& p) {
    const char* name = p.field == OutputField::kLabel ? "output.label" : "output.confidence";
    if (!output_allowed_) {
      error(std::string("output reference in precondition: ") + name +
            " is not available to input-only conditions");
      return std::nullopt;
    }
    return p.field == OutputField::kLabel ? ValueType::kString : ValueType::kNumber;
  }

  Type visit(const Unary& u) {
    if (u.op == UnaryOp::kNeg) {
      Type t = scalar(u.operand, "'-'");
      return expect(t, ValueType::kNumber, u.operand, "'-'") ? t : std::nullopt;
    }
    Type t = scalar(u.operand, "'!'");
    return expect(t, ValueType::kBoolean, u.operand, "'!'") ? t : std::nullopt;
  }

  // A string literal compared against a category field or the label must be
  // one of the allowed values; anything else is almost certainly a typo.
  void check_literal_domain(const Expression& path, const Expression& lit) {
    const auto* s = std::get_if<StringLit>(&lit.node().v);
    if (s == nullptr) return;
    if (const auto* in = std::get_if<InputPath>(&path.node().v)) {
      const FieldDecl* decl = schema_.find(in->field);
      if (decl && decl->type.kind == FieldKind::kCategory &&
          std::find(decl->type.categories.begin(), decl->type.categories.end(),
                    s->value) == decl->type.categories.end())
        error("\"" + s->value + "\" is not a category of input." + in->field);
    } else if (const auto* out = std::get_if<OutputPath>(&path.node().v)) {
      if (out->field == OutputField::kLabel && !schema_.has_label(s->value))
        error("\"" + s->value + "\" is not in the label alphabet");
    }
  }

  Type visit(const Binary& b) {
    const char* op = to_string(b.op);
    std::string ctx = std::string("'") + op + "'";
    Type lt = scalar(b.lhs, ctx.c_str());
    Type rt = scalar(b.rhs, ctx.c_str());
    switch (b.op) {
      case BinaryOp::kAdd:
      case BinaryOp::kSub:
      case BinaryOp::kMul:
      case BinaryOp::kDiv: {
        bool ok = expect(lt, ValueType::kNumber, b.lhs, ctx.c_str());
        ok = expect(rt, ValueType::kNumber, b.rhs, ctx.c_str()) && ok;
        return ok ? Type(ValueType::kNumber) : std::nullopt;
      }
      case BinaryOp::kLt:
      case BinaryOp::kLe:
      case BinaryOp::kGt:
      case BinaryOp::kGe: {
        bool ok = expect(lt, ValueType::kNumber, b.lhs, ctx.c_str());
        ok = expect(rt, ValueType::kNumber, b.rhs, ctx.c_str()) && ok;
        return ok ? Type(ValueType::kBoolean) : std::nullopt;
      }
      case BinaryOp::kEq:
      case BinaryOp::kNe:
        if (!lt || !rt) return std::nullopt;
        if (*lt != *rt) {
          error("type mismatch: cannot compare " + std::string(to_string(*lt)) + " '" +
                print(b.lhs) + "' with " + to_string(*rt) + " '" + print(b.rhs) + "'");
          return std::nullopt;
        }
        check_literal_domain(b.lhs, b.rhs);
        check_literal_domain(b.rhs, b.lhs);
        return ValueType::kBoolean;
      case BinaryOp::kAnd:
      case BinaryOp::kOr: {
        bool ok = expect(lt, ValueType::kBoolean, b.lhs, ctx.c_str());
        ok = expect(rt, ValueType::kBoolean, b.rhs, ctx.c_str()) && ok;
        return ok ? Type(ValueType::kBoolean) : std::nullopt;
      }
    }
    return std::nullopt;
  }

  Type visit(const Call& c) {
    const std::string& f = c.function;
    std::string ctx = f + "()";
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (c.args.size() < lo || c.args.size() > hi) {
        error(f + "() takes " +
              (lo == hi ? std::to_string(lo) : std::to_string(lo) + " or more") +
              " argument(s), got " + std::to_string(c.args.size()));
        return false;
      }
      return true;
    };
    if (f == "abs" || f == "min" || f == "max") {
      bool ok = f == "abs" ? arity(1, 1) : arity(1, static_cast<std::size_t>(-1));
      for (const auto& a : c.args) ok = expect(scalar(a, ctx.c_str()), ValueType::kNumber, a, ctx.c_str()) && ok;
      return ok ? Type(ValueType::kNumber) : std::nullopt;
    }
    if (f == "len") {
      bool ok = arity(1, 1);
      for (const auto& a : c.args) ok = expect(scalar(a, ctx.c_str()), ValueType::kString, a, ctx.c_str()) && ok;
      return ok ? Type(ValueType::kNumber) : std::nullopt;
    }
    if (f == "rows" || f == "cols" || f == "sum") {
      if (!arity(1, 1)) return std::nullopt;
      const auto* p = std::get_if<InputPath>(&c.args[0].node().v);
      if (p == nullptr || p->cell) {
        error(f + "() needs a grid field reference such as input.<grid>");
        return std::nullopt;
      }
      Type t = check(c.args[0]);
      return expect(t, ValueType::kGrid, c.args[0], ctx.c_str()) ? Type(ValueType::kNumber)
                                                                  : std::nullopt;
    }
    error("unknown function '" + f + "'");
    for (const auto& a : c.args) check(a);
    return std::nullopt;
  }

  const Schema& schema_;
  bool output_allowed_;
  std::vector<std::string> errors_;
};

}  // namespace

TypeCheckResult typecheck(const Expression& expr, const Schema& schema,
                          bool output_allowed) {
  Checker checker(schema, output_allowed);
  Type t = checker.check(expr);
  TypeCheckResult result{t, checker.take_errors()};
  if (!result.errors.empty()) result.type.reset();
  return result;
}

}  // namespace specguard
