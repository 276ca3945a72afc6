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


#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "specguard/error.hpp"
#include "specguard/speclang.hpp"
#include "speclang_cases.hpp"

namespace specguard {
namespace {

using namespace sgtest::lang;

Value eval_text(const std::string& text, const Prediction* out = nullptr) {
  FeatureRecord rec = test_record();
  return evaluate(parse(text), EvalContext{rec, out});
}

// ---------------------------------------------------------------- parsing

TEST(SpeclangParse, GoldenCanonicalForms) {
  std::size_t checked = 0;
  for (const auto& g : kGolden) {
    SCOPED_TRACE(g.text);
    if (*g.canonical == '\0') {
      EXPECT_THROW(parse(g.text), SyntaxError);
    } else {
      Expression e = parse(g.text);
      EXPECT_EQ(print(e), g.canonical);
      EXPECT_EQ(parse(print(e)), e);
    }
    ++checked;
  }
  EXPECT_GE(checked, 50u);
}

TEST(SpeclangParse, TreeShapeOfThresholdComparison) {
  Expression e = parse("input.height_ft < 8");
  const auto& bin = std::get<Binary>(e.node().v);
  EXPECT_EQ(bin.op, BinaryOp::kLt);
  const auto& lhs = std::get<InputPath>(bin.lhs.node().v);
  EXPECT_EQ(lhs.field, "height_ft");
  EXPECT_FALSE(lhs.cell.has_value());
  EXPECT_EQ(std::get<NumberLit>(bin.rhs.node().v).value, 8.0);
  EXPECT_EQ(e, make_binary(BinaryOp::kLt, make_input("height_ft"), make_number(8)));
}

TEST(SpeclangParse, MultiplicationBindsTighterThanAddition) {
  Expression e = parse("1 + 2 * 3");
  EXPECT_EQ(e, make_binary(BinaryOp::kAdd, make_number(1),
                           make_binary(BinaryOp::kMul, make_number(2), make_number(3))));
  FeatureRecord empty;
  EXPECT_EQ(std::get<double>(evaluate(e, EvalContext{empty})), 7.0);
}

TEST(SpeclangParse, UnaryBindsTighterThanProducts) {
  EXPECT_EQ(parse("-2 * 3"), make_binary(BinaryOp::kMul, make_unary(UnaryOp::kNeg, make_number(2)),
                                          make_number(3)));
  EXPECT_EQ(parse("!input.b == input.c"),
            make_binary(BinaryOp::kEq, make_unary(UnaryOp::kNot, make_input("b")), make_input("c")));
}

TEST(SpeclangParse, ComparisonsAreNonAssociative) {
  EXPECT_THROW(parse("1 < 2 < 3"), SyntaxError);
  EXPECT_THROW(parse("1 == 1 == true"), SyntaxError);
  EXPECT_NO_THROW(parse("(1 == 1) == true"));
}

struct SyntaxCase {
  const char* text;
  std::size_t line;
  std::size_t column;
  const char* token;
};

TEST(SpeclangParse, SyntaxErrorsCarryPositionAndToken) {
  const SyntaxCase cases[] = {
      {"&& input.x", 1, 1, "&&"},
      {"input.x <", 1, 10, ""},
      {"input.x = 1", 1, 9, "="},
      {"input.x & 1", 1, 9, "&"},
      {"(1 + 2", 1, 7, ""},
      {"1 +\n  * 2", 2, 3, "*"},
      {"foo", 1, 1, "foo"},
      {"input.", 1, 7, ""},
      {"output.score", 1, 8, "score"},
      {"input.g[1]", 1, 11, ""},
      {"\"open", 1, 1, "\""},
      {"1 2", 1, 3, "2"},
      {"input.x # 2", 1, 9, "#"},
      {"min()", 1, 5, ")"},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(c.text);
    try {
      parse(c.text);
      ADD_FAILURE() << "expected a syntax error";
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.line(), c.line);
      EXPECT_EQ(e.column(), c.column);
      EXPECT_EQ(e.token(), c.token);
      EXPECT_EQ(e.code(), ErrorCode::kSyntax);
    }
  }
}

// ---------------------------------------------------------------- typecheck

TEST(SpeclangTypecheck, ResultTypes) {
  Schema s = test_schema();
  auto type_of = [&](const char* text, bool out = true) {
    TypeCheckResult r = typecheck(parse(text), s, out);
    EXPECT_TRUE(r.ok()) << text << ": " << (r.errors.empty() ? "" : r.errors.front());
    return r.type;
  };
  EXPECT_EQ(type_of("input.x + 1"), ValueType::kNumber);
  EXPECT_EQ(type_of("input.n * 2"), ValueType::kNumber);
  EXPECT_EQ(type_of("input.x < 1"), ValueType::kBoolean);
  EXPECT_EQ(type_of("input.s"), ValueType::kString);
  EXPECT_EQ(type_of("input.g"), ValueType::kGrid);
  EXPECT_EQ(type_of("input.g[1][2]"), ValueType::kNumber);
  EXPECT_EQ(type_of("sum(input.g)"), ValueType::kNumber);
  EXPECT_EQ(type_of("output.label == \"yes\""), ValueType::kBoolean);
  EXPECT_EQ(type_of("output.confidence"), ValueType::kNumber);
  EXPECT_EQ(type_of("input.b == input.c"), ValueType::kBoolean);
  EXPECT_EQ(type_of("len(input.s)"), ValueType::kNumber);
}

TEST(SpeclangTypecheck, Rejections) {
  Schema s = test_schema();
  for (const char* text : kTypecheckRejections) {
    SCOPED_TRACE(text);
    EXPECT_FALSE(typecheck(parse(text), s, true).ok());
  }
}

TEST(SpeclangTypecheck, OutputReferencesRejectedInInputOnlyConditions) {
  Schema s = test_schema();
  Expression e = parse("output.label == \"yes\" || input.x > 0");
  EXPECT_TRUE(typecheck(e, s, true).ok());
  TypeCheckResult r = typecheck(e, s, false);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.errors.front().find("output"), std::string::npos);
  EXPECT_FALSE(typecheck(parse("output.confidence > 0.5"), s, false).ok());
}

TEST(SpeclangTypecheck, ReferencedFieldsAndOutputs) {
  Expression e = parse("input.x + input.g[0][0] > input.y || output.label == \"no\"");
  EXPECT_EQ(referenced_fields(e), (std::set<std::string>{"g", "x", "y"}));
  EXPECT_TRUE(references_output(e));
  EXPECT_FALSE(references_output(parse("input.x > 1")));
}

// ---------------------------------------------------------------- evaluation

TEST(SpeclangEval, Values) {
  EXPECT_EQ(std::get<double>(eval_text("1 + 2 * 3")), 7.0);
  EXPECT_EQ(std::get<double>(eval_text("(1 + 2) * 3")), 9.0);
  EXPECT_EQ(std::get<double>(eval_text("input.x * input.y")), -7.0);
  EXPECT_EQ(std::get<double>(eval_text("abs(input.y)")), 3.5);
  EXPECT_EQ(std::get<double>(eval_text("min(input.x, input.y, 0)")), -3.5);
  EXPECT_EQ(std::get<double>(eval_text("max(input.x, input.y, 0)")), 2.0);
  EXPECT_EQ(std::get<double>(eval_text("len(input.s)")), 3.0);
  EXPECT_EQ(std::get<double>(eval_text("sum(input.g)")), 15.0);
  EXPECT_EQ(std::get<double>(eval_text("rows(input.g)")), 2.0);
  EXPECT_EQ(std::get<double>(eval_text("cols(input.g)")), 3.0);
  EXPECT_EQ(std::get<double>(eval_text("input.g[1][2]")), 5.0);
  EXPECT_TRUE(std::get<bool>(eval_text("input.height_ft < 8")));
  EXPECT_TRUE(std::get<bool>(eval_text("input.s == \"red\"")));
  EXPECT_TRUE(std::get<bool>(eval_text("0.1 + 0.2 == 0.3")));
  EXPECT_FALSE(std::get<bool>(eval_text("0.1 + 0.2 != 0.3")));
  EXPECT_TRUE(std::get<bool>(eval_text("!input.c && input.b")));
  EXPECT_EQ(std::get<std::string>(eval_text("input.s")), "red");
}

TEST(SpeclangEval, OutputPaths) {
  Prediction p{"yes", 0.75};
  EXPECT_TRUE(std::get<bool>(eval_text("output.label == \"yes\"", &p)));
  EXPECT_EQ(std::get<double>(eval_text("output.confidence", &p)), 0.75);
  try {
    eval_text("output.label == \"yes\"");
    ADD_FAILURE() << "expected an unbound-output error";
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalErrorKind::kUnboundOutput);
  }
  Prediction no_conf{"yes", std::nullopt};
  EXPECT_THROW(eval_text("output.confidence > 0", &no_conf), EvalError);
}

TEST(SpeclangEval, Errors) {
  auto kind_of = [](const char* text) -> std::optional<EvalErrorKind> {
    try {
      eval_text(text);
    } catch (const EvalError& e) {
      return e.kind();
    }
    return std::nullopt;
  };
  EXPECT_EQ(kind_of("1 / 0"), EvalErrorKind::kDivisionByZero);
  EXPECT_EQ(kind_of("input.missing > 0"), EvalErrorKind::kMissingField);
  EXPECT_EQ(kind_of("input.g[5][0]"), EvalErrorKind::kIndexOutOfRange);
  EXPECT_EQ(kind_of("input.b + 1"), EvalErrorKind::kTypeMismatch);
  EXPECT_EQ(kind_of("1 + 1"), std::nullopt);
}

TEST(SpeclangEval, LogicShortCircuits) {
  EXPECT_FALSE(std::get<bool>(eval_text("false && 1 / 0 > 0")));
  EXPECT_TRUE(std::get<bool>(eval_text("true || input.missing > 0")));
}

TEST(SpeclangEval, HoldsRequiresBoolean) {
  FeatureRecord rec = test_record();
  EXPECT_TRUE(holds(parse("input.x > 1"), EvalContext{rec}));
  EXPECT_THROW(holds(parse("input.x + 1"), EvalContext{rec}), EvalError);
}

TEST(SpeclangCondition, KeepsSourceText) {
  Condition c("input.x  >  1");
  EXPECT_EQ(c.text, "input.x  >  1");
  EXPECT_EQ(c.expr, parse("input.x > 1"));
  Condition d(make_bool(true));
  EXPECT_EQ(d.text, "true");
}

// ---------------------------------------------------------------- generator oracle

TEST(SpeclangProperty, RoundTripAndReferenceEvaluationOnGeneratedExpressions) {
  Generator gen(20260101);
  Schema schema = test_schema();
  FeatureRecord rec = test_record();
  std::size_t div_zero = 0;
  for (int i = 0; i < 1000; ++i) {
    GenPtr g = i % 2 ? gen.boolean(4) : gen.number(4);
    const std::string text = render(g);
    SCOPED_TRACE(text);
    Expression e = parse(text);
    const std::string canonical = print(e);
    Expression again = parse(canonical);
    ASSERT_EQ(again, e) << canonical;
    ASSERT_EQ(print(again), canonical);

    TypeCheckResult tc = typecheck(e, schema, false);
    ASSERT_TRUE(tc.ok()) << tc.errors.front();
    ASSERT_EQ(tc.type, i % 2 ? ValueType::kBoolean : ValueType::kNumber);

    std::optional<RefValue> expected;
    try {
      expected = ref_eval(g);
    } catch (const RefDivZero&) {
    }
    if (!expected) {
      ++div_zero;
      try {
        evaluate(e, EvalContext{rec});
        FAIL() << "expected division by zero";
      } catch (const EvalError& err) {
        EXPECT_EQ(err.kind(), EvalErrorKind::kDivisionByZero);
      }
      continue;
    }
    Value got = evaluate(e, EvalContext{rec});
    if (std::holds_alternative<bool>(*expected)) {
      ASSERT_EQ(std::get<bool>(got), std::get<bool>(*expected));
    } else {
      double want = std::get<double>(*expected);
      double have = std::get<double>(got);
      if (std::isnan(want)) ASSERT_TRUE(std::isnan(have));
      else ASSERT_EQ(have, want);
    }
  }
  EXPECT_LT(div_zero, 500u);
}

}  // namespace
}  // namespace specguard
