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

#include <chrono>
#include <cmath>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "specguard/classifier.hpp"
#include "specguard/error.hpp"
#include "specguard/json_io.hpp"
#include "specguard/spec.hpp"
#include "specguard/transform.hpp"
#include "test_support.hpp"

namespace specguard {
namespace {

using sgtest::all_grids;
using sgtest::bit;
using sgtest::grid_mask;
using sgtest::grid_record;
using sgtest::grid_schema;
using sgtest::shift_mask;

Schema ped_schema() {
  return Schema({{"height_ft", FieldType::number()},
                 {"width_ft", FieldType::number()},
                 {"is_wireframe_match", FieldType::boolean()}},
                {"pedestrian", "not_pedestrian"});
}

FeatureRecord ped(double h, double w = 2.0, bool wire = false) {
  FeatureRecord r;
  r.fields["height_ft"] = h;
  r.fields["width_ft"] = w;
  r.fields["is_wireframe_match"] = wire;
  return r;
}

PartialSpec ped_spec() {
  PartialSpec s{ped_schema()};
  s.necessary["pedestrian"].emplace_back("input.height_ft < 8");
  return s;
}

Transformation shift(int dx, int dy, const std::string& name = "shift") {
  return Transformation{name, ShiftGrid{"img", dx, dy, 0.0}};
}

Transformation identity_map(const std::string& field) {
  return Transformation{"identity", FieldMap{{{field, parse("input." + field)}}}};
}

// ---------------------------------------------------------------- transformations

TEST(Transform, ShiftGridMovesContentRight) {
  FeatureRecord in = grid_record(0b000000001);  // 1 at (0,0)
  FeatureRecord out = apply_transformation(shift(1, 0), in);
  const Grid& g = std::get<Grid>(out.fields.at("img"));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(g.at(r, c), (r == 0 && c == 1) ? 1.0 : 0.0);
  EXPECT_EQ(std::get<Grid>(in.fields.at("img")).at(0, 0), 1.0);
}

TEST(Transform, ShiftMatchesMaskOracleOnAllGrids) {
  for (int dx = -2; dx <= 2; ++dx)
    for (int dy = -2; dy <= 2; ++dy)
      for (unsigned m = 0; m < sgtest::kGridDomain; ++m)
        ASSERT_EQ(grid_mask(apply_transformation(shift(dx, dy), grid_record(m))), shift_mask(m, dx, dy))
            << "mask " << m << " dx " << dx << " dy " << dy;
}

TEST(Transform, ShiftFillsVacatedCells) {
  Transformation t{"shift", ShiftGrid{"img", 0, 1, 7.0}};
  FeatureRecord out = apply_transformation(t, grid_record(0));
  const Grid& g = std::get<Grid>(out.fields.at("img"));
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(g.at(0, c), 7.0);
  EXPECT_EQ(g.at(1, 0), 0.0);
}

TEST(Transform, ShiftThenInverseRestoresCellsNotShiftedOff) {
  for (int dx = -1; dx <= 1; ++dx)
    for (unsigned m = 0; m < sgtest::kGridDomain; ++m) {
      FeatureRecord back =
          apply_transformation(shift(-dx, 0), apply_transformation(shift(dx, 0), grid_record(m)));
      unsigned kept = 0;
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
          int nc = static_cast<int>(c) + dx;
          if (nc >= 0 && nc <= 2 && bit(m, r, c)) kept |= 1u << (r * 3 + c);
        }
      ASSERT_EQ(grid_mask(back), kept);
    }
}

TEST(Transform, ScaleByOneIsIdentity) {
  FeatureRecord r = ped(7.25, 3.0);
  EXPECT_EQ(apply_transformation(Transformation{"s", Scale{"height_ft", 1.0}}, r), r);
}

TEST(Transform, ScaleOffsetAndSet) {
  FeatureRecord r = ped(7.0, 3.0);
  EXPECT_EQ(std::get<double>(
                apply_transformation(Transformation{"s", Scale{"height_ft", 2.0}}, r).fields["height_ft"]),
            14.0);
  EXPECT_EQ(std::get<double>(
                apply_transformation(Transformation{"a", Offset{"width_ft", -1.0}}, r).fields["width_ft"]),
            2.0);
  EXPECT_EQ(std::get<bool>(apply_transformation(Transformation{"v", SetField{"is_wireframe_match", true}}, r)
                               .fields["is_wireframe_match"]),
            true);
  FeatureRecord g = apply_transformation(Transformation{"sg", Scale{"img", 3.0}}, grid_record(0b1));
  EXPECT_EQ(std::get<Grid>(g.fields["img"]).at(0, 0), 3.0);
}

TEST(Transform, FieldMapAddsHalfFoot) {
  Transformation t{"taller", FieldMap{{{"height_ft", parse("input.height_ft + 0.5")}}}};
  FeatureRecord out = apply_transformation(t, ped(7.0));
  EXPECT_EQ(std::get<double>(out.fields["height_ft"]), 7.5);
}

TEST(Transform, FieldMapAssignsSimultaneously) {
  Transformation swap{"swap", FieldMap{{{"height_ft", parse("input.width_ft")},
                                        {"width_ft", parse("input.height_ft")}}}};
  FeatureRecord out = apply_transformation(swap, ped(7.0, 2.0));
  EXPECT_EQ(std::get<double>(out.fields["height_ft"]), 2.0);
  EXPECT_EQ(std::get<double>(out.fields["width_ft"]), 7.0);
}

TEST(Transform, FieldMapErrorsPropagate) {
  Transformation t{"bad", FieldMap{{{"height_ft", parse("input.height_ft / 0")}}}};
  EXPECT_THROW(apply_transformation(t, ped(7.0)), EvalError);
}

TEST(Transform, Validation) {
  Schema s = ped_schema();
  EXPECT_TRUE(validate(Transformation{"ok", Scale{"height_ft", 2}}, s).empty());
  EXPECT_FALSE(validate(Transformation{"no", Scale{"missing", 2}}, s).empty());
  EXPECT_FALSE(validate(Transformation{"no", ShiftGrid{"height_ft", 1, 0, 0}}, s).empty());
  EXPECT_FALSE(validate(Transformation{"no", Scale{"is_wireframe_match", 2}}, s).empty());
  EXPECT_FALSE(
      validate(Transformation{"no", FieldMap{{{"height_ft", parse("input.height_ft > 1")}}}}, s).empty());
  EXPECT_FALSE(
      validate(Transformation{"no", FieldMap{{{"height_ft", parse("output.confidence")}}}}, s).empty());
  EXPECT_FALSE(validate(Transformation{"no", SetField{"height_ft", true}}, s).empty());
  Schema g({{"img", FieldType::grid(3, 3)}, {"small", FieldType::grid(2, 2)}}, {"a"});
  EXPECT_TRUE(validate(Transformation{"copy", FieldMap{{{"img", parse("input.img")}}}}, g).empty());
  EXPECT_FALSE(validate(Transformation{"no", FieldMap{{{"img", parse("input.small")}}}}, g).empty());
  EXPECT_FALSE(validate(Transformation{"no", FieldMap{{{"img", parse("input.img[0][0]")}}}}, g).empty());
}

TEST(Transform, OutputTransform) {
  OutputTransform id;
  EXPECT_TRUE(id.is_identity());
  EXPECT_EQ(id.apply("pos"), "pos");
  OutputTransform flip{std::map<std::string, std::string>{{"pos", "neg"}, {"neg", "pos"}, {"zero", "zero"}}};
  EXPECT_EQ(flip.apply("pos"), "neg");
  EXPECT_THROW(flip.apply("other"), Error);
  Schema s({{"x", FieldType::number()}}, {"pos", "neg", "zero"});
  EXPECT_TRUE(validate(flip, s).empty());
  OutputTransform partial{std::map<std::string, std::string>{{"pos", "neg"}}};
  EXPECT_FALSE(validate(partial, s).empty());
  OutputTransform outside{std::map<std::string, std::string>{{"pos", "x"}, {"neg", "pos"}, {"zero", "zero"}}};
  EXPECT_FALSE(validate(outside, s).empty());
  Prediction p = apply_output_transform(flip, Prediction{"pos", 0.8});
  EXPECT_EQ(p, (Prediction{"neg", 0.8}));
}

// ---------------------------------------------------------------- pre/post

TEST(SpecChecks, PreTrueAcceptsAnything) {
  PartialSpec s{ped_schema()};
  EXPECT_TRUE(check_pre(s, ped(100)));
}

TEST(SpecChecks, PreRejectsNegativeHeight) {
  PartialSpec s{ped_schema()};
  s.precondition = Condition("input.height_ft > 0");
  EXPECT_FALSE(check_pre(s, ped(-1)));
  EXPECT_TRUE(check_pre(s, ped(1)));
}

TEST(SpecChecks, PreOnMissingFieldIsAnErrorNotFalse) {
  PartialSpec s{ped_schema()};
  s.precondition = Condition("input.speed > 0");
  EXPECT_THROW(check_pre(s, ped(1)), EvalError);
}

TEST(SpecChecks, PostAbsentIsVacuous) {
  EXPECT_TRUE(check_post(ped_spec(), ped(9), Prediction{"pedestrian", std::nullopt}));
}

TEST(SpecChecks, PostFromHandEvaluation) {
  PartialSpec s{Schema({{"height_ft", FieldType::number()}}, {"yes", "no"})};
  s.postcondition = Condition("output.label == \"no\" || input.height_ft < 8");
  FeatureRecord r;
  r.fields["height_ft"] = 9.0;
  EXPECT_FALSE(check_post(s, r, Prediction{"yes", std::nullopt}));
  EXPECT_TRUE(check_post(s, r, Prediction{"no", std::nullopt}));
}

// ---------------------------------------------------------------- sufficient / necessary

TEST(SpecChecks, SufficientEmpty) {
  EXPECT_TRUE(check_sufficient(PartialSpec{ped_schema()}, ped(5), Prediction{"pedestrian", {}}).empty());
}

TEST(SpecChecks, SufficientWireframeMatch) {
  PartialSpec s{ped_schema()};
  s.sufficient["pedestrian"].emplace_back("input.is_wireframe_match == true");
  auto v = check_sufficient(s, ped(5, 2, true), Prediction{"not_pedestrian", {}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], (ConditionRef{"pedestrian", 0}));
  EXPECT_TRUE(check_sufficient(s, ped(5, 2, true), Prediction{"pedestrian", {}}).empty());
  EXPECT_TRUE(check_sufficient(s, ped(5, 2, false), Prediction{"not_pedestrian", {}}).empty());
}

TEST(SpecChecks, NecessaryHeightExamples) {
  PartialSpec s = ped_spec();
  auto v = check_necessary(s, ped(9.0), Prediction{"pedestrian", {}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], (ConditionRef{"pedestrian", 0}));
  EXPECT_TRUE(check_necessary(s, ped(7.5), Prediction{"pedestrian", {}}).empty());
  EXPECT_TRUE(check_necessary(s, ped(9.0), Prediction{"not_pedestrian", {}}).empty());
}

TEST(SpecChecks, ConditionListsAreMonotone) {
  PartialSpec small = ped_spec();
  small.sufficient["not_pedestrian"].emplace_back("input.width_ft > 20");
  PartialSpec big = small;
  big.necessary["pedestrian"].emplace_back("input.width_ft <= 4");
  big.sufficient["not_pedestrian"].emplace_back("input.height_ft > 12");
  for (double h : {1.0, 7.9, 8.0, 13.0})
    for (double w : {1.0, 5.0, 25.0})
      for (const char* label : {"pedestrian", "not_pedestrian"}) {
        Prediction p{label, {}};
        for (const auto& ref : check_sufficient(small, ped(h, w), p)) {
          auto all = check_sufficient(big, ped(h, w), p);
          EXPECT_NE(std::find(all.begin(), all.end(), ref), all.end());
        }
        for (const auto& ref : check_necessary(small, ped(h, w), p)) {
          auto all = check_necessary(big, ped(h, w), p);
          EXPECT_NE(std::find(all.begin(), all.end(), ref), all.end());
        }
      }
}

TEST(SpecChecks, NecessaryFlagsExactlyTheBruteForceSet) {
  PartialSpec s{grid_schema()};
  s.necessary["yes"].emplace_back("input.img[1][1] == 1");
  s.necessary["yes"].emplace_back("sum(input.img) >= 3");
  auto label_of = [](unsigned m) { return (m % 3 == 0 || bit(m, 0, 0)) ? "yes" : "no"; };
  auto clf = sgtest::grid_table("t", label_of);
  std::size_t flagged = 0;
  for (unsigned m = 0; m < sgtest::kGridDomain; ++m) {
    const bool yes = std::string(label_of(m)) == "yes";
    const bool centre = bit(m, 1, 1);
    const bool heavy = std::popcount(m) >= 3;
    const bool expected = yes && (!centre || !heavy);
    auto v = check_necessary(s, grid_record(m), clf->classify(grid_record(m)));
    ASSERT_EQ(!v.empty(), expected) << m;
    if (expected) {
      std::set<std::size_t> idx;
      for (const auto& r : v) idx.insert(r.index);
      ASSERT_EQ(idx.count(0) == 1, !centre);
      ASSERT_EQ(idx.count(1) == 1, !heavy);
      ++flagged;
    }
  }
  EXPECT_GT(flagged, 0u);
}

TEST(SpecChecks, LabelSets) {
  PartialSpec s = ped_spec();
  s.sufficient["not_pedestrian"].emplace_back("input.width_ft > 20");
  EXPECT_EQ(sufficient_labels(s, ped(5, 25)), std::vector<std::string>{"not_pedestrian"});
  EXPECT_TRUE(sufficient_labels(s, ped(5, 2)).empty());
  EXPECT_EQ(excluded_labels(s, ped(9)), std::vector<std::string>{"pedestrian"});
  EXPECT_TRUE(excluded_labels(s, ped(5)).empty());
}

// ---------------------------------------------------------------- metamorphic

TEST(Metamorphic, IdentityFieldMapAlwaysHolds) {
  auto clf = sgtest::grid_table("t", [](unsigned m) { return m & 1 ? "yes" : "no"; });
  Transformation id{"identity", FieldMap{{{"img", parse("input.img")}}}};
  for (const auto& r : all_grids()) EXPECT_TRUE(check_invariant(*clf, id, r).holds);
}

TEST(Metamorphic, ConstantClassifierIsInvariant) {
  auto clf = sgtest::grid_table("const", [](unsigned) { return "yes"; });
  for (const auto& r : all_grids()) ASSERT_TRUE(check_invariant(*clf, shift(1, 1), r).holds);
}

TEST(Metamorphic, CornerClassifierHasShiftCounterexample) {
  auto label_of = [](unsigned m) { return bit(m, 0, 0) ? "yes" : "no"; };
  auto clf = sgtest::grid_table("corner", label_of);
  std::size_t counterexamples = 0;
  for (unsigned m = 0; m < sgtest::kGridDomain; ++m) {
    MetamorphicResult res = check_invariant(*clf, shift(1, 0), grid_record(m));
    const bool oracle = std::string(label_of(shift_mask(m, 1, 0))) == label_of(m);
    ASSERT_EQ(res.holds, oracle) << m;
    EXPECT_EQ(res.lhs.label, label_of(shift_mask(m, 1, 0)));
    EXPECT_EQ(res.rhs.label, label_of(m));
    EXPECT_EQ(grid_mask(res.transformed), shift_mask(m, 1, 0));
    if (!res.holds) ++counterexamples;
  }
  // After a right shift (0,0) is always vacated: every grid with (0,0) set fails.
  EXPECT_EQ(counterexamples, 256u);
}

TEST(Metamorphic, ConfidenceIsIgnored) {
  std::vector<std::pair<FeatureRecord, Prediction>> entries;
  for (unsigned m = 0; m < sgtest::kGridDomain; ++m)
    entries.push_back({grid_record(m), {"yes", (m % 10) / 10.0}});
  TableClassifier clf("jitter", entries);
  for (const auto& r : all_grids()) ASSERT_TRUE(check_invariant(clf, shift(1, 0), r).holds);
}

ExpressionClassifier sign_classifier() {
  return ExpressionClassifier("sign",
                              {{Condition("input.x > 0"), "pos", std::nullopt},
                               {Condition("input.x < 0"), "neg", std::nullopt}},
                              "zero");
}

TEST(Metamorphic, SignEquivariantUnderNegation) {
  ExpressionClassifier clf = sign_classifier();
  Equivariant eq{Transformation{"negate", Scale{"x", -1}},
                 OutputTransform{std::map<std::string, std::string>{
                     {"pos", "neg"}, {"neg", "pos"}, {"zero", "zero"}}}};
  for (int i = -50; i <= 50; ++i) {
    FeatureRecord r;
    r.fields["x"] = i / 4.0;
    ASSERT_TRUE(check_equivariant(clf, eq, r).holds) << i;
  }
  Equivariant plain{eq.input, OutputTransform{}};
  FeatureRecord one;
  one.fields["x"] = 1.0;
  MetamorphicResult res = check_equivariant(clf, plain, one);
  EXPECT_FALSE(res.holds);
  EXPECT_EQ(res.lhs.label, "neg");
  EXPECT_EQ(res.rhs.label, "pos");
}

TEST(Metamorphic, IdentityOutputReducesToInvariant) {
  auto clf = sgtest::grid_table("t", [](unsigned m) { return std::popcount(m) % 2 ? "yes" : "no"; });
  for (int dx : {-1, 0, 1})
    for (unsigned m = 0; m < sgtest::kGridDomain; ++m) {
      auto a = check_invariant(*clf, shift(dx, 1), grid_record(m));
      auto b = check_equivariant(*clf, Equivariant{shift(dx, 1), OutputTransform{}}, grid_record(m));
      ASSERT_EQ(a.holds, b.holds);
      ASSERT_EQ(a.lhs, b.lhs);
      ASSERT_EQ(a.rhs, b.rhs);
    }
}

TEST(Metamorphic, ClassifierFailureIsDistinct) {
  CallbackClassifier broken("broken", [](const FeatureRecord&) -> Prediction {
    throw Error(ErrorCode::kClassifier, "model crashed");
  });
  try {
    check_invariant(broken, shift(1, 0), grid_record(1));
    FAIL() << "expected a classifier error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClassifier);
  }
}

TEST(Metamorphic, ReportOverSpecRelations) {
  PartialSpec s{grid_schema()};
  s.invariants.push_back(shift(1, 0, "right"));
  s.equivariants.push_back(Equivariant{shift(0, 0, "still"), OutputTransform{}});
  auto label_of = [](unsigned m) { return bit(m, 0, 0) ? "yes" : "no"; };
  auto clf = sgtest::grid_table("corner", label_of);
  auto grids = all_grids();
  MetamorphicReport rep = check_metamorphic(s, *clf, grids);
  ASSERT_EQ(rep.relations.size(), 2u);
  EXPECT_EQ(rep.relations[0].kind, "INVARIANT");
  EXPECT_EQ(rep.relations[0].checked, 512u);
  EXPECT_EQ(rep.relations[0].held, 256u);
  EXPECT_EQ(rep.relations[1].kind, "EQUIVARIANT");
  EXPECT_EQ(rep.relations[1].held, 512u);
  EXPECT_EQ(rep.failures.size(), 256u);
  EXPECT_FALSE(rep.ok());
  Json j = to_json(rep);
  EXPECT_EQ(j["failures"].size(), 256u);
}

// ---------------------------------------------------------------- validate_spec

TEST(ValidateSpec, EmptyConditionsHaveNoConflicts) {
  Schema s({{"x", FieldType::number()}}, {"yes", "no"});
  PartialSpec spec{s};
  FeatureRecord r;
  r.fields["x"] = 1.0;
  std::vector<FeatureRecord> samples{r};
  WellFormednessReport rep = validate_spec(spec, samples);
  EXPECT_TRUE(rep.ok());
  EXPECT_TRUE(rep.conflicts.empty());
  EXPECT_EQ(rep.samples_checked, 1u);
  EXPECT_EQ(rep.uncovered_labels, (std::vector<std::string>{"yes", "no"}));
}

TEST(ValidateSpec, ConflictingSufficientConditions) {
  PartialSpec spec{Schema({{"x", FieldType::number()}}, {"yes", "no"})};
  spec.sufficient["yes"].emplace_back("input.x > 0");
  spec.sufficient["no"].emplace_back("input.x > 0");
  FeatureRecord r;
  r.fields["x"] = 1.0;
  std::vector<FeatureRecord> samples{r};
  WellFormednessReport rep = validate_spec(spec, samples);
  ASSERT_EQ(rep.conflicts.size(), 1u);
  std::set<std::string> labels(rep.conflicts[0].labels.begin(), rep.conflicts[0].labels.end());
  EXPECT_EQ(labels, (std::set<std::string>{"yes", "no"}));
  EXPECT_FALSE(rep.ok());
}

TEST(ValidateSpec, AdmitsNoOutput) {
  PartialSpec spec{Schema({{"x", FieldType::number()}}, {"yes", "no"})};
  spec.sufficient["yes"].emplace_back("input.x > 0");
  spec.necessary["yes"].emplace_back("input.x < 0");
  FeatureRecord r;
  r.fields["x"] = 1.0;
  std::vector<FeatureRecord> samples{r};
  WellFormednessReport rep = validate_spec(spec, samples);
  ASSERT_EQ(rep.no_output.size(), 1u);
  EXPECT_EQ(rep.no_output[0].label, "yes");
  EXPECT_EQ(rep.no_output[0].sufficient_index, 0u);
  EXPECT_EQ(rep.no_output[0].necessary_index, 0u);
}

TEST(ValidateSpec, SamplesOutsidePreconditionAreSkipped) {
  PartialSpec spec{Schema({{"x", FieldType::number()}}, {"yes", "no"})};
  spec.precondition = Condition("input.x < 0");
  spec.sufficient["yes"].emplace_back("input.x > 0");
  spec.sufficient["no"].emplace_back("input.x > 0");
  FeatureRecord r;
  r.fields["x"] = 1.0;
  std::vector<FeatureRecord> samples{r};
  WellFormednessReport rep = validate_spec(spec, samples);
  EXPECT_EQ(rep.samples_in_domain, 0u);
  EXPECT_TRUE(rep.conflicts.empty());
}

TEST(ValidateSpec, StaticIssues) {
  PartialSpec spec{Schema({{"x", FieldType::number()}}, {"yes", "no"})};
  spec.precondition = Condition("output.label == \"yes\"");
  spec.sufficient["maybe"].emplace_back("input.x > 0");
  spec.necessary["yes"].emplace_back("input.x + 1");
  spec.invariants.push_back(Transformation{"bad", Scale{"missing", 2}});
  spec.probabilistic.push_back(ProbConstraint{"x", RangeConstraint{5, 1, 0}});
  std::vector<std::string> issues = static_issues(spec);
  EXPECT_GE(issues.size(), 5u);
  EXPECT_THROW(require_well_formed(spec), Error);
  std::vector<FeatureRecord> none;
  EXPECT_FALSE(validate_spec(spec, none).ok());
}

TEST(ValidateSpec, EvaluationErrorsAreListedPerSample) {
  PartialSpec spec{Schema({{"x", FieldType::number()}}, {"yes", "no"})};
  spec.sufficient["yes"].emplace_back("1 / input.x > 0");
  FeatureRecord r;
  r.fields["x"] = 0.0;
  r.id = "zero";
  std::vector<FeatureRecord> samples{r};
  WellFormednessReport rep = validate_spec(spec, samples);
  ASSERT_EQ(rep.errors.size(), 1u);
  EXPECT_EQ(rep.errors[0].sample_id, "zero");
}

// ---------------------------------------------------------------- classifiers

TEST(Classify, ExpressionClassifierHeightRule) {
  ExpressionClassifier clf("rule", {{Condition("input.height_ft < 8"), "pedestrian", std::nullopt}},
                           "not_pedestrian");
  EXPECT_EQ(clf.classify(ped(7)).label, "pedestrian");
  EXPECT_EQ(clf.classify(ped(9)).label, "not_pedestrian");
  EXPECT_TRUE(clf.validate(ped_schema()).empty());
  ExpressionClassifier bad("bad", {{Condition("input.speed > 1"), "other", std::nullopt}}, "zzz");
  EXPECT_EQ(bad.validate(ped_schema()).size(), 3u);
  EXPECT_THROW(ExpressionClassifier("out", {{Condition("output.label == \"x\""), "x", std::nullopt}}, "x"),
               Error);
}

TEST(Classify, ExpressionClassifierFirstMatchWinsWithConfidence) {
  ExpressionClassifier clf("r",
                           {{Condition("input.height_ft < 8"), "pedestrian", 0.7},
                            {Condition("input.height_ft < 100"), "not_pedestrian", 0.6}},
                           "not_pedestrian", 0.5);
  EXPECT_EQ(clf.classify(ped(5)), (Prediction{"pedestrian", 0.7}));
  EXPECT_EQ(clf.classify(ped(50)), (Prediction{"not_pedestrian", 0.6}));
  EXPECT_EQ(clf.classify(ped(500)), (Prediction{"not_pedestrian", 0.5}));
}

TEST(Classify, ExpressionRuleEvaluationFailureIsClassifierError) {
  ExpressionClassifier clf("r", {{Condition("input.nope > 1"), "pedestrian", std::nullopt}}, "x");
  try {
    clf.classify(ped(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClassifier);
  }
}

TEST(Classify, TableLookupAndFallback) {
  FeatureRecord a = ped(5.0);
  TableClassifier clf("t", {{a, {"pedestrian", 0.8}}});
  EXPECT_EQ(clf.classify(a), (Prediction{"pedestrian", 0.8}));
  EXPECT_THROW(clf.classify(ped(6.0)), Error);
  TableClassifier with_default("t", {{a, {"pedestrian", 0.8}}}, Prediction{"not_pedestrian", {}});
  EXPECT_EQ(with_default.classify(ped(6.0)).label, "not_pedestrian");
}

TEST(Classify, CanonicalKeyIgnoresIdAndFieldOrderAndSignOfZero) {
  FeatureRecord a;
  a.fields["b"] = 1.0;
  a.fields["a"] = -0.0;
  FeatureRecord b;
  b.id = "other";
  b.fields["a"] = 0.0;
  b.fields["b"] = 1.0;
  EXPECT_EQ(canonical_key(a), canonical_key(b));
  EXPECT_EQ(canonical_key(b), "{\"a\":0,\"b\":1}");
  FeatureRecord c;
  c.fields["v"] = 0.1;
  EXPECT_EQ(canonical_key(c), "{\"v\":0.10000000000000001}");
  EXPECT_EQ(render_value(FieldValue{0.1}), "0.1");
}

TEST(Classify, TableFromJsonUsesCanonicalKeys) {
  Json j = Json::parse(R"({"kind": "table", "name": "t",
    "entries": [{"input": {"width_ft": 2, "height_ft": 7}, "label": "pedestrian", "confidence": 0.4}],
    "default": {"label": "not_pedestrian"}})");
  ClassifierPtr clf = classifier_from_json(j);
  FeatureRecord r;
  r.fields["height_ft"] = 7.0;
  r.fields["width_ft"] = 2.0;
  EXPECT_EQ(clf->classify(r), (Prediction{"pedestrian", 0.4}));
  r.fields["height_ft"] = 7.5;
  EXPECT_EQ(clf->classify(r).label, "not_pedestrian");
}

TEST(Classify, SubprocessProtocol) {
  SubprocessClassifier clf("model", {FAKE_MODEL_PATH, "height"});
  EXPECT_EQ(clf.classify(ped(7)), (Prediction{"pedestrian", 0.9}));
  EXPECT_EQ(clf.classify(ped(9)), (Prediction{"not_pedestrian", 0.9}));
  EXPECT_EQ(clf.timeout(), std::chrono::milliseconds(5000));
}

TEST(Classify, SubprocessFailuresAreClassifierErrors) {
  for (const char* mode : {"crash", "garbage"}) {
    SCOPED_TRACE(mode);
    SubprocessClassifier clf("model", {FAKE_MODEL_PATH, mode});
    for (int attempt = 0; attempt < 2; ++attempt) {
      try {
        clf.classify(ped(7));
        FAIL();
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kClassifier);
      }
    }
  }
  SubprocessClassifier missing("model", {"/nonexistent/specguard-model"});
  EXPECT_THROW(missing.classify(ped(7)), Error);
}

TEST(Classify, SubprocessTimeout) {
  SubprocessClassifier clf("model", {FAKE_MODEL_PATH, "hang"}, std::chrono::milliseconds(200));
  auto start = std::chrono::steady_clock::now();
  try {
    clf.classify(ped(7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClassifier);
    EXPECT_NE(std::string(e.what()).find("timeout"), std::string::npos) << e.what();
  }
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(3));
}

// ---------------------------------------------------------------- JSON

TEST(SpecJson, ExampleSpecLoadsAndRoundTrips) {
  PartialSpec s = load_spec(std::string(SPECGUARD_EXAMPLES_DIR) + "/pedestrian/spec.json");
  EXPECT_TRUE(static_issues(s).empty());
  EXPECT_EQ(s.schema.labels().size(), 2u);
  EXPECT_EQ(s.necessary.at("pedestrian").size(), 1u);
  PartialSpec again = spec_from_json(to_json(s));
  EXPECT_EQ(to_json(again).dump(), to_json(s).dump());
}

TEST(SpecJson, RejectsUnknownKeysAndBadExpressions) {
  Json base = Json::parse(R"({"schema": {"fields": [{"name": "x", "type": "number"}], "labels": ["a"]}})");
  EXPECT_NO_THROW(spec_from_json(base));
  Json extra = base;
  extra["bogus"] = 1;
  EXPECT_THROW(spec_from_json(extra), Error);
  Json bad = base;
  bad["precondition"] = "input.x <";
  try {
    spec_from_json(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSyntax);
    EXPECT_NE(std::string(e.what()).find("/precondition"), std::string::npos);
  }
}

TEST(SpecJson, SchemaInvariants) {
  EXPECT_THROW(Schema({{"x", FieldType::number()}, {"x", FieldType::boolean()}}, {"a"}), Error);
  EXPECT_THROW(Schema({{"g", FieldType::grid(0, 3)}}, {"a"}), Error);
  EXPECT_THROW(Schema({{"x", FieldType::number()}}, {}), Error);
  EXPECT_THROW(Schema({{"c", FieldType::category({})}}, {"a"}), Error);
}

TEST(SpecJson, ConformanceIssues) {
  Schema s({{"n", FieldType::integer()},
            {"c", FieldType::category({"red"})},
            {"g", FieldType::grid(1, 2)}},
           {"a"});
  FeatureRecord ok;
  ok.fields["n"] = 3.0;
  ok.fields["c"] = std::string("red");
  ok.fields["g"] = Grid(1, 2);
  EXPECT_TRUE(conformance_issues(s, ok).empty());
  FeatureRecord bad = ok;
  bad.fields["n"] = 3.5;
  bad.fields["c"] = std::string("blue");
  bad.fields["g"] = Grid(2, 2);
  bad.fields["extra"] = 1.0;
  EXPECT_EQ(conformance_issues(s, bad).size(), 4u);
  FeatureRecord missing;
  EXPECT_EQ(conformance_issues(s, missing).size(), 3u);
  EXPECT_FALSE(prediction_issues(s, Prediction{"b", 2.0}).empty());
  EXPECT_TRUE(prediction_issues(s, Prediction{"a", 1.0}).empty());
}

}  // namespace
}  // namespace specguard
