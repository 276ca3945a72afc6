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

// Partial behavioural specifications of classifiers and the checks that give
// them executable meaning.
//
// A spec constrains F : I -> O without fixing it:
//   - precondition / postcondition: I |= pre  =>  (I, F(I)) |= post
//   - sufficient[l]: I |= c  =>  F(I) = l        (for every c)
//   - necessary[l]:  F(I) = l  =>  I |= c        (for every c)
//   - invariants g:            F(g(I)) = F(I)
//   - equivariants (g, g'):    F(g(I)) = g'(F(I))
//   - probabilistic constraints over batches of inputs.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "specguard/classifier.hpp"
#include "specguard/record.hpp"
#include "specguard/speclang.hpp"
#include "specguard/transform.hpp"

namespace specguard {

struct RangeConstraint {
  double lo = 0;
  double hi = 0;
  double max_violation_fraction = 0;
};

struct MeanConstraint {
  double expected = 0;
  double tolerance = 0;
};

struct ProbConstraint {
  std::string field;
  std::variant<RangeConstraint, MeanConstraint> kind;
};

struct Equivariant {
  Transformation input;
  OutputTransform output;
};

using ConditionMap = std::map<std::string, std::vector<Condition>>;

struct PartialSpec {
  Schema schema;
  Condition precondition{make_bool(true)};
  std::optional<Condition> postcondition;
  ConditionMap sufficient;
  ConditionMap necessary;
  std::vector<Transformation> invariants;
  std::vector<Equivariant> equivariants;
  std::vector<ProbConstraint> probabilistic;
};

/// Static well-formedness: every condition typechecks to boolean (pre,
/// sufficient and necessary input-only), labels belong to the alphabet,
/// transformations and constraints are valid for the schema.
std::vector<std::string> static_issues(const PartialSpec& spec);

/// Throws Error(kSpec) listing static_issues() when there are any.
void require_well_formed(const PartialSpec& spec);

/// True iff input |= pre. Evaluation failures propagate as EvalError; they are
/// never reported as `false`.
bool check_pre(const PartialSpec& spec, const FeatureRecord& input);

/// True iff (input, prediction) |= post; vacuously true without a
/// postcondition.
bool check_post(const PartialSpec& spec, const FeatureRecord& input,
                const Prediction& prediction);

struct ConditionRef {
  std::string label;
  std::size_t index = 0;

  friend bool operator==(const ConditionRef&, const ConditionRef&) = default;
  friend auto operator<=>(const ConditionRef&, const ConditionRef&) = default;
};

/// (l, j) for every sufficient[l][j] that holds while prediction.label != l.
std::vector<ConditionRef> check_sufficient(const PartialSpec& spec, const FeatureRecord& input,
                                           const Prediction& prediction);

/// (l, j) for every necessary[l][j] that fails while prediction.label == l.
std::vector<ConditionRef> check_necessary(const PartialSpec& spec, const FeatureRecord& input,
                                          const Prediction& prediction);

/// Labels with at least one satisfied sufficient condition.
std::vector<std::string> sufficient_labels(const PartialSpec& spec, const FeatureRecord& input);

/// Labels with at least one violated necessary condition (ruled out).
std::vector<std::string> excluded_labels(const PartialSpec& spec, const FeatureRecord& input);

struct MetamorphicResult {
  bool holds = false;
  Prediction lhs;  // F(g(I))
  Prediction rhs;  // F(I) or g'(F(I))
  FeatureRecord transformed;
};

/// Compares labels only; confidences are ignored.
MetamorphicResult check_invariant(const Classifier& classifier, const Transformation& t,
                                  const FeatureRecord& input);

MetamorphicResult check_equivariant(const Classifier& classifier, const Equivariant& pair,
                                    const FeatureRecord& input);

struct SampleConflict {
  std::size_t sample = 0;
  std::string sample_id;
  std::vector<std::string> labels;  // >= 2 labels whose sufficient conditions hold
};

struct NoOutputFailure {
  std::size_t sample = 0;
  std::string sample_id;
  std::string label;
  std::size_t sufficient_index = 0;
  std::size_t necessary_index = 0;
};

struct SampleError {
  std::size_t sample = 0;
  std::string sample_id;
  std::string message;
};

struct WellFormednessReport {
  std::vector<std::string> static_issues;
  std::vector<std::string> uncovered_labels;  // no sufficient and no necessary condition
  std::size_t samples_checked = 0;
  std::size_t samples_in_domain = 0;          // satisfying the precondition
  std::vector<SampleConflict> conflicts;
  std::vector<NoOutputFailure> no_output;
  std::vector<SampleError> errors;

  bool ok() const noexcept {
    return static_issues.empty() && conflicts.empty() && no_output.empty() && errors.empty();
  }
};

WellFormednessReport validate_spec(const PartialSpec& spec,
                                   std::span<const FeatureRecord> samples);

struct RelationStats {
  std::string relation;  // transformation name
  std::string kind;      // INVARIANT or EQUIVARIANT
  std::size_t checked = 0;
  std::size_t held = 0;
  std::size_t errors = 0;
};

struct MetamorphicFailure {
  std::size_t sample = 0;
  std::string sample_id;
  std::string relation;
  MetamorphicResult result;
};

struct MetamorphicReport {
  std::vector<RelationStats> relations;
  std::vector<MetamorphicFailure> failures;
  std::vector<SampleError> errors;
  bool ok() const noexcept { return failures.empty() && errors.empty(); }
};

/// Checks every invariant and equivariant of `spec` on every input.
MetamorphicReport check_metamorphic(const PartialSpec& spec, const Classifier& classifier,
                                    std::span<const FeatureRecord> inputs);

}  // namespace specguard
