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

#include "specguard/spec.hpp"

#include <cmath>

#include "specguard/error.hpp"

namespace specguard {
namespace {

void check_condition(const Condition& c, const Schema& schema, bool output_allowed,
                     const std::string& where, std::vector<std::string>& issues) {
  TypeCheckResult tc = typecheck(c.expr, schema, output_allowed);
  for (const auto& e : tc.errors) issues.push_back(where + " '" + c.text + "': " + e);
  if (tc.type && *tc.type != ValueType::kBoolean)
    issues.push_back(where + " '" + c.text + "' is " + to_string(*tc.type) +
                     ", conditions must be boolean");
}

void check_condition_map(const ConditionMap& m, const Schema& schema, const char* kind,
                         std::vector<std::string>& issues) {
  for (const auto& [label, conditions] : m) {
    if (!schema.has_label(label))
      issues.push_back(std::string(kind) + " conditions reference unknown label \"" + label +
                       "\"");
    for (std::size_t j = 0; j < conditions.size(); ++j)
      check_condition(conditions[j], schema, false,
                      std::string(kind) + "[\"" + label + "\"][" + std::to_string(j) + "]",
                      issues);
  }
}

std::string id_of(const FeatureRecord& r, std::size_t index) {
  return r.id ? *r.id : "#" + std::to_string(index);
}

}  // namespace

std::vector<std::string> static_issues(const PartialSpec& spec) {
  std::vector<std::string> issues;
  const Schema& schema = spec.schema;
  check_condition(spec.precondition, schema, false, "precondition", issues);
  if (spec.postcondition)
    check_condition(*spec.postcondition, schema, true, "postcondition", issues);
  check_condition_map(spec.sufficient, schema, "sufficient", issues);
  check_condition_map(spec.necessary, schema, "necessary", issues);
  for (const auto& t : spec.invariants)
    for (auto& issue : validate(t, schema)) issues.push_back("invariant: " + issue);
  for (const auto& eq : spec.equivariants) {
    for (auto& issue : validate(eq.input, schema)) issues.push_back("equivariant: " + issue);
    for (auto& issue : validate(eq.output, schema))
      issues.push_back("equivariant '" + eq.input.name + "': " + issue);
  }
  for (const auto& pc : spec.probabilistic) {
    const FieldDecl* d = schema.find(pc.field);
    if (d == nullptr) {
      issues.push_back("probabilistic constraint on undeclared field '" + pc.field + "'");
    } else if (d->type.kind != FieldKind::kNumber && d->type.kind != FieldKind::kInteger) {
      issues.push_back("probabilistic constraint on non-numeric field '" + pc.field + "'");
    }
    if (const auto* r = std::get_if<RangeConstraint>(&pc.kind)) {
      if (!(r->lo <= r->hi)) issues.push_back("range constraint on '" + pc.field + "' has lo > hi");
      if (!(r->max_violation_fraction >= 0.0 && r->max_violation_fraction <= 1.0))
        issues.push_back("range constraint on '" + pc.field +
                         "' needs max_violation_fraction in [0,1]");
    } else {
      const auto& m = std::get<MeanConstraint>(pc.kind);
      if (!(m.tolerance >= 0.0)) issues.push_back("mean constraint on '" + pc.field + "' has negative tolerance");
      if (!std::isfinite(m.expected)) issues.push_back("mean constraint on '" + pc.field + "' expects a finite value");
    }
  }
  return issues;
}

void require_well_formed(const PartialSpec& spec) {
  auto issues = static_issues(spec);
  if (!issues.empty())
    throw Error(ErrorCode::kSpec,
                "partial specification is not well formed (" + std::to_string(issues.size()) +
                    " issue" + (issues.size() == 1 ? "" : "s") + ")",
                std::move(issues));
}

bool check_pre(const PartialSpec& spec, const FeatureRecord& input) {
  return holds(spec.precondition.expr, EvalContext{input, nullptr});
}

bool check_post(const PartialSpec& spec, const FeatureRecord& input,
                const Prediction& prediction) {
  if (!spec.postcondition) return true;
  return holds(spec.postcondition->expr, EvalContext{input, &prediction});
}

std::vector<ConditionRef> check_sufficient(const PartialSpec& spec, const FeatureRecord& input,
                                           const Prediction& prediction) {
  std::vector<ConditionRef> out;
  EvalContext ctx{input, nullptr};
  for (const auto& [label, conditions] : spec.sufficient) {
    if (label == prediction.label) continue;
    for (std::size_t j = 0; j < conditions.size(); ++j)
      if (holds(conditions[j].expr, ctx)) out.push_back({label, j});
  }
  return out;
}

std::vector<ConditionRef> check_necessary(const PartialSpec& spec, const FeatureRecord& input,
                                          const Prediction& prediction) {
  std::vector<ConditionRef> out;
  auto it = spec.necessary.find(prediction.label);
  if (it == spec.necessary.end()) return out;
  EvalContext ctx{input, nullptr};
  for (std::size_t j = 0; j < it->second.size(); ++j)
    if (!holds(it->second[j].expr, ctx)) out.push_back({it->first, j});
  return out;
}

std::vector<std::string> sufficient_labels(const PartialSpec& spec, const FeatureRecord& input) {
  std::vector<std::string> out;
  EvalContext ctx{input, nullptr};
  for (const auto& [label, conditions] : spec.sufficient)
    for (const auto& c : conditions)
      if (holds(c.expr, ctx)) {
        out.push_back(label);
        break;
      }
  return out;
}

std::vector<std::string> excluded_labels(const PartialSpec& spec, const FeatureRecord& input) {
  std::vector<std::string> out;
  EvalContext ctx{input, nullptr};
  for (const auto& [label, conditions] : spec.necessary)
    for (const auto& c : conditions)
      if (!holds(c.expr, ctx)) {
        out.push_back(label);
        break;
      }
  return out;
}

MetamorphicResult check_invariant(const Classifier& classifier, const Transformation& t,
                                  const FeatureRecord& input) {
  return check_equivariant(classifier, Equivariant{t, OutputTransform{}}, input);
}

MetamorphicResult check_equivariant(const Classifier& classifier, const Equivariant& pair,
                                    const FeatureRecord& input) {
  MetamorphicResult r;
  r.transformed = apply_transformation(pair.input, input);
  r.lhs = classifier.classify(r.transformed);
  r.rhs = apply_output_transform(pair.output, classifier.classify(input));
  r.holds = r.lhs.label == r.rhs.label;
  return r;
}

WellFormednessReport validate_spec(const PartialSpec& spec,
                                   std::span<const FeatureRecord> samples) {
  WellFormednessReport report;
  report.static_issues = static_issues(spec);
  for (const auto& label : spec.schema.labels()) {
    auto has = [&](const ConditionMap& m) {
      auto it = m.find(label);
      return it != m.end() && !it->second.empty();
    };
    if (!has(spec.sufficient) && !has(spec.necessary)) report.uncovered_labels.push_back(label);
  }
  // Sample checks need expressions that typecheck.
  if (!report.static_issues.empty()) return report;

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const FeatureRecord& s = samples[i];
    const std::string id = id_of(s, i);
    ++report.samples_checked;
    auto conformance = conformance_issues(spec.schema, s);
    if (!conformance.empty()) {
      std::string msg = "does not conform to schema:";
      for (const auto& c : conformance) msg += " " + c + ";";
      report.errors.push_back({i, id, msg});
      continue;
    }
    try {
      if (!check_pre(spec, s)) continue;
      ++report.samples_in_domain;
      std::vector<std::string> labels = sufficient_labels(spec, s);
      if (labels.size() > 1) report.conflicts.push_back({i, id, labels});
      EvalContext ctx{s, nullptr};
      for (const auto& [label, suf] : spec.sufficient) {
        auto nec = spec.necessary.find(label);
        if (nec == spec.necessary.end()) continue;
        for (std::size_t a = 0; a < suf.size(); ++a) {
          if (!holds(suf[a].expr, ctx)) continue;
          for (std::size_t b = 0; b < nec->second.size(); ++b)
            if (!holds(nec->second[b].expr, ctx))
              report.no_output.push_back({i, id, label, a, b});
        }
      }
    } catch (const EvalError& e) {
      report.errors.push_back({i, id, e.what()});
    }
  }
  return report;
}

}  // namespace specguard
