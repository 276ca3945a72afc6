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

#include "specguard/classifier.hpp"

#include "specguard/error.hpp"

namespace specguard {

TableClassifier::TableClassifier(
    std::string name, const std::vector<std::pair<FeatureRecord, Prediction>>& entries,
    std::optional<Prediction> fallback)
    : Classifier(std::move(name)), fallback_(std::move(fallback)) {
  for (const auto& [record, prediction] : entries) {
    auto [it, inserted] = table_.emplace(canonical_key(record), prediction);
    if (!inserted && !(it->second == prediction))
      throw Error(ErrorCode::kConfig, "table classifier '" + this->name() +
                                          "' has conflicting entries for " + it->first);
  }
}

Prediction TableClassifier::classify(const FeatureRecord& input) const {
  auto it = table_.find(canonical_key(input));
  if (it != table_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw Error(ErrorCode::kClassifier,
              "table classifier '" + name() + "' has no entry for " + canonical_key(input));
}

ExpressionClassifier::ExpressionClassifier(std::string name, std::vector<Rule> rules,
                                           std::string default_label,
                                           std::optional<double> default_confidence)
    : Classifier(std::move(name)),
      rules_(std::move(rules)),
      default_label_(std::move(default_label)),
      default_confidence_(default_confidence) {
  for (const auto& r : rules_)
    if (references_output(r.when.expr))
      throw Error(ErrorCode::kConfig, "classifier '" + this->name() + "' rule '" + r.when.text +
                                          "' references output; rules are input-only");
}

Prediction ExpressionClassifier::classify(const FeatureRecord& input) const {
  EvalContext ctx{input, nullptr};
  for (const auto& r : rules_) {
    bool fired;
    try {
      fired = holds(r.when.expr, ctx);
    } catch (const EvalError& e) {
      throw Error(ErrorCode::kClassifier, "classifier '" + name() + "' rule '" + r.when.text +
                                              "': " + e.what());
    }
    if (fired) return Prediction{r.label, r.confidence};
  }
  return Prediction{default_label_, default_confidence_};
}

std::vector<std::string> ExpressionClassifier::validate(const Schema& schema) const {
  std::vector<std::string> issues;
  const std::string who = "classifier '" + name() + "': ";
  for (const auto& r : rules_) {
    TypeCheckResult tc = typecheck(r.when.expr, schema, false);
    for (const auto& e : tc.errors) issues.push_back(who + "rule '" + r.when.text + "': " + e);
    if (tc.type && *tc.type != ValueType::kBoolean)
      issues.push_back(who + "rule '" + r.when.text + "' is " + to_string(*tc.type) +
                       ", expected boolean");
    if (!schema.has_label(r.label))
      issues.push_back(who + "label \"" + r.label + "\" is not in the alphabet");
    if (r.confidence && !(*r.confidence >= 0.0 && *r.confidence <= 1.0))
      issues.push_back(who + "rule confidence outside [0,1]");
  }
  if (!schema.has_label(default_label_))
    issues.push_back(who + "default label \"" + default_label_ + "\" is not in the alphabet");
  return issues;
}

Prediction CallbackClassifier::classify(const FeatureRecord& input) const {
  try {
    return fn_(input);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kClassifier, "classifier '" + name() + "' failed: " + e.what());
  }
}

}  // namespace specguard
