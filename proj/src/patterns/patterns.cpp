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

#include "specguard/patterns.hpp"

#include <algorithm>
#include <cmath>

#include "specguard/error.hpp"

namespace specguard {

const char* to_string(Fusion f) noexcept {
  return f == Fusion::kMajority ? "MAJORITY" : "CONFIDENCE_WEIGHTED";
}

Fusion parse_fusion(std::string_view text) {
  if (text == "MAJORITY") return Fusion::kMajority;
  if (text == "CONFIDENCE_WEIGHTED") return Fusion::kConfidenceWeighted;
  throw Error(ErrorCode::kConfig, "unknown fusion \"" + std::string(text) +
                                      "\" (expected MAJORITY or CONFIDENCE_WEIGHTED)");
}

const char* to_string(SimplexSource s) noexcept {
  return s == SimplexSource::kPrimary ? "PRIMARY" : "FALLBACK";
}

const char* to_string(GatedSource s) noexcept {
  return s == GatedSource::kSpec ? "SPEC" : "ML";
}

const char* to_string(GateRule r) noexcept {
  switch (r) {
    case GateRule::kNone: return "NONE";
    case GateRule::kSufficient: return "SUFFICIENT";
    case GateRule::kElimination: return "ELIMINATION";
  }
  return "UNKNOWN";
}

EnsembleResult ensemble_fuse(const EnsembleConfig& config, const FeatureRecord& input) {
  if (config.members.empty())
    throw Error(ErrorCode::kConfig, "ensemble needs at least one member");
  EnsembleResult result;
  std::vector<std::string> failures;
  for (const auto& m : config.members) {
    try {
      result.votes.push_back(m->classify(input));
    } catch (const Error& e) {
      failures.push_back(m->name() + ": " + e.what());
    }
  }
  if (!failures.empty())
    throw Error(ErrorCode::kPattern,
                "ensemble member failure (" + std::to_string(failures.size()) + " of " +
                    std::to_string(config.members.size()) + ")",
                std::move(failures));

  for (const auto& v : result.votes) {
    double w = config.fusion == Fusion::kMajority ? 1.0 : v.confidence.value_or(1.0);
    result.mass[v.label] += w;
  }
  if (result.votes.size() == 1) {
    result.prediction = result.votes.front();
    return result;
  }

  double total = 0.0, best = -1.0;
  for (const auto& [label, m] : result.mass) {
    total += m;
    best = std::max(best, m);
  }
  // Summed confidences may differ in the last bits for equal vote sets.
  constexpr double kTieEpsilon = 1e-12;
  for (const auto& [label, m] : result.mass)
    if (best - m <= kTieEpsilon) result.tied_labels.push_back(label);
  // std::map iteration order makes the first tied label the smallest.
  const std::string winner = result.tied_labels.front();
  result.tie = result.tied_labels.size() > 1;
  if (!result.tie) result.tied_labels.clear();
  const double win_mass = result.mass[winner];
  result.prediction = Prediction{winner, total > 0.0 ? win_mass / total : 0.0};
  return result;
}

SimplexResult simplex_decide(const SimplexConfig& config, const FeatureRecord& input) {
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0))
    throw Error(ErrorCode::kConfig, "simplex threshold must be in [0,1]");
  SimplexResult result;
  try {
    result.primary = config.primary->classify(input);
  } catch (const Error& e) {
    result.primary_error = e.what();
  }
  if (result.primary) {
    if (!result.primary->confidence)
      throw Error(ErrorCode::kConfig, "simplex primary '" + config.primary->name() +
                                          "' emitted no confidence");
    if (*result.primary->confidence >= config.threshold) {
      result.prediction = *result.primary;
      result.source = SimplexSource::kPrimary;
      return result;
    }
  }
  try {
    result.prediction = config.fallback->classify(input);
  } catch (const Error& e) {
    throw Error(ErrorCode::kPattern,
                "simplex fallback '" + config.fallback->name() + "' failed: " + e.what());
  }
  result.source = SimplexSource::kFallback;
  return result;
}

namespace {

struct SpecVerdict {
  bool in_domain = false;
  std::vector<std::string> sufficient;
  std::vector<std::string> remaining;
  std::vector<std::string> excluded;
};

SpecVerdict consult_spec(const PartialSpec& spec, const FeatureRecord& input) {
  SpecVerdict v;
  try {
    v.in_domain = check_pre(spec, input);
    if (!v.in_domain) return v;
    v.sufficient = sufficient_labels(spec, input);
    v.excluded = excluded_labels(spec, input);
  } catch (const EvalError& e) {
    throw Error(ErrorCode::kPattern, std::string("gated spec evaluation failed: ") + e.what());
  }
  for (const auto& l : spec.schema.labels())
    if (std::find(v.excluded.begin(), v.excluded.end(), l) == v.excluded.end())
      v.remaining.push_back(l);
  return v;
}

}  // namespace

GatedResult gated_classify(const GatedConfig& config, const FeatureRecord& input) {
  SpecVerdict v = consult_spec(*config.spec, input);
  GatedResult result;
  result.excluded = v.excluded;
  if (v.in_domain) {
    if (v.sufficient.size() > 1) {
      std::string labels;
      for (const auto& l : v.sufficient) labels += (labels.empty() ? "" : ", ") + l;
      throw Error(ErrorCode::kPattern,
                  "gated: sufficient conditions of several labels hold (" + labels +
                      "); the spec is inconsistent, run validate_spec on it");
    }
    if (v.sufficient.size() == 1) {
      result.prediction = Prediction{v.sufficient.front(), 1.0};
      result.source = GatedSource::kSpec;
      result.rule = GateRule::kSufficient;
      return result;
    }
    if (v.remaining.size() == 1) {
      result.prediction = Prediction{v.remaining.front(), 1.0};
      result.source = GatedSource::kSpec;
      result.rule = GateRule::kElimination;
      return result;
    }
  }
  result.prediction = config.ml->classify(input);
  result.source = GatedSource::kMl;
  return result;
}

bool spec_decides(const PartialSpec& spec, const FeatureRecord& input) {
  SpecVerdict v = consult_spec(spec, input);
  return v.in_domain && (v.sufficient.size() == 1 || (v.sufficient.empty() && v.remaining.size() == 1));
}

EnvelopeResult envelope_route(const EnvelopeConfig& config, const FeatureRecord& input) {
  EnvelopeResult result;
  try {
    result.safety = config.safety->classify(input);
  } catch (const Error& e) {
    throw Error(ErrorCode::kPattern,
                "safety classifier '" + config.safety->name() + "' failed: " + e.what());
  }
  try {
    result.advisory = config.advisory->classify(input);
  } catch (const Error& e) {
    result.advisory_error = e.what();
  }
  return result;
}

HarvestStore::HarvestStore(double threshold) : threshold_(threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw Error(ErrorCode::kConfig, "harvest threshold must be in [0,1]");
}

bool HarvestStore::harvest(const TraceRecord& record) {
  if (!record.output.confidence) {
    entries_.push_back({record, "no confidence"});
    return true;
  }
  double c = *record.output.confidence;
  if (c < threshold_) {
    entries_.push_back({record, "confidence " + format_number(c) + " < " + format_number(threshold_)});
    return true;
  }
  return false;
}

namespace {

class ClassifierSubject final : public Subject {
 public:
  explicit ClassifierSubject(ClassifierPtr c) : c_(std::move(c)) {}
  Decision decide(const FeatureRecord& input) const override {
    return {c_->classify(input), "CLASSIFIER"};
  }
  std::string describe() const override { return "classifier:" + c_->name(); }

 private:
  ClassifierPtr c_;
};

class EnsembleSubject final : public Subject {
 public:
  explicit EnsembleSubject(EnsembleConfig c) : c_(std::move(c)) {}
  Decision decide(const FeatureRecord& input) const override {
    auto r = ensemble_fuse(c_, input);
    return {r.prediction, r.tie ? "ENSEMBLE_TIE" : "ENSEMBLE"};
  }
  std::string describe() const override {
    std::string s = std::string("ensemble(") + to_string(c_.fusion) + ":";
    for (const auto& m : c_.members) s += " " + m->name();
    return s + ")";
  }

 private:
  EnsembleConfig c_;
};

class SimplexSubject final : public Subject {
 public:
  explicit SimplexSubject(SimplexConfig c) : c_(std::move(c)) {}
  Decision decide(const FeatureRecord& input) const override {
    auto r = simplex_decide(c_, input);
    return {r.prediction, to_string(r.source)};
  }
  std::string describe() const override {
    return "simplex(" + c_.primary->name() + " -> " + c_.fallback->name() +
           ", threshold " + format_number(c_.threshold) + ")";
  }

 private:
  SimplexConfig c_;
};

class GatedSubject final : public Subject {
 public:
  explicit GatedSubject(GatedConfig c) : c_(std::move(c)) {}
  Decision decide(const FeatureRecord& input) const override {
    auto r = gated_classify(c_, input);
    return {r.prediction, to_string(r.source)};
  }
  std::string describe() const override { return "gated(spec -> " + c_.ml->name() + ")"; }

 private:
  GatedConfig c_;
};

class EnvelopeSubject final : public Subject {
 public:
  explicit EnvelopeSubject(EnvelopeConfig c) : c_(std::move(c)) {}
  Decision decide(const FeatureRecord& input) const override {
    return {envelope_route(c_, input).safety, "SAFETY"};
  }
  std::string describe() const override {
    return "envelope(safety " + c_.safety->name() + ", advisory " + c_.advisory->name() + ")";
  }

 private:
  EnvelopeConfig c_;
};

void require(const ClassifierPtr& c, const char* role) {
  if (!c) throw Error(ErrorCode::kConfig, std::string("missing classifier for ") + role);
}

}  // namespace

SubjectPtr make_subject(ClassifierPtr classifier) {
  require(classifier, "subject");
  return std::make_shared<ClassifierSubject>(std::move(classifier));
}

SubjectPtr make_subject(EnsembleConfig config) {
  if (config.members.empty()) throw Error(ErrorCode::kConfig, "ensemble needs at least one member");
  for (const auto& m : config.members) require(m, "ensemble member");
  return std::make_shared<EnsembleSubject>(std::move(config));
}

SubjectPtr make_subject(SimplexConfig config) {
  require(config.primary, "simplex primary");
  require(config.fallback, "simplex fallback");
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0))
    throw Error(ErrorCode::kConfig, "simplex threshold must be in [0,1]");
  return std::make_shared<SimplexSubject>(std::move(config));
}

SubjectPtr make_subject(GatedConfig config) {
  if (!config.spec) throw Error(ErrorCode::kConfig, "gated pattern needs a spec");
  require(config.ml, "gated ml");
  require_well_formed(*config.spec);
  return std::make_shared<GatedSubject>(std::move(config));
}

SubjectPtr make_subject(EnvelopeConfig config) {
  require(config.safety, "envelope safety");
  require(config.advisory, "envelope advisory");
  return std::make_shared<EnvelopeSubject>(std::move(config));
}

}  // namespace specguard
