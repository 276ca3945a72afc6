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

// Fault-tolerance wrappers around classifiers and an exhaustive simulation
// harness for measuring their effect on error rates.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specguard/classifier.hpp"
#include "specguard/json_io.hpp"
#include "specguard/monitor.hpp"
#include "specguard/spec.hpp"

namespace specguard {

// --- ensemble ---

enum class Fusion { kMajority, kConfidenceWeighted };

const char* to_string(Fusion f) noexcept;
Fusion parse_fusion(std::string_view text);

struct EnsembleConfig {
  std::vector<ClassifierPtr> members;
  Fusion fusion = Fusion::kMajority;
};

struct EnsembleResult {
  Prediction prediction;
  bool tie = false;
  std::vector<std::string> tied_labels;  // sorted; empty unless tie
  std::map<std::string, double> mass;    // votes or summed confidence per label
  std::vector<Prediction> votes;         // in member order
};

/// A lone member passes through verbatim. Otherwise the label with the
/// largest mass wins (ties: smallest label, flagged) and the fused confidence
/// is winning mass / total mass. Member failures raise Error(kPattern) naming
/// every failed member.
EnsembleResult ensemble_fuse(const EnsembleConfig& config, const FeatureRecord& input);

// --- simplex ---

struct SimplexConfig {
  ClassifierPtr primary;
  ClassifierPtr fallback;
  double threshold = 0.5;
};

enum class SimplexSource { kPrimary, kFallback };
const char* to_string(SimplexSource s) noexcept;

struct SimplexResult {
  Prediction prediction;
  SimplexSource source = SimplexSource::kPrimary;
  std::optional<Prediction> primary;  // absent when the primary failed
  std::string primary_error;
};

/// confidence >= threshold keeps the primary. A primary without confidence
/// is a configuration error (kConfig); a primary crash routes to the
/// fallback; a fallback failure is Error(kPattern).
SimplexResult simplex_decide(const SimplexConfig& config, const FeatureRecord& input);

// --- gated ---

struct GatedConfig {
  std::shared_ptr<const PartialSpec> spec;
  ClassifierPtr ml;
};

enum class GatedSource { kSpec, kMl };
enum class GateRule { kNone, kSufficient, kElimination };
const char* to_string(GatedSource s) noexcept;
const char* to_string(GateRule r) noexcept;

struct GatedResult {
  Prediction prediction;
  GatedSource source = GatedSource::kMl;
  GateRule rule = GateRule::kNone;
  std::vector<std::string> excluded;  // labels ruled out by necessary conditions
};

/// Inputs outside the precondition, or not decided by the spec, go to the ML
/// classifier. Two labels with satisfied sufficient conditions are a spec
/// defect reported as Error(kPattern).
GatedResult gated_classify(const GatedConfig& config, const FeatureRecord& input);

/// True iff the spec alone decides `input` (no ML consultation needed).
bool spec_decides(const PartialSpec& spec, const FeatureRecord& input);

// --- safety envelope ---

struct EnvelopeConfig {
  ClassifierPtr safety;
  ClassifierPtr advisory;
};

struct EnvelopeResult {
  Prediction safety;
  std::optional<Prediction> advisory;
  std::string advisory_error;  // non-empty when the advisory failed
};

EnvelopeResult envelope_route(const EnvelopeConfig& config, const FeatureRecord& input);

// --- data harvesting ---

class HarvestStore {
 public:
  struct Entry {
    TraceRecord record;
    std::string reason;
  };

  explicit HarvestStore(double threshold = 0.5);

  /// Stores the record iff its confidence is absent or below the threshold.
  bool harvest(const TraceRecord& record);

  double threshold() const noexcept { return threshold_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  double threshold_;
  std::vector<Entry> entries_;
};

// --- simulation ---

struct Decision {
  Prediction prediction;
  std::string source;  // e.g. PRIMARY, FALLBACK, SPEC, ML, ENSEMBLE, SAFETY, CLASSIFIER
};

/// Anything that maps an input to a decision: a bare classifier or a
/// pattern instance.
class Subject {
 public:
  virtual ~Subject() = default;
  virtual Decision decide(const FeatureRecord& input) const = 0;
  virtual std::string describe() const = 0;
};

using SubjectPtr = std::shared_ptr<const Subject>;

SubjectPtr make_subject(ClassifierPtr classifier);
SubjectPtr make_subject(EnsembleConfig config);
SubjectPtr make_subject(SimplexConfig config);
SubjectPtr make_subject(GatedConfig config);
SubjectPtr make_subject(EnvelopeConfig config);

struct Mismatch {
  std::size_t index = 0;
  std::string id;
  std::string expected;
  std::string actual;
  std::string source;
};

struct SourceStats {
  std::size_t decisions = 0;
  std::size_t mismatches = 0;
};

struct ErrorReport {
  std::string subject;
  std::string oracle;
  std::size_t domain_size = 0;
  std::size_t mismatch_count = 0;
  double error_rate = 0.0;
  std::vector<Mismatch> mismatches;
  std::map<std::string, SourceStats> per_source;
};

/// Subject failures count as mismatches with source "ERROR"; an oracle
/// failure aborts with Error(kClassifier).
ErrorReport simulate(std::span<const FeatureRecord> domain, const Classifier& oracle,
                     const Subject& subject);

Json to_json(const ErrorReport& report);
std::string render_text(const ErrorReport& report);

// --- harness files ---

struct Harness {
  std::string pattern;
  std::map<std::string, ClassifierPtr> classifiers;
  std::shared_ptr<const PartialSpec> spec;  // gated only
  SubjectPtr subject;
};

/// {"pattern": "simplex"|"gated"|"ensemble"|"envelope"|"classifier",
///  "classifiers": {name: classifier}, ...pattern fields by name}
Harness harness_from_json(const Json& j, const std::filesystem::path& base_dir);
Harness load_harness(const std::filesystem::path& path);

/// A domain is either JSON Lines of records ({"id","input"} or bare inputs)
/// or a JSON object {"enumerate": [axis, ...]} whose Cartesian product is
/// taken, each axis {"field", "values"} or {"field", "grid": [r, c],
/// "values"}.
std::vector<FeatureRecord> enumerate_domain(const Json& j);
std::vector<FeatureRecord> load_domain(const std::filesystem::path& path);

}  // namespace specguard
