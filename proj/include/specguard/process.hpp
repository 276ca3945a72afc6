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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specguard/json_io.hpp"

namespace specguard {

// ---------------------------------------------------------------- catalog

enum class Asil { kA, kB, kC, kD };
inline constexpr std::array<Asil, 4> kAllAsils{Asil::kA, Asil::kB, Asil::kC, Asil::kD};
const char* to_string(Asil a) noexcept;
Asil parse_asil(std::string_view s);  // "A".."D", case-insensitive; "ASIL-B" accepted

/// O/R/HR, written o/+/++ in method tables.
enum class Recommendation { kOptional, kRecommended, kHighlyRecommended };
const char* to_string(Recommendation r) noexcept;  // "o", "+", "++"
Recommendation parse_recommendation(std::string_view s);
int weight(Recommendation r) noexcept;  // 0, 1, 2

enum class MethodType { kBestPractice, kVerification, kTesting, kFaultTolerance };
const char* to_string(MethodType t) noexcept;
MethodType parse_method_type(std::string_view s);

enum class Category {
  kCodingGuidelines,
  kArchitectureNotations,
  kArchitectureDesign,
  kArchitectureErrorDetection,
  kArchitectureErrorHandling,
  kArchitectureVerification,
  kUnitDesignNotations,
  kUnitDesignImplementation,
  kUnitVerification,
  kUnitTesting,
  kUnitTestDerivation,
  kUnitTestCoverage,
  kIntegrationTesting,
  kIntegrationTestDerivation,
  kIntegrationTestCoverage,
  kSafetyRequirementsVerification,
};
inline constexpr std::size_t kCategoryCount = 16;
const char* to_string(Category c) noexcept;  // snake_case identifier
const char* display_name(Category c) noexcept;
Category parse_category(std::string_view s);
MethodType method_type_of(Category c) noexcept;
std::size_t census_size(Category c) noexcept;  // methods per category in the full catalog
inline constexpr std::size_t kFullCatalogSize = 83;

struct Method {
  std::string id;
  std::string name;
  Category category = Category::kCodingGuidelines;
  std::array<Recommendation, 4> recommendation{};  // indexed by Asil
  bool requires_specification = false;
  bool requires_interpretability = false;
  MethodType type = MethodType::kBestPractice;
  std::string note;

  Recommendation at(Asil a) const { return recommendation[static_cast<std::size_t>(a)]; }
};

/// Issues: duplicate ids, empty ids, type not matching the category.
std::vector<std::string> validate_catalog(std::span<const Method> catalog);

std::vector<Method> filter_by_type(std::span<const Method> catalog, MethodType type);

struct CensusRow {
  Category category;
  std::size_t expected;
  std::size_t actual;
};
std::vector<CensusRow> census(std::span<const Method> catalog);
bool is_full_catalog(std::span<const Method> catalog);

// ---------------------------------------------------------------- scoring

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept;
  std::string to_fraction() const;              // "3/5", "1"
  std::string to_decimal(int digits = 12) const;  // rounded half up, trailing zeros dropped

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, std::int64_t k);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

enum class ScoringCondition { kNoSpecification, kNoInterpretability };
const char* to_string(ScoringCondition c) noexcept;  // "NO_SPECIFICATION" ...
const char* cli_name(ScoringCondition c) noexcept;   // "no-spec", "no-interp"
ScoringCondition parse_condition(std::string_view s);
int condition_value(const Method& m, ScoringCondition c) noexcept;  // C(m)

/// Weighted fraction of recommended methods still usable under the condition.
/// Throws kConfig when no method is recommended for the ASIL.
Rational score(std::span<const Method> methods, ScoringCondition c, Asil a);

struct ImpactCell {
  ScoringCondition condition;
  MethodType type;
  std::array<Rational, 4> per_asil;
  Rational mean;
  double std_dev = 0.0;  // population
};

struct ImpactTable {
  std::vector<MethodType> types;
  std::vector<ImpactCell> cells;  // condition-major, then types
  const ImpactCell& at(ScoringCondition c, MethodType t) const;
};

ImpactTable impact_table(std::span<const Method> catalog,
                         std::vector<MethodType> types = {MethodType::kVerification,
                                                          MethodType::kTesting});
double population_std(std::span<const double> xs);

// ---------------------------------------------------------------- gate

struct GateQuestionnaire {
  std::optional<bool> completely_specifiable;
  std::optional<bool> splittable;
  std::optional<bool> strengthenable;
  std::optional<bool> strengthened_functionality_acceptable;
  std::string component;
  std::vector<std::pair<std::string, std::string>> rationale;  // question -> text
};

enum class GateVerdict { kUseProgramming, kSplitComponent, kStrengthenRequirement, kUseMlWithMeasures };
const char* to_string(GateVerdict v) noexcept;

struct GateDecision {
  GateVerdict verdict;
  std::string reason;
  GateQuestionnaire questionnaire;
};

/// Throws kConfig naming every unanswered question.
GateDecision gate_assess(const GateQuestionnaire& q);
GateVerdict gate_verdict(bool completely_specifiable, bool splittable, bool strengthenable,
                         bool acceptable) noexcept;

// ---------------------------------------------------------------- diagnosis

enum class Phase { kInitiation, kRequirements, kArchitecture, kUnitDesign, kTesting, kVerification };
const char* to_string(Phase p) noexcept;  // "initiation", "requirements", ...
Phase parse_phase(std::string_view s);    // kConfig listing valid phases

struct DiagnosisGroup {
  std::string requirement;  // e.g. "MLDS1-3"
  Phase phase;
  std::string topic;
  std::vector<std::string> questions;
};

/// The 13 groups in canonical workflow order.
const std::vector<DiagnosisGroup>& diagnosis_groups();

struct FailureRecord {
  std::optional<std::string> phase;
  std::string description;
  std::vector<std::string> record_ids;
};

struct DiagnosisPlan {
  FailureRecord failure;
  std::vector<DiagnosisGroup> groups;
};

DiagnosisPlan diagnose(const FailureRecord& failure);

// ---------------------------------------------------------------- safety case

enum class NodeKind { kHazard, kSafetyGoal, kRequirement, kEvidence };
const char* to_string(NodeKind k) noexcept;
NodeKind parse_node_kind(std::string_view s);

enum class EdgeKind { kMitigates, kRefines, kSupports };
const char* to_string(EdgeKind k) noexcept;
EdgeKind parse_edge_kind(std::string_view s);

struct SafetyNode {
  std::string id;
  NodeKind kind = NodeKind::kHazard;
  std::optional<Asil> asil;
  std::string subkind;   // requirement: partial_spec | dataset_requirements; evidence: *_report | document
  std::optional<std::string> artifact;
  std::string description;
};

struct SafetyEdge {
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::kMitigates;
};

struct SafetyCaseGraph {
  std::vector<SafetyNode> nodes;
  std::vector<SafetyEdge> edges;
};

/// Structural issues: duplicate ids, dangling endpoints, ill-typed edges, bad subkinds.
std::vector<std::string> validate(const SafetyCaseGraph& g);

enum class GapKind { kMissingGoal, kMissingRequirement, kMissingEvidence, kMissingArtifact, kAsilMismatch };
const char* to_string(GapKind k) noexcept;

struct Gap {
  GapKind kind;
  std::string node;
  std::string detail;
  friend auto operator<=>(const Gap&, const Gap&) = default;
};

struct GapReport {
  std::vector<Gap> gaps;  // sorted by (kind, node, detail)
  bool ok() const noexcept { return gaps.empty(); }
};

struct TraceOptions {
  std::filesystem::path artifact_root;  // relative artifact paths resolve here
  bool check_artifacts = true;
};

/// Throws kSpec on structural issues and on a refinement cycle.
GapReport trace_check(const SafetyCaseGraph& g, const TraceOptions& opts = {});

// ---------------------------------------------------------------- JSON

Method method_from_json(const Json& j, std::string_view where);
Json to_json(const Method& m);
std::vector<Method> catalog_from_json(const Json& j);  // array, or {"methods": [...]}
std::vector<Method> load_catalog(const std::filesystem::path& path);

Json to_json(const Rational& r);
Json to_json(const ImpactTable& t);
std::string render_text(const ImpactTable& t);  // two-decimal grid
Json to_json(std::span<const CensusRow> rows);

GateQuestionnaire questionnaire_from_json(const Json& j);
Json to_json(const GateDecision& d);
std::string render_text(const GateDecision& d);

FailureRecord failure_from_json(const Json& j);
Json to_json(const DiagnosisPlan& p);
std::string render_text(const DiagnosisPlan& p);

SafetyCaseGraph graph_from_json(const Json& j);
Json to_json(const SafetyCaseGraph& g);
Json to_json(const GapReport& r);
std::string render_text(const GapReport& r);

}  // namespace specguard
