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

// Labelled data sets: coverage requirements, boundary analysis, augmentation
// through declared transformations, uncertainty categorisation and
// reproducible splits.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specguard/json_io.hpp"
#include "specguard/record.hpp"
#include "specguard/spec.hpp"

namespace specguard {

struct Provenance {
  bool augmented = false;
  std::string transform;  // augmented only
  std::string source_id;  // augmented only

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// The record id lives in `input.id`.
struct LabeledRecord {
  FeatureRecord input;
  std::string label;
  Provenance provenance;

  friend bool operator==(const LabeledRecord&, const LabeledRecord&) = default;
};

/// `input.id` when present, otherwise "#<index>".
std::string record_id(const LabeledRecord& r, std::size_t index);

struct Partition {
  std::string name;
  Condition predicate;
  int risk_weight = 1;
};

struct Partitioning {
  std::string name;
  std::vector<Partition> partitions;
};

struct DataSetRequirements {
  std::vector<Partitioning> partitionings;
  std::size_t base_min_samples = 1;
  double risk_multiplier = 1.0;
  /// Cells known to be empty by construction, one partition name per
  /// partitioning in declaration order.
  std::vector<std::vector<std::string>> infeasible_cells;
};

/// Structural checks; with a schema, predicates must also typecheck
/// input-only to boolean.
std::vector<std::string> validate(const DataSetRequirements& reqs, const Schema* schema = nullptr);
std::vector<std::string> validate(const Partitioning& p, const Schema* schema = nullptr);

/// ceil(base * multiplier^(risk - 1)).
std::size_t required_samples(const DataSetRequirements& reqs, int risk);

// --- coverage ---

enum class CellStatus { kMet, kUnderfilled, kUnwitnessed };
const char* to_string(CellStatus s) noexcept;

struct CellReport {
  std::vector<std::string> partitions;  // one per partitioning
  int risk = 1;
  std::size_t required = 0;
  std::size_t count = 0;
  bool marked_infeasible = false;
  CellStatus status = CellStatus::kUnderfilled;
};

struct RecordIssue {
  std::string id;
  std::string message;
};

struct PartitioningReport {
  std::string name;
  std::map<std::string, std::size_t> partition_counts;
  std::vector<std::string> cover_failures;  // record ids matching no partition
  std::vector<std::pair<std::string, std::vector<std::string>>> overlaps;
};

struct MembershipRow {
  std::string id;
  std::vector<std::vector<std::string>> matches;  // per partitioning
};

struct CoverageReport {
  std::vector<PartitioningReport> partitionings;
  std::vector<MembershipRow> membership;
  std::vector<CellReport> cells;
  std::size_t records_total = 0;
  std::size_t records_counted = 0;  // without cover failures or errors
  std::size_t cells_total = 0;
  std::size_t cells_feasible = 0;   // cells_total minus unwitnessed
  std::size_t cells_met = 0;
  double cell_coverage = 1.0;       // cells_met / cells_feasible
  std::vector<RecordIssue> errors;
  std::vector<std::string> notices;
  bool pass = true;
};

CoverageReport coverage_report(std::span<const LabeledRecord> data,
                               const DataSetRequirements& reqs);

// --- boundary values ---

struct BoundaryCase {
  std::string id;
  std::string partition;
  std::string field;
  double threshold = 0;
  double distance = 0;
};

struct BoundaryReport {
  std::vector<BoundaryCase> cases;
  std::vector<std::string> skipped;  // notices for non-comparison predicates
  std::vector<RecordIssue> errors;
};

BoundaryReport boundary_cases(const Partitioning& partitioning,
                              std::span<const LabeledRecord> data, double epsilon);

// --- augmentation ---

struct AugmentIssue {
  std::string source_id;
  std::string transform;
  std::string message;
};

struct AugmentResult {
  std::vector<LabeledRecord> records;  // originals first
  std::size_t originals = 0;
  std::size_t added = 0;
  std::size_t duplicates = 0;
  std::vector<AugmentIssue> errors;
};

/// Applies every invariant and equivariant of `spec` to each collected
/// record; outputs are deduplicated by canonical input key.
AugmentResult augment(std::span<const LabeledRecord> data, const PartialSpec& spec);

// --- known / unknown categorisation ---

enum class UncertaintyCategory { kKnown, kKnownUnknown, kUnknownUnknown };
const char* to_string(UncertaintyCategory c) noexcept;

inline constexpr std::size_t kMaxUncertaintyDepth = 4;

struct ProbeResult {
  std::string id;
  UncertaintyCategory category = UncertaintyCategory::kUnknownUnknown;
  std::size_t depth = 0;
  std::vector<std::string> path;  // transform names, source first
  std::string source_id;
  std::optional<std::string> derived_label;
};

struct UncertaintyReport {
  std::vector<ProbeResult> probes;
  std::array<std::size_t, 3> counts{};  // indexed by UncertaintyCategory
  std::size_t max_depth = 0;
  std::size_t explored = 0;             // distinct inputs reached
  std::size_t pruned = 0;               // transform applications that failed

  double fraction(UncertaintyCategory c) const;
};

/// Breadth-first closure from the known inputs; each step applies one
/// transformation and maps the label through its output transform.
UncertaintyReport categorize_uncertainty(std::span<const LabeledRecord> known,
                                         std::span<const FeatureRecord> probes,
                                         std::span<const Equivariant> steps,
                                         std::size_t max_depth);

UncertaintyReport categorize_uncertainty(std::span<const LabeledRecord> known,
                                         std::span<const FeatureRecord> probes,
                                         std::span<const Transformation> transforms,
                                         std::size_t max_depth);

// --- splits ---

struct SplitSpec {
  std::array<double, 3> ratios{0.6, 0.2, 0.2};  // train, validation, test
  std::uint64_t seed = 0;
  std::optional<Partitioning> stratify_by;
};

void validate(const SplitSpec& spec);  // throws Error(kConfig)

/// Largest-remainder apportionment of n over the ratios; ties go to train,
/// then validation, then test.
std::array<std::size_t, 3> apportion(std::size_t n, const std::array<double, 3>& ratios);

struct StratumReport {
  std::string name;
  std::size_t size = 0;
  std::array<std::size_t, 3> counts{};
};

struct SplitResult {
  std::array<std::vector<LabeledRecord>, 3> parts;
  std::vector<StratumReport> strata;
  std::vector<std::string> notices;

  const std::vector<LabeledRecord>& train() const { return parts[0]; }
  const std::vector<LabeledRecord>& validation() const { return parts[1]; }
  const std::vector<LabeledRecord>& test() const { return parts[2]; }
};

SplitResult split(std::span<const LabeledRecord> data, const SplitSpec& spec);

// --- compliance ---

struct LabelConflict {
  std::string id;
  std::string label;
  std::string kind;       // SUFFICIENT or NECESSARY
  std::string condition_label;
  std::size_t index = 0;
  std::string condition;
};

struct ComplianceReport {
  CoverageReport coverage;
  std::vector<RecordIssue> schema_failures;
  std::vector<LabelConflict> label_failures;
  std::vector<RecordIssue> errors;
  std::size_t records = 0;
  bool pass = true;
};

ComplianceReport verify_dataset(std::span<const LabeledRecord> data,
                                const DataSetRequirements& reqs, const PartialSpec& spec);

// --- JSON ---

LabeledRecord labeled_record_from_json(const Json& j, std::string_view where);
Json to_json(const LabeledRecord& r);
std::vector<LabeledRecord> load_dataset(const std::filesystem::path& path);
std::string dump_dataset(std::span<const LabeledRecord> data);  // JSON Lines

Partitioning partitioning_from_json(const Json& j, std::string_view where);
Json to_json(const Partitioning& p);
DataSetRequirements requirements_from_json(const Json& j);
Json to_json(const DataSetRequirements& r);

Json to_json(const CoverageReport& r);
Json to_json(const BoundaryReport& r);
Json to_json(const AugmentResult& r, bool include_records);
Json to_json(const UncertaintyReport& r);
Json to_json(const SplitResult& r, bool include_records);
Json to_json(const ComplianceReport& r);

std::string render_text(const CoverageReport& r);
std::string render_text(const SplitResult& r);
std::string render_text(const UncertaintyReport& r);
std::string render_text(const ComplianceReport& r);

}  // namespace specguard
