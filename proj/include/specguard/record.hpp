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

// Feature records, predictions and the schema they conform to.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace specguard {

/// Row-major 2-D array of numbers.
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cells;

  Grid() = default;
  Grid(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), cells(r * c, fill) {}

  double at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

using FieldValue = std::variant<double, bool, std::string, Grid>;

enum class FieldKind { kNumber, kInteger, kBoolean, kCategory, kGrid };

const char* to_string(FieldKind kind) noexcept;

struct FieldType {
  FieldKind kind = FieldKind::kNumber;
  std::vector<std::string> categories;  // kCategory only
  std::size_t rows = 0;                 // kGrid only
  std::size_t cols = 0;                 // kGrid only

  static FieldType number() { return {FieldKind::kNumber, {}, 0, 0}; }
  static FieldType integer() { return {FieldKind::kInteger, {}, 0, 0}; }
  static FieldType boolean() { return {FieldKind::kBoolean, {}, 0, 0}; }
  static FieldType category(std::vector<std::string> values) {
    return {FieldKind::kCategory, std::move(values), 0, 0};
  }
  static FieldType grid(std::size_t r, std::size_t c) {
    return {FieldKind::kGrid, {}, r, c};
  }

  friend bool operator==(const FieldType&, const FieldType&) = default;
};

struct FieldDecl {
  std::string name;
  FieldType type;
};

/// Declared input vocabulary plus the output label alphabet. Immutable once
/// constructed; the constructor throws `Error(kSchema)` on duplicate field
/// names, empty categories, zero grid dimensions or an empty alphabet.
class Schema {
 public:
  Schema(std::vector<FieldDecl> fields, std::vector<std::string> labels);

  const std::vector<FieldDecl>& fields() const noexcept { return fields_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  const FieldDecl* find(std::string_view name) const noexcept;
  bool has_label(std::string_view label) const noexcept;

 private:
  std::vector<FieldDecl> fields_;
  std::vector<std::string> labels_;
};

/// One classifier input. Field order is irrelevant; `id` is metadata and takes
/// no part in canonical keys.
struct FeatureRecord {
  std::optional<std::string> id;
  std::map<std::string, FieldValue, std::less<>> fields;

  const FieldValue* find(std::string_view name) const noexcept;

  friend bool operator==(const FeatureRecord&, const FeatureRecord&) = default;
};

struct Prediction {
  std::string label;
  std::optional<double> confidence;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Empty iff `record` conforms to `schema` (every declared field present with
/// the declared type, integers integral, categories and grid dims respected,
/// no undeclared fields).
std::vector<std::string> conformance_issues(const Schema& schema,
                                            const FeatureRecord& record);

/// Type/domain check of one value against its declaration.
std::optional<std::string> value_issue(const FieldDecl& decl, const FieldValue& value);

std::vector<std::string> prediction_issues(const Schema& schema,
                                           const Prediction& prediction);

/// Deterministic lookup key: fields sorted by name, numbers printed with 17
/// significant digits, negative zero folded to zero.
std::string canonical_key(const FeatureRecord& record);

/// Display form of a single value; numbers use the shortest round-trip form.
std::string render_value(const FieldValue& value);

std::string format_number(double value);

}  // namespace specguard
