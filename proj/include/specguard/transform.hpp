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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "specguard/record.hpp"
#include "specguard/speclang.hpp"

namespace specguard {

/// Moves grid content by (dx columns, dy rows). Cells shifted past the edge
/// are dropped; vacated cells take `fill`.
struct ShiftGrid {
  std::string field;
  int dx = 0;
  int dy = 0;
  double fill = 0.0;
};

/// Multiplies a number/integer field (or every cell of a grid) by `k`.
struct Scale {
  std::string field;
  double k = 1.0;
};

/// Adds `c` to a number/integer field (or every cell of a grid).
struct Offset {
  std::string field;
  double c = 0.0;
};

struct SetField {
  std::string field;
  FieldValue value;
};

/// Simultaneous assignment: every expression sees the original record.
struct FieldMap {
  std::vector<std::pair<std::string, Expression>> assignments;
};

/// An input transformation g : I -> I.
struct Transformation {
  std::string name;
  std::variant<ShiftGrid, Scale, Offset, SetField, FieldMap> kind;
};

/// An output transformation g' : O -> O; identity when `label_map` is empty.
struct OutputTransform {
  std::optional<std::map<std::string, std::string>> label_map;

  bool is_identity() const noexcept { return !label_map.has_value(); }
  /// Throws Error(kConfig) for a label outside the map.
  std::string apply(const std::string& label) const;
};

std::vector<std::string> validate(const Transformation& t, const Schema& schema);
std::vector<std::string> validate(const OutputTransform& t, const Schema& schema);

/// Returns a new record; the argument is never modified. Field-map
/// evaluation errors propagate as EvalError.
FeatureRecord apply_transformation(const Transformation& t, const FeatureRecord& input);

/// Applies g' to the label and keeps the confidence.
Prediction apply_output_transform(const OutputTransform& t, const Prediction& p);

}  // namespace specguard
