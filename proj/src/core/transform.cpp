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

#include "specguard/transform.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "specguard/error.hpp"

namespace specguard {
namespace {

bool is_numeric(FieldKind k) { return k == FieldKind::kNumber || k == FieldKind::kInteger; }

bool integral(double x) { return std::isfinite(x) && std::trunc(x) == x; }

ValueType expected_value_type(FieldKind k) {
  switch (k) {
    case FieldKind::kBoolean: return ValueType::kBoolean;
    case FieldKind::kCategory: return ValueType::kString;
    case FieldKind::kGrid: return ValueType::kGrid;
    default: return ValueType::kNumber;
  }
}

// Applies `op` to a numeric field in place, or to each cell of a grid.
template <typename Op>
void map_numeric(FeatureRecord& r, const std::string& field, Op op) {
  auto it = r.fields.find(field);
  if (it == r.fields.end())
    throw EvalError(EvalErrorKind::kMissingField, "missing field: input." + field);
  if (auto* d = std::get_if<double>(&it->second)) {
    *d = op(*d);
  } else if (auto* g = std::get_if<Grid>(&it->second)) {
    for (double& c : g->cells) c = op(c);
  } else {
    throw EvalError(EvalErrorKind::kTypeMismatch, "input." + field + " is not numeric");
  }
}

}  // namespace

std::string OutputTransform::apply(const std::string& label) const {
  if (!label_map) return label;
  auto it = label_map->find(label);
  if (it == label_map->end())
    throw Error(ErrorCode::kConfig, "label_map has no entry for \"" + label + "\"");
  return it->second;
}

std::vector<std::string> validate(const Transformation& t, const Schema& schema) {
  std::vector<std::string> issues;
  const std::string who = "transformation '" + t.name + "': ";
  auto lookup = [&](const std::string& field) -> const FieldDecl* {
    const FieldDecl* d = schema.find(field);
    if (d == nullptr) issues.push_back(who + "field '" + field + "' is not declared");
    return d;
  };
  if (t.name.empty()) issues.push_back("transformation without a name");
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ShiftGrid>) {
          if (const FieldDecl* d = lookup(k.field); d && d->type.kind != FieldKind::kGrid)
            issues.push_back(who + "shift_grid needs a grid field, '" + k.field + "' is " +
                             to_string(d->type.kind));
          if (!std::isfinite(k.fill)) issues.push_back(who + "fill must be finite");
        } else if constexpr (std::is_same_v<T, Scale> || std::is_same_v<T, Offset>) {
          double amount;
          if constexpr (std::is_same_v<T, Scale>) amount = k.k; else amount = k.c;
          const char* op = std::is_same_v<T, Scale> ? "scale" : "add";
          if (const FieldDecl* d = lookup(k.field)) {
            if (!is_numeric(d->type.kind) && d->type.kind != FieldKind::kGrid)
              issues.push_back(who + op + " needs a numeric or grid field");
            if (d->type.kind == FieldKind::kInteger && !integral(amount))
              issues.push_back(who + op + " on integer field '" + k.field +
                               "' needs an integral amount");
          }
          if (!std::isfinite(amount)) issues.push_back(who + op + " amount must be finite");
        } else if constexpr (std::is_same_v<T, SetField>) {
          if (const FieldDecl* d = lookup(k.field))
            if (auto issue = value_issue(*d, k.value)) issues.push_back(who + "set: " + *issue);
        } else {
          std::set<std::string> seen;
          for (const auto& [field, expr] : k.assignments) {
            if (!seen.insert(field).second)
              issues.push_back(who + "field '" + field + "' assigned twice");
            const FieldDecl* d = lookup(field);
            TypeCheckResult tc = typecheck(expr, schema, /*output_allowed=*/false);
            for (auto& e : tc.errors) issues.push_back(who + field + ": " + e);
            if (d && tc.type) {
              const auto* path = std::get_if<InputPath>(&expr.node().v);
              const FieldDecl* src = path && !path->cell ? lookup(path->field) : nullptr;
              if (d->type.kind == FieldKind::kGrid) {
                if (!src || src->type != d->type)
                  issues.push_back(who + "field_map can only copy a grid of the same shape into '" +
                                   field + "'");
              } else if (*tc.type != expected_value_type(d->type.kind))
                issues.push_back(who + "field_map for '" + field + "' yields " +
                                 to_string(*tc.type) + " but the field is " +
                                 to_string(d->type.kind));
            }
          }
          if (k.assignments.empty()) issues.push_back(who + "field_map is empty");
        }
      },
      t.kind);
  return issues;
}

std::vector<std::string> validate(const OutputTransform& t, const Schema& schema) {
  std::vector<std::string> issues;
  if (!t.label_map) return issues;
  for (const auto& label : schema.labels())
    if (!t.label_map->count(label))
      issues.push_back("label_map is not total: no entry for \"" + label + "\"");
  for (const auto& [from, to] : *t.label_map) {
    if (!schema.has_label(from))
      issues.push_back("label_map key \"" + from + "\" is not in the alphabet");
    if (!schema.has_label(to))
      issues.push_back("label_map value \"" + to + "\" is not in the alphabet");
  }
  return issues;
}

FeatureRecord apply_transformation(const Transformation& t, const FeatureRecord& input) {
  FeatureRecord out = input;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ShiftGrid>) {
          auto it = out.fields.find(k.field);
          if (it == out.fields.end())
            throw EvalError(EvalErrorKind::kMissingField, "missing field: input." + k.field);
          const auto* src = std::get_if<Grid>(&it->second);
          if (src == nullptr)
            throw EvalError(EvalErrorKind::kTypeMismatch, "input." + k.field + " is not a grid");
          Grid shifted(src->rows, src->cols, k.fill);
          const auto rows = static_cast<long long>(src->rows);
          const auto cols = static_cast<long long>(src->cols);
          for (long long r = 0; r < rows; ++r) {
            for (long long c = 0; c < cols; ++c) {
              const long long nr = r + k.dy, nc = c + k.dx;
              if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
              shifted.at(static_cast<std::size_t>(nr), static_cast<std::size_t>(nc)) =
                  src->at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
            }
          }
          it->second = std::move(shifted);
        } else if constexpr (std::is_same_v<T, Scale>) {
          map_numeric(out, k.field, [&](double x) { return x * k.k; });
        } else if constexpr (std::is_same_v<T, Offset>) {
          map_numeric(out, k.field, [&](double x) { return x + k.c; });
        } else if constexpr (std::is_same_v<T, SetField>) {
          out.fields.insert_or_assign(k.field, k.value);
        } else {
          EvalContext ctx{input, nullptr};
          std::vector<std::pair<std::string, FieldValue>> results;
          results.reserve(k.assignments.size());
          for (const auto& [field, expr] : k.assignments) {
            const auto* path = std::get_if<InputPath>(&expr.node().v);
            const FieldValue* src = path && !path->cell ? input.find(path->field) : nullptr;
            if (src && std::holds_alternative<Grid>(*src)) {
              results.emplace_back(field, *src);
              continue;
            }
            results.emplace_back(field, std::visit([](auto&& v) -> FieldValue { return v; },
                                                   evaluate(expr, ctx)));
          }
          for (auto& [field, value] : results) out.fields.insert_or_assign(field, std::move(value));
        }
      },
      t.kind);
  return out;
}

Prediction apply_output_transform(const OutputTransform& t, const Prediction& p) {
  return Prediction{t.apply(p.label), p.confidence};
}

}  // namespace specguard
