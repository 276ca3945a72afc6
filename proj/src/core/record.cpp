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

#include "specguard/record.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "specguard/error.hpp"

namespace specguard {

const char* to_string(FieldKind kind) noexcept {
  switch (kind) {
    case FieldKind::kNumber: return "number";
    case FieldKind::kInteger: return "integer";
    case FieldKind::kBoolean: return "boolean";
    case FieldKind::kCategory: return "category";
    case FieldKind::kGrid: return "grid";
  }
  return "unknown";
}

Schema::Schema(std::vector<FieldDecl> fields, std::vector<std::string> labels)
    : fields_(std::move(fields)), labels_(std::move(labels)) {
  std::vector<std::string> problems;
  std::set<std::string, std::less<>> seen;
  for (const auto& f : fields_) {
    if (f.name.empty()) problems.push_back("field with empty name");
    if (!seen.insert(f.name).second)
      problems.push_back("duplicate field '" + f.name + "'");
    if (f.type.kind == FieldKind::kGrid && (f.type.rows < 1 || f.type.cols < 1))
      problems.push_back("grid field '" + f.name + "' needs rows and cols >= 1");
    if (f.type.kind == FieldKind::kCategory && f.type.categories.empty())
      problems.push_back("category field '" + f.name + "' has no values");
  }
  if (labels_.empty()) problems.push_back("label alphabet is empty");
  std::set<std::string, std::less<>> label_set;
  for (const auto& l : labels_)
    if (!label_set.insert(l).second)
      problems.push_back("duplicate label '" + l + "'");
  if (!problems.empty())
    throw Error(ErrorCode::kSchema, "invalid schema", std::move(problems));
}

const FieldDecl* Schema::find(std::string_view name) const noexcept {
  for (const auto& f : fields_)
    if (f.name == name) return &f;
  return nullptr;
}

bool Schema::has_label(std::string_view label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

const FieldValue* FeatureRecord::find(std::string_view name) const noexcept {
  auto it = fields.find(name);
  return it == fields.end() ? nullptr : &it->second;
}

std::optional<std::string> value_issue(const FieldDecl& decl, const FieldValue& v) {
  const std::string where = "field '" + decl.name + "'";
  switch (decl.type.kind) {
    case FieldKind::kNumber:
      if (!std::holds_alternative<double>(v)) return where + " must be a number";
      if (!std::isfinite(std::get<double>(v))) return where + " must be finite";
      return std::nullopt;
    case FieldKind::kInteger: {
      if (!std::holds_alternative<double>(v)) return where + " must be an integer";
      double x = std::get<double>(v);
      if (!std::isfinite(x) || std::trunc(x) != x) return where + " must be an integer";
      return std::nullopt;
    }
    case FieldKind::kBoolean:
      if (!std::holds_alternative<bool>(v)) return where + " must be a boolean";
      return std::nullopt;
    case FieldKind::kCategory: {
      const auto* s = std::get_if<std::string>(&v);
      if (s == nullptr) return where + " must be a string";
      if (std::find(decl.type.categories.begin(), decl.type.categories.end(), *s) ==
          decl.type.categories.end())
        return where + " value \"" + *s + "\" is not an allowed category";
      return std::nullopt;
    }
    case FieldKind::kGrid: {
      const auto* g = std::get_if<Grid>(&v);
      if (g == nullptr) return where + " must be a grid";
      if (g->rows != decl.type.rows || g->cols != decl.type.cols ||
          g->cells.size() != g->rows * g->cols)
        return where + " must be " + std::to_string(decl.type.rows) + "x" +
               std::to_string(decl.type.cols);
      if (!std::all_of(g->cells.begin(), g->cells.end(),
                       [](double c) { return std::isfinite(c); }))
        return where + " cells must be finite";
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<std::string> conformance_issues(const Schema& schema,
                                            const FeatureRecord& record) {
  std::vector<std::string> issues;
  for (const auto& decl : schema.fields()) {
    const FieldValue* v = record.find(decl.name);
    if (v == nullptr) {
      issues.push_back("missing field '" + decl.name + "'");
    } else if (auto issue = value_issue(decl, *v)) {
      issues.push_back(std::move(*issue));
    }
  }
  for (const auto& [name, value] : record.fields)
    if (schema.find(name) == nullptr)
      issues.push_back("undeclared field '" + name + "'");
  return issues;
}

std::vector<std::string> prediction_issues(const Schema& schema,
                                           const Prediction& prediction) {
  std::vector<std::string> issues;
  if (!schema.has_label(prediction.label))
    issues.push_back("label \"" + prediction.label + "\" is not in the alphabet");
  if (prediction.confidence) {
    double c = *prediction.confidence;
    if (!(c >= 0.0 && c <= 1.0))
      issues.push_back("confidence " + format_number(c) + " outside [0,1]");
  }
  return issues;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // folds -0
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string key_number(double value) {
  if (value == 0.0) value = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void append_quoted(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

template <std::string (*Num)(double)>
std::string render_with(const FieldValue& value) {
  std::string out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          out = Num(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          out = v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          append_quoted(out, v);
        } else {
          out.push_back('[');
          for (std::size_t r = 0; r < v.rows; ++r) {
            if (r) out.push_back(',');
            out.push_back('[');
            for (std::size_t c = 0; c < v.cols; ++c) {
              if (c) out.push_back(',');
              out += Num(v.at(r, c));
            }
            out.push_back(']');
          }
          out.push_back(']');
        }
      },
      value);
  return out;
}

}  // namespace

std::string render_value(const FieldValue& value) { return render_with<format_number>(value); }

std::string canonical_key(const FeatureRecord& record) {
  // std::map iteration is already sorted by field name.
  std::string key = "{";
  bool first = true;
  for (const auto& [name, value] : record.fields) {
    if (!first) key.push_back(',');
    first = false;
    append_quoted(key, name);
    key.push_back(':');
    key += render_with<key_number>(value);
  }
  key.push_back('}');
  return key;
}

}  // namespace specguard
