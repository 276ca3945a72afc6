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

#include "specguard/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specguard/error.hpp"

namespace specguard {
namespace {

std::string join(std::string_view where, std::string_view key) {
  std::string out(where);
  out += '/';
  out += key;
  return out;
}

std::string join(std::string_view where, std::size_t index) {
  return join(where, std::to_string(index));
}

[[noreturn]] void format_error(std::string_view where, const std::string& what) {
  throw Error(ErrorCode::kFormat, std::string(where.empty() ? "/" : where) + ": " + what);
}

const char* type_name(const Json& j) { return j.type_name(); }

Condition condition_from_json(const Json& j, std::string_view where) {
  std::string text = get_string(j, where);
  try {
    return Condition(text);
  } catch (const SyntaxError& e) {
    throw Error(ErrorCode::kSyntax, std::string(where) + ": " + e.what());
  }
}

Expression expression_from_json(const Json& j, std::string_view where) {
  return condition_from_json(j, where).expr;
}

ConditionMap condition_map_from_json(const Json& j, std::string_view where) {
  ConditionMap out;
  if (!j.is_object()) format_error(where, "expected an object of label -> [conditions]");
  for (const auto& [label, list] : j.items()) {
    const std::string at = join(where, label);
    auto& conditions = out[label];
    if (list.is_string()) {
      conditions.push_back(condition_from_json(list, at));
      continue;
    }
    if (!list.is_array()) format_error(at, "expected a condition string or an array of them");
    for (std::size_t i = 0; i < list.size(); ++i)
      conditions.push_back(condition_from_json(list[i], join(at, i)));
  }
  return out;
}

Json condition_map_to_json(const ConditionMap& m) {
  Json out = Json::object();
  for (const auto& [label, conditions] : m) {
    Json list = Json::array();
    for (const auto& c : conditions) list.push_back(c.text);
    out[label] = std::move(list);
  }
  return out;
}

FieldType field_type_from_json(const Json& j, std::string_view where) {
  std::string kind;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else {
    expect_object(j, where, {"name", "type", "values", "rows", "cols"});
    kind = get_string(require_key(j, "type", where), join(where, "type"));
  }
  if (kind == "number") return FieldType::number();
  if (kind == "integer") return FieldType::integer();
  if (kind == "boolean") return FieldType::boolean();
  if (kind == "category") {
    if (!j.is_object()) format_error(where, "category type needs \"values\"");
    const Json& values = require_key(j, "values", where);
    if (!values.is_array()) format_error(join(where, "values"), "expected an array of strings");
    std::vector<std::string> cats;
    for (std::size_t i = 0; i < values.size(); ++i)
      cats.push_back(get_string(values[i], join(join(where, "values"), i)));
    return FieldType::category(std::move(cats));
  }
  if (kind == "grid") {
    if (!j.is_object()) format_error(where, "grid type needs \"rows\" and \"cols\"");
    long long r = get_integer(require_key(j, "rows", where), join(where, "rows"));
    long long c = get_integer(require_key(j, "cols", where), join(where, "cols"));
    if (r < 0 || c < 0) format_error(where, "grid dimensions must be non-negative");
    return FieldType::grid(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  }
  format_error(where, "unknown field type \"" + kind +
                          "\" (expected number, integer, boolean, category or grid)");
}

Json field_type_to_json(const FieldType& t) {
  switch (t.kind) {
    case FieldKind::kNumber: return "number";
    case FieldKind::kInteger: return "integer";
    case FieldKind::kBoolean: return "boolean";
    case FieldKind::kCategory: return Json{{"type", "category"}, {"values", t.categories}};
    case FieldKind::kGrid: return Json{{"type", "grid"}, {"rows", t.rows}, {"cols", t.cols}};
  }
  return nullptr;
}

ProbConstraint prob_from_json(const Json& j, std::string_view where) {
  expect_object(j, where,
                {"field", "kind", "lo", "hi", "max_violation_fraction", "expected", "tolerance"});
  ProbConstraint pc;
  pc.field = get_string(require_key(j, "field", where), join(where, "field"));
  std::string kind = get_string(require_key(j, "kind", where), join(where, "kind"));
  auto num = [&](std::string_view key) {
    return get_number(require_key(j, key, where), join(where, key));
  };
  if (kind == "range") {
    RangeConstraint r;
    r.lo = num("lo");
    r.hi = num("hi");
    r.max_violation_fraction = j.contains("max_violation_fraction") ? num("max_violation_fraction") : 0.0;
    pc.kind = r;
  } else if (kind == "mean") {
    pc.kind = MeanConstraint{num("expected"), num("tolerance")};
  } else {
    format_error(join(where, "kind"), "unknown probabilistic constraint \"" + kind +
                                          "\" (expected range or mean)");
  }
  return pc;
}

Json prob_to_json(const ProbConstraint& pc) {
  if (const auto* r = std::get_if<RangeConstraint>(&pc.kind))
    return Json{{"field", pc.field}, {"kind", "range"}, {"lo", r->lo}, {"hi", r->hi},
                {"max_violation_fraction", r->max_violation_fraction}};
  const auto& m = std::get<MeanConstraint>(pc.kind);
  return Json{{"field", pc.field}, {"kind", "mean"}, {"expected", m.expected},
              {"tolerance", m.tolerance}};
}

std::optional<double> optional_confidence(const Json& j, std::string_view where) {
  auto it = j.find("confidence");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return get_number(*it, join(where, "confidence"));
}

}  // namespace

void expect_object(const Json& j, std::string_view where,
                   std::initializer_list<std::string_view> allowed) {
  if (!j.is_object())
    format_error(where, std::string("expected an object, got ") + type_name(j));
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string msg = "unknown key \"" + key + "\" (allowed:";
      for (auto a : allowed) {
        msg += ' ';
        msg += a;
      }
      format_error(where, msg + ")");
    }
  }
}

const Json& require_key(const Json& j, std::string_view key, std::string_view where) {
  if (!j.is_object()) format_error(where, std::string("expected an object, got ") + type_name(j));
  auto it = j.find(std::string(key));
  if (it == j.end()) format_error(where, "missing required key \"" + std::string(key) + "\"");
  return *it;
}

std::string get_string(const Json& j, std::string_view where) {
  if (!j.is_string()) format_error(where, std::string("expected a string, got ") + type_name(j));
  return j.get<std::string>();
}

double get_number(const Json& j, std::string_view where) {
  if (!j.is_number()) format_error(where, std::string("expected a number, got ") + type_name(j));
  return j.get<double>();
}

long long get_integer(const Json& j, std::string_view where) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    double d = j.get<double>();
    if (std::trunc(d) == d && std::abs(d) < 9.0e15) return static_cast<long long>(d);
  }
  format_error(where, std::string("expected an integer, got ") + type_name(j));
}

bool get_bool(const Json& j, std::string_view where) {
  if (!j.is_boolean()) format_error(where, std::string("expected a boolean, got ") + type_name(j));
  return j.get<bool>();
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<JsonLine> parse_jsonl(std::string_view text) {
  std::vector<JsonLine> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    JsonLine jl;
    jl.line = line_no;
    try {
      jl.value = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      jl.error = e.what();
    }
    out.push_back(std::move(jl));
  }
  return out;
}

std::vector<JsonLine> read_jsonl_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_jsonl(buf.str());
}

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

Schema schema_from_json(const Json& j) {
  const std::string where = "/schema";
  expect_object(j, where, {"fields", "labels"});
  std::vector<FieldDecl> fields;
  const Json& fj = require_key(j, "fields", where);
  if (fj.is_object()) {
    for (const auto& [name, type] : fj.items())
      fields.push_back({name, field_type_from_json(type, join(join(where, "fields"), name))});
  } else if (fj.is_array()) {
    for (std::size_t i = 0; i < fj.size(); ++i) {
      const std::string at = join(join(where, "fields"), i);
      std::string name = get_string(require_key(fj[i], "name", at), join(at, "name"));
      fields.push_back({name, field_type_from_json(fj[i], at)});
    }
  } else {
    format_error(join(where, "fields"), "expected an object or array of field declarations");
  }
  const Json& lj = require_key(j, "labels", where);
  if (!lj.is_array()) format_error(join(where, "labels"), "expected an array of strings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < lj.size(); ++i)
    labels.push_back(get_string(lj[i], join(join(where, "labels"), i)));
  return Schema(std::move(fields), std::move(labels));
}

Json to_json(const Schema& schema) {
  Json fields = Json::array();
  for (const auto& f : schema.fields()) {
    Json t = field_type_to_json(f.type);
    Json decl = {{"name", f.name}};
    if (t.is_string()) {
      decl["type"] = t;
    } else {
      for (auto& [k, v] : t.items()) decl[k] = v;
    }
    fields.push_back(std::move(decl));
  }
  return Json{{"fields", std::move(fields)}, {"labels", schema.labels()}};
}

FieldValue value_from_json(const Json& j, std::string_view where) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    if (j.empty()) format_error(where, "grid must have at least one row");
    Grid g;
    g.rows = j.size();
    for (std::size_t r = 0; r < j.size(); ++r) {
      const Json& row = j[r];
      if (!row.is_array()) format_error(join(where, r), "grid rows must be arrays of numbers");
      if (r == 0) {
        if (row.empty()) format_error(join(where, r), "grid must have at least one column");
        g.cols = row.size();
      } else if (row.size() != g.cols) {
        format_error(join(where, r), "ragged grid: expected " + std::to_string(g.cols) +
                                         " columns, got " + std::to_string(row.size()));
      }
      for (std::size_t c = 0; c < row.size(); ++c)
        g.cells.push_back(get_number(row[c], join(join(where, r), c)));
    }
    return g;
  }
  format_error(where, std::string("unsupported value type ") + type_name(j));
}

Json to_json(const FieldValue& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Grid>) {
          Json rows = Json::array();
          for (std::size_t r = 0; r < x.rows; ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < x.cols; ++c) row.push_back(x.at(r, c));
            rows.push_back(std::move(row));
          }
          return rows;
        } else if constexpr (std::is_same_v<T, double>) {
          // Integral values print without a fraction; -0 folds to 0.
          if (x == 0.0) return 0;
          if (std::trunc(x) == x && std::abs(x) < 9.0e15) return static_cast<long long>(x);
          return x;
        } else {
          return x;
        }
      },
      v);
}

FeatureRecord record_from_json(const Json& fields, std::string_view where) {
  if (!fields.is_object())
    format_error(where, std::string("record must be an object, got ") + type_name(fields));
  FeatureRecord r;
  for (const auto& [name, value] : fields.items())
    r.fields.emplace(name, value_from_json(value, join(where, name)));
  return r;
}

Json to_json(const FeatureRecord& record) {
  Json out = Json::object();
  for (const auto& [name, value] : record.fields) out[name] = to_json(value);
  return out;
}

Prediction prediction_from_json(const Json& j, std::string_view where) {
  expect_object(j, where, {"label", "confidence"});
  Prediction p;
  p.label = get_string(require_key(j, "label", where), join(where, "label"));
  p.confidence = optional_confidence(j, where);
  return p;
}

Json to_json(const Prediction& p) {
  Json out{{"label", p.label}};
  if (p.confidence) out["confidence"] = *p.confidence;
  return out;
}

Transformation transformation_from_json(const Json& j, std::string_view where) {
  expect_object(j, where, {"name", "kind", "field", "dx", "dy", "fill", "k", "c", "value", "map"});
  Transformation t;
  std::string kind = get_string(require_key(j, "kind", where), join(where, "kind"));
  t.name = j.contains("name") ? get_string(j["name"], join(where, "name")) : kind;
  auto field = [&] { return get_string(require_key(j, "field", where), join(where, "field")); };
  auto opt_num = [&](std::string_view key, double dflt) {
    auto it = j.find(std::string(key));
    return it == j.end() ? dflt : get_number(*it, join(where, key));
  };
  if (kind == "shift_grid") {
    ShiftGrid s;
    s.field = field();
    auto dx = j.find("dx"), dy = j.find("dy");
    s.dx = dx == j.end() ? 0 : static_cast<int>(get_integer(*dx, join(where, "dx")));
    s.dy = dy == j.end() ? 0 : static_cast<int>(get_integer(*dy, join(where, "dy")));
    s.fill = opt_num("fill", 0.0);
    t.kind = s;
  } else if (kind == "scale") {
    t.kind = Scale{field(), get_number(require_key(j, "k", where), join(where, "k"))};
  } else if (kind == "add") {
    t.kind = Offset{field(), get_number(require_key(j, "c", where), join(where, "c"))};
  } else if (kind == "set") {
    t.kind = SetField{field(), value_from_json(require_key(j, "value", where), join(where, "value"))};
  } else if (kind == "field_map") {
    const Json& m = require_key(j, "map", where);
    if (!m.is_object()) format_error(join(where, "map"), "expected an object of field -> expression");
    FieldMap fm;
    for (const auto& [name, text] : m.items())
      fm.assignments.emplace_back(name, expression_from_json(text, join(join(where, "map"), name)));
    t.kind = std::move(fm);
  } else {
    format_error(join(where, "kind"), "unknown transformation kind \"" + kind +
                                          "\" (expected shift_grid, scale, add, set or field_map)");
  }
  return t;
}

Json to_json(const Transformation& t) {
  Json out{{"name", t.name}};
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ShiftGrid>) {
          out["kind"] = "shift_grid";
          out["field"] = k.field;
          out["dx"] = k.dx;
          out["dy"] = k.dy;
          out["fill"] = to_json(FieldValue{k.fill});
        } else if constexpr (std::is_same_v<T, Scale>) {
          out["kind"] = "scale";
          out["field"] = k.field;
          out["k"] = to_json(FieldValue{k.k});
        } else if constexpr (std::is_same_v<T, Offset>) {
          out["kind"] = "add";
          out["field"] = k.field;
          out["c"] = to_json(FieldValue{k.c});
        } else if constexpr (std::is_same_v<T, SetField>) {
          out["kind"] = "set";
          out["field"] = k.field;
          out["value"] = to_json(k.value);
        } else {
          out["kind"] = "field_map";
          Json m = Json::object();
          for (const auto& [name, e] : k.assignments) m[name] = print(e);
          out["map"] = std::move(m);
        }
      },
      t.kind);
  return out;
}

OutputTransform output_transform_from_json(const Json& j, std::string_view where) {
  if (j.is_null()) return {};
  if (j.is_string()) {
    if (j.get<std::string>() == "identity") return {};
    format_error(where, "expected \"identity\" or {\"label_map\": {...}}");
  }
  expect_object(j, where, {"kind", "label_map"});
  if (j.contains("kind")) {
    std::string kind = get_string(j["kind"], join(where, "kind"));
    if (kind == "identity") {
      if (j.contains("label_map")) format_error(where, "identity output transform takes no label_map");
      return {};
    }
    if (kind != "label_map") format_error(join(where, "kind"), "expected identity or label_map");
  }
  const Json& m = require_key(j, "label_map", where);
  if (!m.is_object()) format_error(join(where, "label_map"), "expected an object of label -> label");
  std::map<std::string, std::string> map;
  for (const auto& [from, to] : m.items())
    map[from] = get_string(to, join(join(where, "label_map"), from));
  return OutputTransform{std::move(map)};
}

Json to_json(const OutputTransform& t) {
  if (t.is_identity()) return "identity";
  Json m = Json::object();
  for (const auto& [from, to] : *t.label_map) m[from] = to;
  return Json{{"label_map", std::move(m)}};
}

PartialSpec spec_from_json(const Json& j) {
  expect_object(j, "", {"schema", "precondition", "postcondition", "sufficient", "necessary",
                        "invariants", "equivariants", "probabilistic", "description"});
  PartialSpec spec{schema_from_json(require_key(j, "schema", "")), Condition(make_bool(true)),
                   std::nullopt, {}, {}, {}, {}, {}};
  if (auto it = j.find("precondition"); it != j.end())
    spec.precondition = condition_from_json(*it, "/precondition");
  if (auto it = j.find("postcondition"); it != j.end() && !it->is_null())
    spec.postcondition = condition_from_json(*it, "/postcondition");
  if (auto it = j.find("sufficient"); it != j.end())
    spec.sufficient = condition_map_from_json(*it, "/sufficient");
  if (auto it = j.find("necessary"); it != j.end())
    spec.necessary = condition_map_from_json(*it, "/necessary");
  auto array_at = [&](const char* key) -> const Json* {
    auto it = j.find(key);
    if (it == j.end()) return nullptr;
    if (!it->is_array()) format_error(std::string("/") + key, "expected an array");
    return &*it;
  };
  if (const Json* a = array_at("invariants"))
    for (std::size_t i = 0; i < a->size(); ++i)
      spec.invariants.push_back(transformation_from_json((*a)[i], join("/invariants", i)));
  if (const Json* a = array_at("equivariants"))
    for (std::size_t i = 0; i < a->size(); ++i) {
      const std::string at = join("/equivariants", i);
      expect_object((*a)[i], at, {"transform", "output"});
      Equivariant eq{transformation_from_json(require_key((*a)[i], "transform", at),
                                              join(at, "transform")),
                     {}};
      if ((*a)[i].contains("output"))
        eq.output = output_transform_from_json((*a)[i]["output"], join(at, "output"));
      spec.equivariants.push_back(std::move(eq));
    }
  if (const Json* a = array_at("probabilistic"))
    for (std::size_t i = 0; i < a->size(); ++i)
      spec.probabilistic.push_back(prob_from_json((*a)[i], join("/probabilistic", i)));
  return spec;
}

Json to_json(const PartialSpec& spec) {
  Json out{{"schema", to_json(spec.schema)}, {"precondition", spec.precondition.text}};
  if (spec.postcondition) out["postcondition"] = spec.postcondition->text;
  out["sufficient"] = condition_map_to_json(spec.sufficient);
  out["necessary"] = condition_map_to_json(spec.necessary);
  Json inv = Json::array();
  for (const auto& t : spec.invariants) inv.push_back(to_json(t));
  out["invariants"] = std::move(inv);
  Json eqs = Json::array();
  for (const auto& eq : spec.equivariants)
    eqs.push_back(Json{{"transform", to_json(eq.input)}, {"output", to_json(eq.output)}});
  out["equivariants"] = std::move(eqs);
  Json prob = Json::array();
  for (const auto& pc : spec.probabilistic) prob.push_back(prob_to_json(pc));
  out["probabilistic"] = std::move(prob);
  return out;
}

PartialSpec load_spec(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  try {
    return spec_from_json(j);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.details());
  }
}

ClassifierPtr classifier_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const std::string where = "/classifier";
  if (j.is_object() && j.contains("file") && j.size() == 1) {
    std::filesystem::path p = get_string(j["file"], join(where, "file"));
    return load_classifier(p.is_absolute() ? p : base_dir / p);
  }
  std::string kind = get_string(require_key(j, "kind", where), join(where, "kind"));
  std::string name = j.contains("name") ? get_string(j["name"], join(where, "name")) : kind;
  if (kind == "table") {
    expect_object(j, where, {"kind", "name", "entries", "default"});
    std::vector<std::pair<FeatureRecord, Prediction>> entries;
    const Json& ej = require_key(j, "entries", where);
    if (!ej.is_array()) format_error(join(where, "entries"), "expected an array");
    for (std::size_t i = 0; i < ej.size(); ++i) {
      const std::string at = join(join(where, "entries"), i);
      expect_object(ej[i], at, {"input", "label", "confidence"});
      Prediction p{get_string(require_key(ej[i], "label", at), join(at, "label")),
                   optional_confidence(ej[i], at)};
      entries.emplace_back(record_from_json(require_key(ej[i], "input", at), join(at, "input")),
                           std::move(p));
    }
    std::optional<Prediction> fallback;
    if (auto it = j.find("default"); it != j.end() && !it->is_null())
      fallback = it->is_string() ? Prediction{it->get<std::string>(), std::nullopt}
                                 : prediction_from_json(*it, join(where, "default"));
    return std::make_shared<TableClassifier>(name, entries, fallback);
  }
  if (kind == "expression") {
    expect_object(j, where, {"kind", "name", "rules", "default", "default_confidence"});
    std::vector<ExpressionClassifier::Rule> rules;
    const Json& rj = require_key(j, "rules", where);
    if (!rj.is_array()) format_error(join(where, "rules"), "expected an array");
    for (std::size_t i = 0; i < rj.size(); ++i) {
      const std::string at = join(join(where, "rules"), i);
      expect_object(rj[i], at, {"when", "label", "confidence"});
      rules.push_back({condition_from_json(require_key(rj[i], "when", at), join(at, "when")),
                       get_string(require_key(rj[i], "label", at), join(at, "label")),
                       optional_confidence(rj[i], at)});
    }
    const Json& dj = require_key(j, "default", where);
    Prediction dflt = dj.is_string() ? Prediction{dj.get<std::string>(), std::nullopt}
                                     : prediction_from_json(dj, join(where, "default"));
    if (auto it = j.find("default_confidence"); it != j.end())
      dflt.confidence = get_number(*it, join(where, "default_confidence"));
    return std::make_shared<ExpressionClassifier>(name, std::move(rules), dflt.label,
                                                  dflt.confidence);
  }
  if (kind == "subprocess") {
    expect_object(j, where, {"kind", "name", "command", "timeout_ms"});
    const Json& cj = require_key(j, "command", where);
    if (!cj.is_array() || cj.empty())
      format_error(join(where, "command"), "expected a non-empty array of strings");
    std::vector<std::string> argv;
    for (std::size_t i = 0; i < cj.size(); ++i)
      argv.push_back(get_string(cj[i], join(join(where, "command"), i)));
    // Programs given as relative paths are relative to the declaring file.
    if (argv[0].find('/') != std::string::npos && !base_dir.empty()) {
      std::filesystem::path p = argv[0];
      if (p.is_relative()) argv[0] = (base_dir / p).string();
    }
    long long timeout = 5000;
    if (auto it = j.find("timeout_ms"); it != j.end())
      timeout = get_integer(*it, join(where, "timeout_ms"));
    if (timeout <= 0) format_error(join(where, "timeout_ms"), "must be positive");
    return std::make_shared<SubprocessClassifier>(name, std::move(argv),
                                                  std::chrono::milliseconds(timeout));
  }
  format_error(join(where, "kind"), "unknown classifier kind \"" + kind +
                                        "\" (expected table, expression or subprocess)");
}

ClassifierPtr load_classifier(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  try {
    return classifier_from_json(j, path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.details());
  }
}

}  // namespace specguard
