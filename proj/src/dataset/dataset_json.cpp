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

#include <sstream>

#include "specguard/dataset.hpp"
#include "specguard/error.hpp"

namespace specguard {
namespace {

std::string at(std::string_view where, std::string_view key) {
  return std::string(where) + "/" + std::string(key);
}

Json issues_to_json(const std::vector<RecordIssue>& issues) {
  Json out = Json::array();
  for (const auto& i : issues) out.push_back(Json{{"id", i.id}, {"message", i.message}});
  return out;
}

const char* split_name(std::size_t s) {
  return s == 0 ? "train" : s == 1 ? "validation" : "test";
}

}  // namespace

LabeledRecord labeled_record_from_json(const Json& j, std::string_view where) {
  expect_object(j, where, {"id", "input", "label", "provenance"});
  LabeledRecord r;
  r.input = record_from_json(require_key(j, "input", where), at(where, "input"));
  if (j.contains("id")) r.input.id = get_string(j["id"], at(where, "id"));
  r.label = get_string(require_key(j, "label", where), at(where, "label"));
  if (auto it = j.find("provenance"); it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "COLLECTED")
        throw Error(ErrorCode::kFormat, at(where, "provenance") +
                                            ": expected \"COLLECTED\" or an AUGMENTED object");
    } else {
      const std::string pw = at(where, "provenance");
      expect_object(*it, pw, {"kind", "transform", "source"});
      std::string kind = get_string(require_key(*it, "kind", pw), at(pw, "kind"));
      if (kind == "AUGMENTED") {
        r.provenance.augmented = true;
        r.provenance.transform = get_string(require_key(*it, "transform", pw), at(pw, "transform"));
        r.provenance.source_id = get_string(require_key(*it, "source", pw), at(pw, "source"));
      } else if (kind != "COLLECTED") {
        throw Error(ErrorCode::kFormat, at(pw, "kind") + ": expected COLLECTED or AUGMENTED");
      }
    }
  }
  return r;
}

Json to_json(const LabeledRecord& r) {
  Json out = Json::object();
  if (r.input.id) out["id"] = *r.input.id;
  out["input"] = to_json(r.input);
  out["label"] = r.label;
  if (r.provenance.augmented)
    out["provenance"] = Json{{"kind", "AUGMENTED"},
                             {"transform", r.provenance.transform},
                             {"source", r.provenance.source_id}};
  else
    out["provenance"] = "COLLECTED";
  return out;
}

std::vector<LabeledRecord> load_dataset(const std::filesystem::path& path) {
  std::vector<LabeledRecord> out;
  for (const auto& line : read_jsonl_file(path)) {
    const std::string where = path.string() + ":" + std::to_string(line.line);
    if (!line.error.empty()) throw Error(ErrorCode::kFormat, where + ": " + line.error);
    out.push_back(labeled_record_from_json(line.value, where));
  }
  return out;
}

std::string dump_dataset(std::span<const LabeledRecord> data) {
  std::string out;
  for (const auto& r : data) out += to_json(r).dump() + "\n";
  return out;
}

Partitioning partitioning_from_json(const Json& j, std::string_view where) {
  expect_object(j, where, {"name", "partitions"});
  Partitioning p;
  p.name = get_string(require_key(j, "name", where), at(where, "name"));
  const Json& parts = require_key(j, "partitions", where);
  if (!parts.is_array()) throw Error(ErrorCode::kFormat, at(where, "partitions") + ": expected an array");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string pw = at(at(where, "partitions"), std::to_string(i));
    expect_object(parts[i], pw, {"name", "predicate", "risk_weight"});
    std::string name = get_string(require_key(parts[i], "name", pw), at(pw, "name"));
    std::string text = get_string(require_key(parts[i], "predicate", pw), at(pw, "predicate"));
    int risk = 1;
    if (parts[i].contains("risk_weight"))
      risk = static_cast<int>(get_integer(parts[i]["risk_weight"], at(pw, "risk_weight")));
    try {
      p.partitions.push_back({name, Condition(text), risk});
    } catch (const SyntaxError& e) {
      throw Error(ErrorCode::kSyntax, at(pw, "predicate") + ": " + e.what());
    }
  }
  return p;
}

Json to_json(const Partitioning& p) {
  Json parts = Json::array();
  for (const auto& part : p.partitions)
    parts.push_back(Json{{"name", part.name},
                         {"predicate", part.predicate.text},
                         {"risk_weight", part.risk_weight}});
  return Json{{"name", p.name}, {"partitions", std::move(parts)}};
}

DataSetRequirements requirements_from_json(const Json& j) {
  expect_object(j, "", {"partitionings", "base_min_samples", "risk_multiplier", "infeasible_cells"});
  DataSetRequirements r;
  if (auto it = j.find("partitionings"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kFormat, "/partitionings: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      r.partitionings.push_back(partitioning_from_json((*it)[i], "/partitionings/" + std::to_string(i)));
  }
  if (auto it = j.find("base_min_samples"); it != j.end()) {
    long long b = get_integer(*it, "/base_min_samples");
    if (b < 1) throw Error(ErrorCode::kConfig, "base_min_samples must be >= 1");
    r.base_min_samples = static_cast<std::size_t>(b);
  }
  if (auto it = j.find("risk_multiplier"); it != j.end())
    r.risk_multiplier = get_number(*it, "/risk_multiplier");
  if (auto it = j.find("infeasible_cells"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kFormat, "/infeasible_cells: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string cw = "/infeasible_cells/" + std::to_string(i);
      const Json& cell = (*it)[i];
      if (!cell.is_array()) throw Error(ErrorCode::kFormat, cw + ": expected an array of partition names");
      std::vector<std::string> names;
      for (std::size_t k = 0; k < cell.size(); ++k)
        names.push_back(get_string(cell[k], cw + "/" + std::to_string(k)));
      r.infeasible_cells.push_back(std::move(names));
    }
  }
  return r;
}

Json to_json(const DataSetRequirements& r) {
  Json parts = Json::array();
  for (const auto& p : r.partitionings) parts.push_back(to_json(p));
  return Json{{"partitionings", std::move(parts)},
              {"base_min_samples", r.base_min_samples},
              {"risk_multiplier", r.risk_multiplier},
              {"infeasible_cells", r.infeasible_cells}};
}

Json to_json(const CoverageReport& r) {
  Json parts = Json::array();
  for (const auto& p : r.partitionings) {
    Json overlaps = Json::array();
    for (const auto& [id, names] : p.overlaps) overlaps.push_back(Json{{"id", id}, {"partitions", names}});
    Json counts = Json::object();
    for (const auto& [name, n] : p.partition_counts) counts[name] = n;
    parts.push_back(Json{{"name", p.name},
                         {"partition_counts", std::move(counts)},
                         {"cover_failures", p.cover_failures},
                         {"overlaps", std::move(overlaps)}});
  }
  Json cells = Json::array();
  for (const auto& c : r.cells)
    cells.push_back(Json{{"partitions", c.partitions},
                         {"risk", c.risk},
                         {"required", c.required},
                         {"count", c.count},
                         {"marked_infeasible", c.marked_infeasible},
                         {"status", to_string(c.status)}});
  Json membership = Json::array();
  for (const auto& m : r.membership) membership.push_back(Json{{"id", m.id}, {"partitions", m.matches}});
  return Json{{"pass", r.pass},
              {"records_total", r.records_total},
              {"records_counted", r.records_counted},
              {"cells_total", r.cells_total},
              {"cells_feasible", r.cells_feasible},
              {"cells_met", r.cells_met},
              {"cell_coverage", r.cell_coverage},
              {"partitionings", std::move(parts)},
              {"cells", std::move(cells)},
              {"membership", std::move(membership)},
              {"errors", issues_to_json(r.errors)},
              {"notices", r.notices}};
}

Json to_json(const BoundaryReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases)
    cases.push_back(Json{{"id", c.id},
                         {"partition", c.partition},
                         {"field", c.field},
                         {"threshold", c.threshold},
                         {"distance", c.distance}});
  return Json{{"cases", std::move(cases)}, {"skipped", r.skipped}, {"errors", issues_to_json(r.errors)}};
}

Json to_json(const AugmentResult& r, bool include_records) {
  Json errors = Json::array();
  for (const auto& e : r.errors)
    errors.push_back(Json{{"source", e.source_id}, {"transform", e.transform}, {"message", e.message}});
  Json out{{"originals", r.originals},
           {"added", r.added},
           {"duplicates", r.duplicates},
           {"total", r.records.size()},
           {"errors", std::move(errors)}};
  if (include_records) {
    Json recs = Json::array();
    for (const auto& rec : r.records) recs.push_back(to_json(rec));
    out["records"] = std::move(recs);
  }
  return out;
}

Json to_json(const UncertaintyReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    Json jp{{"id", p.id}, {"category", to_string(p.category)}};
    if (p.category != UncertaintyCategory::kUnknownUnknown) {
      jp["depth"] = p.depth;
      jp["path"] = p.path;
      jp["source"] = p.source_id;
      if (p.derived_label) jp["derived_label"] = *p.derived_label;
    }
    probes.push_back(std::move(jp));
  }
  Json counts = Json::object(), fractions = Json::object();
  for (std::size_t c = 0; c < 3; ++c) {
    auto cat = static_cast<UncertaintyCategory>(c);
    counts[to_string(cat)] = r.counts[c];
    fractions[to_string(cat)] = r.fraction(cat);
  }
  return Json{{"max_depth", r.max_depth},
              {"explored", r.explored},
              {"pruned", r.pruned},
              {"counts", std::move(counts)},
              {"fractions", std::move(fractions)},
              {"probes", std::move(probes)}};
}

Json to_json(const SplitResult& r, bool include_records) {
  Json sizes = Json::object();
  for (std::size_t s = 0; s < 3; ++s) sizes[split_name(s)] = r.parts[s].size();
  Json strata = Json::array();
  for (const auto& st : r.strata) {
    Json counts = Json::object();
    for (std::size_t s = 0; s < 3; ++s) counts[split_name(s)] = st.counts[s];
    strata.push_back(Json{{"name", st.name}, {"size", st.size}, {"counts", std::move(counts)}});
  }
  Json out{{"sizes", std::move(sizes)}, {"strata", std::move(strata)}, {"notices", r.notices}};
  Json ids = Json::object();
  for (std::size_t s = 0; s < 3; ++s) {
    Json list = Json::array();
    for (std::size_t i = 0; i < r.parts[s].size(); ++i) {
      const auto& rec = r.parts[s][i];
      list.push_back(rec.input.id ? *rec.input.id : canonical_key(rec.input));
    }
    ids[split_name(s)] = std::move(list);
  }
  out["ids"] = std::move(ids);
  if (include_records) {
    Json parts = Json::object();
    for (std::size_t s = 0; s < 3; ++s) {
      Json recs = Json::array();
      for (const auto& rec : r.parts[s]) recs.push_back(to_json(rec));
      parts[split_name(s)] = std::move(recs);
    }
    out["records"] = std::move(parts);
  }
  return out;
}

Json to_json(const ComplianceReport& r) {
  Json labels = Json::array();
  for (const auto& l : r.label_failures)
    labels.push_back(Json{{"id", l.id},
                          {"label", l.label},
                          {"kind", l.kind},
                          {"condition_label", l.condition_label},
                          {"index", l.index},
                          {"condition", l.condition}});
  return Json{{"pass", r.pass},
              {"records", r.records},
              {"schema_failures", issues_to_json(r.schema_failures)},
              {"label_failures", std::move(labels)},
              {"errors", issues_to_json(r.errors)},
              {"coverage", to_json(r.coverage)}};
}

std::string render_text(const CoverageReport& r) {
  std::ostringstream out;
  out << "coverage: " << (r.pass ? "PASS" : "FAIL") << "\n";
  out << "records: " << r.records_counted << " counted of " << r.records_total << "\n";
  out << "cells met: " << r.cells_met << "/" << r.cells_feasible << " feasible ("
      << r.cells_total << " total), coverage " << format_number(r.cell_coverage) << "\n";
  for (const auto& c : r.cells) {
    std::string name;
    for (const auto& p : c.partitions) name += (name.empty() ? "" : " x ") + p;
    out << "  " << name << ": " << c.count << "/" << c.required << " " << to_string(c.status) << "\n";
  }
  for (const auto& p : r.partitionings) {
    for (const auto& id : p.cover_failures)
      out << "cover failure in " << p.name << ": " << id << "\n";
    for (const auto& [id, names] : p.overlaps) {
      out << "overlap in " << p.name << ": " << id << " (";
      for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
      out << ")\n";
    }
  }
  for (const auto& e : r.errors) out << "error " << e.id << ": " << e.message << "\n";
  for (const auto& n : r.notices) out << "notice: " << n << "\n";
  return out.str();
}

std::string render_text(const SplitResult& r) {
  std::ostringstream out;
  out << "train " << r.train().size() << ", validation " << r.validation().size() << ", test "
      << r.test().size() << "\n";
  for (const auto& st : r.strata)
    out << "  stratum " << st.name << " (" << st.size << "): " << st.counts[0] << "/"
        << st.counts[1] << "/" << st.counts[2] << "\n";
  for (const auto& n : r.notices) out << "notice: " << n << "\n";
  return out.str();
}

std::string render_text(const UncertaintyReport& r) {
  std::ostringstream out;
  for (std::size_t c = 0; c < 3; ++c) {
    auto cat = static_cast<UncertaintyCategory>(c);
    out << to_string(cat) << ": " << r.counts[c] << " (" << format_number(r.fraction(cat)) << ")\n";
  }
  for (const auto& p : r.probes) {
    out << "  " << p.id << ": " << to_string(p.category);
    if (p.category == UncertaintyCategory::kKnownUnknown) {
      out << " depth " << p.depth << " from " << p.source_id << " via";
      for (const auto& s : p.path) out << " " << s;
    }
    out << "\n";
  }
  return out.str();
}

std::string render_text(const ComplianceReport& r) {
  std::ostringstream out;
  out << "compliance: " << (r.pass ? "PASS" : "FAIL") << " (" << r.records << " records)\n";
  for (const auto& s : r.schema_failures) out << "schema " << s.id << ": " << s.message << "\n";
  for (const auto& l : r.label_failures)
    out << "label " << l.id << " (\"" << l.label << "\"): " << l.kind << " " << l.condition_label
        << "[" << l.index << "] " << l.condition << "\n";
  for (const auto& e : r.errors) out << "error " << e.id << ": " << e.message << "\n";
  out << render_text(r.coverage);
  return out.str();
}

}  // namespace specguard
