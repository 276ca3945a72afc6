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

#include <cstdio>
#include <sstream>

#include "specguard/error.hpp"
#include "specguard/process.hpp"

namespace specguard {
namespace {

std::string at(std::string_view where, std::string_view key) {
  return std::string(where) + "/" + std::string(key);
}

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

// Decoders for enum-valued fields report the JSON location.
template <typename F>
auto decode(std::string_view where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, std::string(where) + ": " + e.what());
  }
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

Method method_from_json(const Json& j, std::string_view where) {
  expect_object(j, where,
                {"id", "name", "category", "recommendations", "requires_specification",
                 "requires_interpretability", "method_type", "note"});
  Method m;
  m.id = get_string(require_key(j, "id", where), at(where, "id"));
  if (j.contains("name")) m.name = get_string(j["name"], at(where, "name"));
  std::string cat = get_string(require_key(j, "category", where), at(where, "category"));
  m.category = decode(at(where, "category"), [&] { return parse_category(cat); });
  m.type = method_type_of(m.category);
  if (j.contains("method_type")) {
    std::string t = get_string(j["method_type"], at(where, "method_type"));
    m.type = decode(at(where, "method_type"), [&] { return parse_method_type(t); });
  }

  const std::string rw = at(where, "recommendations");
  const Json& recs = require_key(j, "recommendations", where);
  if (recs.is_array()) {
    if (recs.size() != 4) throw Error(ErrorCode::kFormat, rw + ": expected four entries for ASILs A-D");
    for (std::size_t i = 0; i < 4; ++i) {
      std::string s = get_string(recs[i], at(rw, std::to_string(i)));
      m.recommendation[i] = decode(at(rw, std::to_string(i)), [&] { return parse_recommendation(s); });
    }
  } else {
    expect_object(recs, rw, {"A", "B", "C", "D"});
    for (Asil a : kAllAsils) {
      const Json& v = require_key(recs, to_string(a), rw);
      std::string s = get_string(v, at(rw, to_string(a)));
      m.recommendation[static_cast<std::size_t>(a)] =
          decode(at(rw, to_string(a)), [&] { return parse_recommendation(s); });
    }
  }
  if (j.contains("requires_specification"))
    m.requires_specification = get_bool(j["requires_specification"], at(where, "requires_specification"));
  if (j.contains("requires_interpretability"))
    m.requires_interpretability =
        get_bool(j["requires_interpretability"], at(where, "requires_interpretability"));
  if (j.contains("note")) m.note = get_string(j["note"], at(where, "note"));
  return m;
}

Json to_json(const Method& m) {
  Json recs = Json::object();
  for (Asil a : kAllAsils) recs[to_string(a)] = to_string(m.at(a));
  Json out{{"id", m.id},
           {"name", m.name},
           {"category", to_string(m.category)},
           {"method_type", to_string(m.type)},
           {"recommendations", std::move(recs)},
           {"requires_specification", m.requires_specification},
           {"requires_interpretability", m.requires_interpretability}};
  if (!m.note.empty()) out["note"] = m.note;
  return out;
}

std::vector<Method> catalog_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object()) {
    expect_object(j, "", {"methods", "description", "source"});
    list = &require_key(j, "methods", "");
  }
  if (!list->is_array()) throw Error(ErrorCode::kFormat, "/methods: expected an array of methods");
  std::vector<Method> out;
  for (std::size_t i = 0; i < list->size(); ++i)
    out.push_back(method_from_json((*list)[i], "/methods/" + std::to_string(i)));
  auto issues = validate_catalog(out);
  if (!issues.empty()) throw Error(ErrorCode::kConfig, "invalid method catalog", issues);
  return out;
}

std::vector<Method> load_catalog(const std::filesystem::path& path) {
  return catalog_from_json(read_json_file(path));
}

Json to_json(const Rational& r) {
  return Json{{"fraction", r.to_fraction()}, {"decimal", r.to_decimal(12)}, {"value", r.to_double()}};
}

Json to_json(const ImpactTable& t) {
  Json rows = Json::array();
  for (const auto& c : t.cells) {
    Json per = Json::object();
    for (Asil a : kAllAsils) per[to_string(a)] = to_json(c.per_asil[static_cast<std::size_t>(a)]);
    rows.push_back(Json{{"condition", to_string(c.condition)},
                        {"method_type", to_string(c.type)},
                        {"per_asil", std::move(per)},
                        {"mean", c.mean.to_double()},
                        {"mean_exact", c.mean.to_fraction()},
                        {"std", c.std_dev},
                        {"display", fixed2(c.mean.to_double()) + " (" + fixed2(c.std_dev) + ")"}});
  }
  return Json{{"std_kind", "population"}, {"cells", std::move(rows)}};
}

std::string render_text(const ImpactTable& t) {
  constexpr std::size_t kFirst = 22, kCol = 16;
  std::ostringstream out;
  std::string header = pad("Condition", kFirst);
  for (MethodType mt : t.types) {
    std::string name = mt == MethodType::kVerification ? "Verification"
                       : mt == MethodType::kTesting    ? "Testing"
                                                       : to_string(mt);
    header += pad(name, kCol);
  }
  while (!header.empty() && header.back() == ' ') header.pop_back();
  out << header << "\n";
  for (ScoringCondition c : {ScoringCondition::kNoSpecification, ScoringCondition::kNoInterpretability}) {
    std::string line = pad(c == ScoringCondition::kNoSpecification ? "No specification"
                                                                  : "No interpretability",
                           kFirst);
    for (MethodType mt : t.types) {
      const ImpactCell& cell = t.at(c, mt);
      line += pad(fixed2(cell.mean.to_double()) + " (" + fixed2(cell.std_dev) + ")", kCol);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  return out.str();
}

Json to_json(std::span<const CensusRow> rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back(Json{{"category", to_string(r.category)},
                       {"name", display_name(r.category)},
                       {"method_type", to_string(method_type_of(r.category))},
                       {"expected", r.expected},
                       {"actual", r.actual}});
  return out;
}

GateQuestionnaire questionnaire_from_json(const Json& j) {
  expect_object(j, "",
                {"component", "completely_specifiable", "splittable", "strengthenable",
                 "strengthened_functionality_acceptable", "rationale"});
  GateQuestionnaire q;
  if (j.contains("component")) q.component = get_string(j["component"], "/component");
  auto flag = [&](const char* key, std::optional<bool>& dst) {
    if (auto it = j.find(key); it != j.end() && !it->is_null())
      dst = get_bool(*it, std::string("/") + key);
  };
  flag("completely_specifiable", q.completely_specifiable);
  flag("splittable", q.splittable);
  flag("strengthenable", q.strengthenable);
  flag("strengthened_functionality_acceptable", q.strengthened_functionality_acceptable);
  if (auto it = j.find("rationale"); it != j.end()) {
    if (!it->is_object()) throw Error(ErrorCode::kFormat, "/rationale: expected an object");
    for (const auto& [k, v] : it->items())
      q.rationale.emplace_back(k, get_string(v, "/rationale/" + k));
  }
  return q;
}

Json to_json(const GateDecision& d) {
  const auto& q = d.questionnaire;
  Json answers{{"completely_specifiable", *q.completely_specifiable},
               {"splittable", *q.splittable},
               {"strengthenable", *q.strengthenable},
               {"strengthened_functionality_acceptable", *q.strengthened_functionality_acceptable}};
  Json rationale = Json::object();
  for (const auto& [k, v] : q.rationale) rationale[k] = v;
  Json out = Json::object();
  if (!q.component.empty()) out["component"] = q.component;
  out["verdict"] = to_string(d.verdict);
  out["reason"] = d.reason;
  out["answers"] = std::move(answers);
  out["rationale"] = std::move(rationale);
  return out;
}

std::string render_text(const GateDecision& d) {
  std::ostringstream out;
  if (!d.questionnaire.component.empty()) out << d.questionnaire.component << ": ";
  out << to_string(d.verdict) << "\n" << d.reason << "\n";
  for (const auto& [k, v] : d.questionnaire.rationale) out << "  " << k << ": " << v << "\n";
  return out.str();
}

FailureRecord failure_from_json(const Json& j) {
  expect_object(j, "", {"phase", "description", "records"});
  FailureRecord f;
  if (auto it = j.find("phase"); it != j.end() && !it->is_null()) f.phase = get_string(*it, "/phase");
  if (j.contains("description")) f.description = get_string(j["description"], "/description");
  if (auto it = j.find("records"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kFormat, "/records: expected an array of ids");
    for (std::size_t i = 0; i < it->size(); ++i)
      f.record_ids.push_back(get_string((*it)[i], "/records/" + std::to_string(i)));
  }
  return f;
}

Json to_json(const DiagnosisPlan& p) {
  Json groups = Json::array();
  for (std::size_t i = 0; i < p.groups.size(); ++i) {
    const auto& g = p.groups[i];
    groups.push_back(Json{{"step", i + 1},
                          {"requirement", g.requirement},
                          {"phase", to_string(g.phase)},
                          {"topic", g.topic},
                          {"questions", g.questions}});
  }
  Json failure = Json::object();
  if (p.failure.phase) failure["phase"] = *p.failure.phase;
  failure["description"] = p.failure.description;
  failure["records"] = p.failure.record_ids;
  return Json{{"failure", std::move(failure)}, {"plan", std::move(groups)}};
}

std::string render_text(const DiagnosisPlan& p) {
  std::ostringstream out;
  if (!p.failure.description.empty()) out << "failure: " << p.failure.description << "\n";
  for (std::size_t i = 0; i < p.groups.size(); ++i) {
    const auto& g = p.groups[i];
    out << i + 1 << ". [" << g.requirement << "] " << g.topic << " (" << to_string(g.phase) << ")\n";
    for (const auto& q : g.questions) out << "   - " << q << "\n";
  }
  return out.str();
}

SafetyCaseGraph graph_from_json(const Json& j) {
  expect_object(j, "", {"nodes", "edges", "description"});
  SafetyCaseGraph g;
  const Json& nodes = require_key(j, "nodes", "");
  if (!nodes.is_array()) throw Error(ErrorCode::kFormat, "/nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string w = "/nodes/" + std::to_string(i);
    expect_object(nodes[i], w, {"id", "type", "asil", "kind", "artifact", "description"});
    SafetyNode n;
    n.id = get_string(require_key(nodes[i], "id", w), at(w, "id"));
    std::string type = get_string(require_key(nodes[i], "type", w), at(w, "type"));
    n.kind = decode(at(w, "type"), [&] { return parse_node_kind(type); });
    if (auto it = nodes[i].find("asil"); it != nodes[i].end() && !it->is_null()) {
      std::string a = get_string(*it, at(w, "asil"));
      n.asil = decode(at(w, "asil"), [&] { return parse_asil(a); });
    }
    if (nodes[i].contains("kind")) n.subkind = get_string(nodes[i]["kind"], at(w, "kind"));
    if (auto it = nodes[i].find("artifact"); it != nodes[i].end() && !it->is_null())
      n.artifact = get_string(*it, at(w, "artifact"));
    if (nodes[i].contains("description"))
      n.description = get_string(nodes[i]["description"], at(w, "description"));
    g.nodes.push_back(std::move(n));
  }
  if (auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kFormat, "/edges: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string w = "/edges/" + std::to_string(i);
      const Json& e = (*it)[i];
      expect_object(e, w, {"from", "to", "kind"});
      SafetyEdge edge;
      edge.from = get_string(require_key(e, "from", w), at(w, "from"));
      edge.to = get_string(require_key(e, "to", w), at(w, "to"));
      std::string kind = get_string(require_key(e, "kind", w), at(w, "kind"));
      edge.kind = decode(at(w, "kind"), [&] { return parse_edge_kind(kind); });
      g.edges.push_back(std::move(edge));
    }
  }
  return g;
}

Json to_json(const SafetyCaseGraph& g) {
  Json nodes = Json::array();
  for (const auto& n : g.nodes) {
    Json jn{{"id", n.id}, {"type", to_string(n.kind)}};
    if (n.asil) jn["asil"] = to_string(*n.asil);
    if (!n.subkind.empty()) jn["kind"] = n.subkind;
    if (n.artifact) jn["artifact"] = *n.artifact;
    if (!n.description.empty()) jn["description"] = n.description;
    nodes.push_back(std::move(jn));
  }
  Json edges = Json::array();
  for (const auto& e : g.edges)
    edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
  return Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Json to_json(const GapReport& r) {
  Json gaps = Json::array();
  for (const auto& g : r.gaps)
    gaps.push_back(Json{{"kind", to_string(g.kind)}, {"node", g.node}, {"detail", g.detail}});
  return Json{{"ok", r.ok()}, {"gap_count", r.gaps.size()}, {"gaps", std::move(gaps)}};
}

std::string render_text(const GapReport& r) {
  std::ostringstream out;
  if (r.ok()) out << "no gaps\n";
  for (const auto& g : r.gaps) out << to_string(g.kind) << " " << g.node << ": " << g.detail << "\n";
  return out.str();
}

}  // namespace specguard
