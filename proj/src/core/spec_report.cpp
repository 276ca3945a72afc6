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

#include "specguard/error.hpp"
#include "specguard/json_io.hpp"
#include "specguard/spec.hpp"

namespace specguard {
namespace {

std::string id_of(const FeatureRecord& r, std::size_t i) {
  return r.id ? *r.id : "#" + std::to_string(i);
}

}  // namespace

MetamorphicReport check_metamorphic(const PartialSpec& spec, const Classifier& classifier,
                                    std::span<const FeatureRecord> inputs) {
  MetamorphicReport report;
  std::vector<Equivariant> relations;
  for (const auto& t : spec.invariants) {
    relations.push_back({t, OutputTransform{}});
    report.relations.push_back({t.name, "INVARIANT"});
  }
  for (const auto& eq : spec.equivariants) {
    relations.push_back(eq);
    report.relations.push_back({eq.input.name, "EQUIVARIANT"});
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t r = 0; r < relations.size(); ++r) {
      RelationStats& stats = report.relations[r];
      try {
        MetamorphicResult res = check_equivariant(classifier, relations[r], inputs[i]);
        ++stats.checked;
        if (res.holds) ++stats.held;
        else report.failures.push_back({i, id_of(inputs[i], i), stats.relation, std::move(res)});
      } catch (const Error& e) {
        ++stats.errors;
        report.errors.push_back({i, id_of(inputs[i], i), stats.relation + ": " + e.what()});
      }
    }
  }
  return report;
}

Json to_json(const WellFormednessReport& r) {
  Json conflicts = Json::array();
  for (const auto& c : r.conflicts) conflicts.push_back(Json{{"sample", c.sample_id}, {"labels", c.labels}});
  Json no_output = Json::array();
  for (const auto& n : r.no_output)
    no_output.push_back(Json{{"sample", n.sample_id},
                             {"label", n.label},
                             {"sufficient_index", n.sufficient_index},
                             {"necessary_index", n.necessary_index}});
  Json errors = Json::array();
  for (const auto& e : r.errors) errors.push_back(Json{{"sample", e.sample_id}, {"message", e.message}});
  return Json{{"ok", r.ok()},
              {"static_issues", r.static_issues},
              {"uncovered_labels", r.uncovered_labels},
              {"samples_checked", r.samples_checked},
              {"samples_in_domain", r.samples_in_domain},
              {"conflicts", std::move(conflicts)},
              {"no_output", std::move(no_output)},
              {"errors", std::move(errors)}};
}

std::string render_text(const WellFormednessReport& r) {
  std::ostringstream out;
  out << "spec: " << (r.ok() ? "well formed" : "NOT well formed") << "\n";
  out << "samples: " << r.samples_checked << " checked, " << r.samples_in_domain << " in domain\n";
  for (const auto& s : r.static_issues) out << "issue: " << s << "\n";
  for (const auto& l : r.uncovered_labels) out << "note: label '" << l << "' has no conditions\n";
  for (const auto& c : r.conflicts) {
    out << "conflict " << c.sample_id << ":";
    for (const auto& l : c.labels) out << " " << l;
    out << "\n";
  }
  for (const auto& n : r.no_output)
    out << "no output " << n.sample_id << ": " << n.label << " sufficient[" << n.sufficient_index
        << "] holds but necessary[" << n.necessary_index << "] fails\n";
  for (const auto& e : r.errors) out << "error " << e.sample_id << ": " << e.message << "\n";
  return out.str();
}

Json to_json(const MetamorphicReport& r) {
  Json relations = Json::array();
  for (const auto& s : r.relations)
    relations.push_back(Json{{"relation", s.relation},
                             {"kind", s.kind},
                             {"checked", s.checked},
                             {"held", s.held},
                             {"errors", s.errors}});
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back(Json{{"sample", f.sample_id},
                            {"relation", f.relation},
                            {"transformed", to_json(f.result.transformed)},
                            {"lhs", to_json(f.result.lhs)},
                            {"rhs", to_json(f.result.rhs)}});
  Json errors = Json::array();
  for (const auto& e : r.errors) errors.push_back(Json{{"sample", e.sample_id}, {"message", e.message}});
  return Json{{"ok", r.ok()},
              {"relations", std::move(relations)},
              {"failures", std::move(failures)},
              {"errors", std::move(errors)}};
}

std::string render_text(const MetamorphicReport& r) {
  std::ostringstream out;
  for (const auto& s : r.relations)
    out << s.kind << " " << s.relation << ": " << s.held << "/" << s.checked << " held, "
        << s.errors << " errors\n";
  for (const auto& f : r.failures)
    out << "fails " << f.relation << " on " << f.sample_id << ": " << f.result.lhs.label
        << " != " << f.result.rhs.label << "\n";
  for (const auto& e : r.errors) out << "error " << e.sample_id << ": " << e.message << "\n";
  return out.str();
}

}  // namespace specguard
