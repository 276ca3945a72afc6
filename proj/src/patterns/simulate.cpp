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
#include "specguard/patterns.hpp"

namespace specguard {

ErrorReport simulate(std::span<const FeatureRecord> domain, const Classifier& oracle,
                     const Subject& subject) {
  ErrorReport report;
  report.subject = subject.describe();
  report.oracle = oracle.name();
  report.domain_size = domain.size();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const FeatureRecord& input = domain[i];
    Prediction expected;
    try {
      expected = oracle.classify(input);
    } catch (const Error& e) {
      throw Error(ErrorCode::kClassifier, "oracle failed on domain element " +
                                              std::to_string(i) + ": " + e.what());
    }
    Decision d;
    try {
      d = subject.decide(input);
    } catch (const Error& e) {
      d.source = "ERROR";
      d.prediction.label = std::string("<error: ") + e.what() + ">";
    }
    SourceStats& stats = report.per_source[d.source];
    ++stats.decisions;
    if (d.prediction.label != expected.label) {
      ++stats.mismatches;
      ++report.mismatch_count;
      report.mismatches.push_back({i, input.id ? *input.id : "#" + std::to_string(i),
                                   expected.label, d.prediction.label, d.source});
    }
  }
  report.error_rate = domain.empty() ? 0.0
                                     : static_cast<double>(report.mismatch_count) /
                                           static_cast<double>(domain.size());
  return report;
}

Json to_json(const ErrorReport& report) {
  Json per_source = Json::object();
  for (const auto& [source, s] : report.per_source)
    per_source[source] = Json{{"decisions", s.decisions}, {"mismatches", s.mismatches}};
  Json mismatches = Json::array();
  for (const auto& m : report.mismatches)
    mismatches.push_back(Json{{"index", m.index},
                              {"id", m.id},
                              {"expected", m.expected},
                              {"actual", m.actual},
                              {"source", m.source}});
  return Json{{"subject", report.subject},
              {"oracle", report.oracle},
              {"domain_size", report.domain_size},
              {"mismatch_count", report.mismatch_count},
              {"error_rate", report.error_rate},
              {"per_source", std::move(per_source)},
              {"mismatches", std::move(mismatches)}};
}

std::string render_text(const ErrorReport& report) {
  std::ostringstream out;
  out << "subject:     " << report.subject << "\n";
  out << "oracle:      " << report.oracle << "\n";
  out << "domain size: " << report.domain_size << "\n";
  out << "mismatches:  " << report.mismatch_count << "\n";
  out << "error rate:  " << format_number(report.error_rate) << "\n";
  for (const auto& [source, s] : report.per_source)
    out << "  " << source << ": " << s.mismatches << " of " << s.decisions << " decisions wrong\n";
  return out.str();
}

}  // namespace specguard
