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

#include "specguard/dataset.hpp"
#include "specguard/error.hpp"

namespace specguard {

ComplianceReport verify_dataset(std::span<const LabeledRecord> data,
                                const DataSetRequirements& reqs, const PartialSpec& spec) {
  ComplianceReport report;
  report.records = data.size();

  auto req_issues = validate(reqs, &spec.schema);
  if (!req_issues.empty())
    throw Error(ErrorCode::kConfig, "requirements do not fit the spec schema", req_issues);

  // Coverage is computed over conforming records only; the others are
  // reported as schema failures.
  std::vector<LabeledRecord> conforming;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const LabeledRecord& r = data[i];
    const std::string id = record_id(r, i);
    auto issues = conformance_issues(spec.schema, r.input);
    if (!spec.schema.has_label(r.label))
      issues.push_back("label \"" + r.label + "\" is not in the alphabet");
    if (!issues.empty()) {
      std::string msg;
      for (const auto& s : issues) msg += (msg.empty() ? "" : "; ") + s;
      report.schema_failures.push_back({id, msg});
      continue;
    }
    conforming.push_back(r);
    if (!r.input.id) conforming.back().input.id = id;

    try {
      if (!check_pre(spec, r.input)) continue;
      Prediction as_labelled{r.label, std::nullopt};
      for (const auto& ref : check_sufficient(spec, r.input, as_labelled))
        report.label_failures.push_back({id, r.label, "SUFFICIENT", ref.label, ref.index,
                                         spec.sufficient.at(ref.label)[ref.index].text});
      for (const auto& ref : check_necessary(spec, r.input, as_labelled))
        report.label_failures.push_back({id, r.label, "NECESSARY", ref.label, ref.index,
                                         spec.necessary.at(ref.label)[ref.index].text});
    } catch (const EvalError& e) {
      report.errors.push_back({id, e.what()});
    }
  }

  report.coverage = coverage_report(conforming, reqs);
  report.pass = report.coverage.pass && report.schema_failures.empty() &&
                report.label_failures.empty() && report.errors.empty();
  return report;
}

}  // namespace specguard
