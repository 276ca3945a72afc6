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
#include "specguard/monitor.hpp"

namespace specguard {

MonitorPolicy policy_from_json(const Json& j) {
  const std::string where = "/policy";
  expect_object(j, where, {"on_pre_violation", "on_post_class_violation", "probabilistic_window"});
  MonitorPolicy p;
  if (auto it = j.find("on_pre_violation"); it != j.end())
    p.on_pre_violation = parse_action(get_string(*it, where + "/on_pre_violation"));
  if (auto it = j.find("on_post_class_violation"); it != j.end())
    p.on_post_class_violation = parse_action(get_string(*it, where + "/on_post_class_violation"));
  if (auto it = j.find("probabilistic_window"); it != j.end()) {
    long long w = get_integer(*it, where + "/probabilistic_window");
    if (w < 1) throw Error(ErrorCode::kConfig, "probabilistic_window must be >= 1");
    p.probabilistic_window = static_cast<std::size_t>(w);
  }
  p.validate();
  return p;
}

Json to_json(const MonitorPolicy& p) {
  return Json{{"on_pre_violation", to_string(p.on_pre_violation)},
              {"on_post_class_violation", to_string(p.on_post_class_violation)},
              {"probabilistic_window", p.probabilistic_window}};
}

Json to_json(const MonitorReport& report, const MonitorPolicy& policy) {
  Json counts = Json::object();
  for (std::size_t k = 0; k < kViolationKindCount; ++k)
    counts[to_string(static_cast<ViolationKind>(k))] = report.counts[k];
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json jv{{"record", v.record_id}, {"kind", to_string(v.kind)}, {"condition", v.condition}};
    if (v.label) jv["label"] = *v.label;
    if (v.index) jv["index"] = *v.index;
    if (!v.values.empty()) {
      Json values = Json::object();
      for (const auto& [path, value] : v.values) values[path] = to_json(value);
      jv["values"] = std::move(values);
    }
    jv["detail"] = v.detail;
    jv["post_failsafe"] = v.post_failsafe;
    violations.push_back(std::move(jv));
  }
  Json transitions = Json::array();
  for (const auto& t : report.transitions)
    transitions.push_back(Json{{"record", t.record_id},
                               {"from", to_string(t.from)},
                               {"to", to_string(t.to)},
                               {"cause", to_string(t.cause)}});
  return Json{{"records_processed", report.records_processed},
              {"final_state", to_string(report.final_state)},
              {"violation_count", report.violations.size()},
              {"counts", std::move(counts)},
              {"policy", to_json(policy)},
              {"windows_evaluated", report.windows_evaluated},
              {"post_failsafe_records", report.post_failsafe_records},
              {"untrusted", report.untrusted},
              {"transitions", std::move(transitions)},
              {"violations", std::move(violations)}};
}

std::string render_text(const MonitorReport& report) {
  std::ostringstream out;
  out << "records processed: " << report.records_processed << "\n";
  out << "final state:       " << to_string(report.final_state) << "\n";
  out << "violations:        " << report.violations.size() << "\n";
  for (std::size_t k = 0; k < kViolationKindCount; ++k)
    if (report.counts[k] > 0)
      out << "  " << to_string(static_cast<ViolationKind>(k)) << ": " << report.counts[k] << "\n";
  for (const auto& v : report.violations) {
    out << "[" << to_string(v.kind) << "] " << v.record_id;
    if (v.label) out << " " << *v.label << "[" << *v.index << "]";
    out << ": " << v.detail;
    if (v.post_failsafe) out << " (after failsafe)";
    out << "\n";
  }
  for (const auto& t : report.transitions)
    out << "transition " << to_string(t.from) << " -> " << to_string(t.to) << " at "
        << t.record_id << " (" << to_string(t.cause) << ")\n";
  return out.str();
}

}  // namespace specguard
