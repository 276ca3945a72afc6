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

#include "specguard/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "specguard/error.hpp"

namespace specguard {

const char* to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::kPre: return "PRE";
    case ViolationKind::kPost: return "POST";
    case ViolationKind::kSufficient: return "SUFFICIENT";
    case ViolationKind::kNecessary: return "NECESSARY";
    case ViolationKind::kProbabilistic: return "PROBABILISTIC";
    case ViolationKind::kEvalError: return "EVAL_ERROR";
  }
  return "UNKNOWN";
}

const char* to_string(Action action) noexcept {
  switch (action) {
    case Action::kMarkUntrusted: return "MARK_UNTRUSTED";
    case Action::kDegrade: return "DEGRADE";
    case Action::kFailsafe: return "FAILSAFE";
  }
  return "UNKNOWN";
}

const char* to_string(MonitorState state) noexcept {
  switch (state) {
    case MonitorState::kNominal: return "NOMINAL";
    case MonitorState::kDegraded: return "DEGRADED";
    case MonitorState::kFailsafe: return "FAILSAFE";
  }
  return "UNKNOWN";
}

Action parse_action(std::string_view text) {
  if (text == "MARK_UNTRUSTED") return Action::kMarkUntrusted;
  if (text == "DEGRADE") return Action::kDegrade;
  if (text == "FAILSAFE") return Action::kFailsafe;
  throw Error(ErrorCode::kConfig, "unknown monitor action \"" + std::string(text) +
                                      "\" (expected MARK_UNTRUSTED, DEGRADE or FAILSAFE)");
}

void MonitorPolicy::validate() const {
  if (on_post_class_violation == Action::kMarkUntrusted)
    throw Error(ErrorCode::kConfig,
                "on_post_class_violation must be DEGRADE or FAILSAFE");
  if (probabilistic_window < 1)
    throw Error(ErrorCode::kConfig, "probabilistic_window must be >= 1");
}

namespace {

Violation make(const std::string& id, ViolationKind kind, std::string condition,
               std::string detail) {
  Violation v;
  v.record_id = id;
  v.kind = kind;
  v.condition = std::move(condition);
  v.detail = std::move(detail);
  return v;
}

void attach_values(Violation& v, const Condition& c, const TraceRecord& r, bool with_output) {
  for (const auto& field : referenced_fields(c.expr))
    if (const FieldValue* fv = r.input.find(field)) v.values.emplace_back("input." + field, *fv);
  if (with_output && references_output(c.expr)) {
    v.values.emplace_back("output.label", r.output.label);
    if (r.output.confidence) v.values.emplace_back("output.confidence", *r.output.confidence);
  }
}

std::string describe_values(const Violation& v) {
  std::string out;
  for (const auto& [path, value] : v.values) {
    if (!out.empty()) out += ", ";
    out += path + " = " + render_value(value);
  }
  return out;
}

MonitorState severity(Action a) {
  switch (a) {
    case Action::kMarkUntrusted: return MonitorState::kNominal;
    case Action::kDegrade: return MonitorState::kDegraded;
    case Action::kFailsafe: return MonitorState::kFailsafe;
  }
  return MonitorState::kNominal;
}

}  // namespace

std::vector<Violation> check_sample(const PartialSpec& spec, const TraceRecord& record) {
  std::vector<Violation> out;
  const std::string& id = record.id;

  auto issues = conformance_issues(spec.schema, record.input);
  for (auto& i : prediction_issues(spec.schema, record.output)) issues.push_back("output " + i);
  if (!issues.empty()) {
    std::string detail = "record does not conform to schema:";
    for (const auto& i : issues) detail += " " + i + ";";
    out.push_back(make(id, ViolationKind::kEvalError, "schema", detail));
    return out;
  }

  // Evaluates one condition, turning evaluation failures into EVAL_ERROR.
  auto eval = [&](const Condition& c, const char* role, bool with_output) -> std::optional<bool> {
    try {
      const Prediction* out_ptr = with_output ? &record.output : nullptr;
      return holds(c.expr, EvalContext{record.input, out_ptr});
    } catch (const EvalError& e) {
      Violation v = make(id, ViolationKind::kEvalError, c.text,
                         std::string(role) + ": " + e.what());
      attach_values(v, c, record, with_output);
      out.push_back(std::move(v));
      return std::nullopt;
    }
  };

  auto pre = eval(spec.precondition, "precondition", false);
  if (!pre) return out;
  if (!*pre) {
    Violation v = make(id, ViolationKind::kPre, spec.precondition.text, "");
    attach_values(v, spec.precondition, record, false);
    v.detail = "precondition does not hold";
    if (!v.values.empty()) v.detail += " (" + describe_values(v) + ")";
    out.push_back(std::move(v));
    return out;
  }

  if (spec.postcondition) {
    auto post = eval(*spec.postcondition, "postcondition", true);
    if (post && !*post) {
      Violation v = make(id, ViolationKind::kPost, spec.postcondition->text, "");
      attach_values(v, *spec.postcondition, record, true);
      v.detail = "postcondition does not hold for prediction \"" + record.output.label + "\"";
      if (!v.values.empty()) v.detail += " (" + describe_values(v) + ")";
      out.push_back(std::move(v));
    }
  }

  for (const auto& [label, conditions] : spec.sufficient) {
    if (label == record.output.label) continue;
    for (std::size_t j = 0; j < conditions.size(); ++j) {
      auto h = eval(conditions[j], "sufficient condition", false);
      if (!h || !*h) continue;
      Violation v = make(id, ViolationKind::kSufficient, conditions[j].text, "");
      v.label = label;
      v.index = j;
      attach_values(v, conditions[j], record, false);
      v.detail = "sufficient condition for \"" + label + "\" holds but prediction is \"" +
                 record.output.label + "\"";
      if (!v.values.empty()) v.detail += " (" + describe_values(v) + ")";
      out.push_back(std::move(v));
    }
  }

  if (auto it = spec.necessary.find(record.output.label); it != spec.necessary.end()) {
    for (std::size_t j = 0; j < it->second.size(); ++j) {
      auto h = eval(it->second[j], "necessary condition", false);
      if (!h || *h) continue;
      Violation v = make(id, ViolationKind::kNecessary, it->second[j].text, "");
      v.label = it->first;
      v.index = j;
      attach_values(v, it->second[j], record, false);
      v.detail = "prediction \"" + it->first + "\" but necessary condition fails";
      if (!v.values.empty()) v.detail += " (" + describe_values(v) + ")";
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Violation> check_batch_probabilistic(const PartialSpec& spec,
                                                 std::span<const FeatureRecord> inputs,
                                                 std::string_view batch_id) {
  std::vector<Violation> out;
  const std::string bid(batch_id);
  for (const auto& pc : spec.probabilistic) {
    std::vector<double> xs;
    xs.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const FieldValue* v = inputs[i].find(pc.field);
      const double* d = v ? std::get_if<double>(v) : nullptr;
      if (d == nullptr) {
        std::string rid = inputs[i].id ? *inputs[i].id : bid + "#" + std::to_string(i);
        out.push_back(make(rid, ViolationKind::kEvalError, "probabilistic:" + pc.field,
                           v ? "field '" + pc.field + "' is not numeric"
                             : "missing field: input." + pc.field));
        continue;
      }
      xs.push_back(*d);
    }
    if (xs.empty()) continue;
    const double n = static_cast<double>(xs.size());
    if (const auto* r = std::get_if<RangeConstraint>(&pc.kind)) {
      auto outside = std::count_if(xs.begin(), xs.end(),
                                   [&](double x) { return x < r->lo || x > r->hi; });
      double fraction = static_cast<double>(outside) / n;
      if (fraction > r->max_violation_fraction) {
        Violation v = make(bid, ViolationKind::kProbabilistic,
                           "range(" + pc.field + ", " + format_number(r->lo) + ", " +
                               format_number(r->hi) + ", max " +
                               format_number(r->max_violation_fraction) + ")",
                           std::to_string(outside) + " of " + std::to_string(xs.size()) +
                               " values outside [" + format_number(r->lo) + ", " +
                               format_number(r->hi) + "]: fraction " + format_number(fraction) +
                               " > " + format_number(r->max_violation_fraction));
        out.push_back(std::move(v));
      }
    } else {
      const auto& m = std::get<MeanConstraint>(pc.kind);
      double sum = 0;
      for (double x : xs) sum += x;
      double mean = sum / n;
      if (std::abs(mean - m.expected) > m.tolerance) {
        out.push_back(make(bid, ViolationKind::kProbabilistic,
                           "mean(" + pc.field + ", " + format_number(m.expected) + ", tol " +
                               format_number(m.tolerance) + ")",
                           "empirical mean " + format_number(mean) + " over " +
                               std::to_string(xs.size()) + " values deviates from " +
                               format_number(m.expected) + " by more than " +
                               format_number(m.tolerance)));
      }
    }
  }
  return out;
}

Monitor::Monitor(const PartialSpec& spec, MonitorPolicy policy)
    : spec_(spec), policy_(policy) {
  policy_.validate();
}

void Monitor::record(std::vector<Violation>& found, const std::string& record_id) {
  const bool already_failsafe = report_.final_state == MonitorState::kFailsafe;
  bool untrusted = false;
  for (auto& v : found) {
    v.post_failsafe = already_failsafe;
    ++report_.counts[static_cast<std::size_t>(v.kind)];
    Action a = v.kind == ViolationKind::kPre ? policy_.on_pre_violation
                                             : policy_.on_post_class_violation;
    if (v.kind == ViolationKind::kPre) untrusted = true;
    MonitorState target = severity(a);
    if (target > report_.final_state) {
      report_.transitions.push_back({v.record_id, report_.final_state, target, v.kind});
      report_.final_state = target;
    }
    report_.violations.push_back(v);
  }
  if (untrusted) report_.untrusted.push_back(record_id);
}

std::vector<Violation> Monitor::flush_window() {
  std::string id = "window:" + std::to_string(report_.windows_evaluated);
  ++report_.windows_evaluated;
  auto found = check_batch_probabilistic(spec_, window_, id);
  window_.clear();
  return found;
}

std::vector<Violation> Monitor::observe(const TraceRecord& r) {
  if (report_.final_state == MonitorState::kFailsafe) ++report_.post_failsafe_records;
  ++report_.records_processed;
  std::vector<Violation> found = check_sample(spec_, r);
  record(found, r.id);
  const bool conforms = conformance_issues(spec_.schema, r.input).empty();
  if (!spec_.probabilistic.empty() && conforms) {
    window_.push_back(r.input);
    if (window_.size() == policy_.probabilistic_window) {
      auto batch = flush_window();
      record(batch, r.id);
      found.insert(found.end(), batch.begin(), batch.end());
    }
  }
  return found;
}

std::vector<Violation> Monitor::observe_malformed(std::string id, std::string error) {
  if (report_.final_state == MonitorState::kFailsafe) ++report_.post_failsafe_records;
  ++report_.records_processed;
  std::vector<Violation> found{make(id, ViolationKind::kEvalError, "trace", std::move(error))};
  record(found, id);
  return found;
}

MonitorReport run_trace(const PartialSpec& spec, std::span<const TraceRecord> trace,
                        const MonitorPolicy& policy) {
  Monitor m(spec, policy);
  for (const auto& r : trace) m.observe(r);
  return m.report();
}

TraceRecord trace_record_from_json(const Json& j, std::string_view where) {
  expect_object(j, where, {"id", "input", "output"});
  TraceRecord r;
  if (auto it = j.find("id"); it != j.end()) r.id = get_string(*it, std::string(where) + "/id");
  r.input = record_from_json(require_key(j, "input", where), std::string(where) + "/input");
  r.input.id = r.id;
  r.output = prediction_from_json(require_key(j, "output", where), std::string(where) + "/output");
  return r;
}

Json to_json(const TraceRecord& r) {
  return Json{{"id", r.id}, {"input", to_json(r.input)}, {"output", to_json(r.output)}};
}

MonitorReport run_trace_text(const PartialSpec& spec, std::string_view jsonl,
                             const MonitorPolicy& policy) {
  Monitor m(spec, policy);
  for (const auto& line : parse_jsonl(jsonl)) {
    const std::string line_id = "line:" + std::to_string(line.line);
    if (!line.error.empty()) {
      m.observe_malformed(line_id, "malformed JSON: " + line.error);
      continue;
    }
    TraceRecord r;
    try {
      r = trace_record_from_json(line.value, line_id);
    } catch (const Error& e) {
      m.observe_malformed(line_id, e.what());
      continue;
    }
    if (r.id.empty()) r.id = line_id;
    m.observe(r);
  }
  return m.report();
}

MonitorReport run_trace_file(const PartialSpec& spec, const std::filesystem::path& path,
                             const MonitorPolicy& policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open trace " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return run_trace_text(spec, text, policy);
}

}  // namespace specguard
