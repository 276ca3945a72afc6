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

#include "specguard/specguard.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "specguard/dataset.hpp"
#include "specguard/error.hpp"
#include "specguard/json_io.hpp"
#include "specguard/monitor.hpp"
#include "specguard/patterns.hpp"
#include "specguard/process.hpp"
#include "specguard/spec.hpp"
#include "specguard/speclang.hpp"

using namespace specguard;

struct sg_spec {
  std::shared_ptr<const PartialSpec> spec;
};

struct sg_classifier {
  ClassifierPtr classifier;
};

struct sg_monitor {
  std::shared_ptr<const PartialSpec> spec;
  MonitorPolicy policy;
  std::unique_ptr<Monitor> monitor;
  std::size_t observed = 0;
};

struct sg_catalog {
  std::vector<Method> methods;
};

namespace {

thread_local std::string g_error_message;
thread_local std::string g_error_detail = "[]";

sg_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return SG_ERR_SYNTAX;
    case ErrorCode::kType: return SG_ERR_TYPE;
    case ErrorCode::kEval: return SG_ERR_EVAL;
    case ErrorCode::kSchema: return SG_ERR_SCHEMA;
    case ErrorCode::kSpec: return SG_ERR_SPEC;
    case ErrorCode::kClassifier: return SG_ERR_CLASSIFIER;
    case ErrorCode::kPattern: return SG_ERR_PATTERN;
    case ErrorCode::kConfig: return SG_ERR_CONFIG;
    case ErrorCode::kIo: return SG_ERR_IO;
    case ErrorCode::kFormat: return SG_ERR_FORMAT;
  }
  return SG_ERR_INTERNAL;
}

sg_status fail(sg_status status, std::string message, const std::vector<std::string>& details = {}) {
  g_error_message = std::move(message);
  g_error_detail = Json(details).dump();
  return status;
}

struct InvalidArgument {
  const char* what;
};

template <typename F>
sg_status guard(F&& f) {
  try {
    f();
    g_error_message.clear();
    g_error_detail = "[]";
    return SG_OK;
  } catch (const InvalidArgument& e) {
    return fail(SG_ERR_INVALID_ARGUMENT, e.what);
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what(), e.details());
  } catch (const nlohmann::json::exception& e) {
    return fail(SG_ERR_FORMAT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SG_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw InvalidArgument{what};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const Json& j, const std::string& text, int format) {
  *out = dup(format == SG_FORMAT_TEXT ? text : dump_pretty(j));
}

void set_findings(int* findings, std::size_t n) {
  if (findings != nullptr) *findings = static_cast<int>(n);
}

void check_format(int format) {
  if (format != SG_FORMAT_JSON && format != SG_FORMAT_TEXT)
    throw InvalidArgument{"format must be SG_FORMAT_JSON or SG_FORMAT_TEXT"};
}

Json parse_json_arg(const char* text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormat, std::string(what) + ": " + e.what());
  }
}

Json value_json(const Value& v) {
  return std::visit([](const auto& x) { return Json(x); }, v);
}

Json violations_json(const std::vector<Violation>& vs) {
  MonitorReport tmp;
  tmp.violations = vs;
  return to_json(tmp, MonitorPolicy{})["violations"];
}

}  // namespace

extern "C" {

const char* sg_version(void) { return "0.1.0"; }

const char* sg_status_name(sg_status status) {
  switch (status) {
    case SG_OK: return "OK";
    case SG_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case SG_ERR_SYNTAX: return "SYNTAX";
    case SG_ERR_TYPE: return "TYPE";
    case SG_ERR_EVAL: return "EVAL";
    case SG_ERR_SCHEMA: return "SCHEMA";
    case SG_ERR_SPEC: return "SPEC";
    case SG_ERR_CLASSIFIER: return "CLASSIFIER";
    case SG_ERR_PATTERN: return "PATTERN";
    case SG_ERR_CONFIG: return "CONFIG";
    case SG_ERR_IO: return "IO";
    case SG_ERR_FORMAT: return "FORMAT";
    case SG_ERR_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

const char* sg_last_error_message(void) { return g_error_message.c_str(); }
const char* sg_last_error_detail(void) { return g_error_detail.c_str(); }
void sg_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- expressions

sg_status sg_expr_check(const char* text, const char* schema_json, int allow_output, char** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    Expression e = parse(text);
    Json result{{"canonical", print(e)}, {"type", nullptr}, {"errors", Json::array()}};
    if (schema_json != nullptr) {
      Schema schema = schema_from_json(parse_json_arg(schema_json, "schema"));
      TypeCheckResult tc = typecheck(e, schema, allow_output != 0);
      if (tc.type) result["type"] = to_string(*tc.type);
      result["errors"] = tc.errors;
    }
    *out = dup(result.dump());
  });
}

sg_status sg_expr_eval(const char* text, const char* input_json, const char* output_json,
                       char** out) {
  return guard([&] {
    need(text, "text");
    need(input_json, "input_json");
    need(out, "out");
    Expression e = parse(text);
    FeatureRecord input = record_from_json(parse_json_arg(input_json, "input"), "/input");
    std::optional<Prediction> pred;
    if (output_json != nullptr)
      pred = prediction_from_json(parse_json_arg(output_json, "output"), "/output");
    Value v = evaluate(e, EvalContext{input, pred ? &*pred : nullptr});
    *out = dup(Json{{"value", value_json(v)}}.dump());
  });
}

// ---------------------------------------------------------------- specs

sg_status sg_spec_load(const char* path, sg_spec** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto s = std::make_unique<sg_spec>();
    s->spec = std::make_shared<const PartialSpec>(load_spec(path));
    *out = s.release();
  });
}

sg_status sg_spec_from_json(const char* json, sg_spec** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    auto s = std::make_unique<sg_spec>();
    s->spec = std::make_shared<const PartialSpec>(spec_from_json(parse_json_arg(json, "spec")));
    *out = s.release();
  });
}

void sg_spec_free(sg_spec* spec) { delete spec; }

sg_status sg_spec_validate(const sg_spec* spec, const char* samples_path, int format, char** out,
                           int* findings) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    check_format(format);
    std::vector<FeatureRecord> samples;
    if (samples_path != nullptr) samples = load_domain(samples_path);
    WellFormednessReport r = validate_spec(*spec->spec, samples);
    emit(out, to_json(r), render_text(r), format);
    set_findings(findings, r.static_issues.size() + r.conflicts.size() + r.no_output.size() +
                               r.errors.size());
  });
}

sg_status sg_spec_metamorphic(const sg_spec* spec, const sg_classifier* classifier,
                              const char* domain_path, int format, char** out, int* findings) {
  return guard([&] {
    need(spec, "spec");
    need(classifier, "classifier");
    need(domain_path, "domain_path");
    need(out, "out");
    check_format(format);
    require_well_formed(*spec->spec);
    std::vector<FeatureRecord> domain = load_domain(domain_path);
    MetamorphicReport r = check_metamorphic(*spec->spec, *classifier->classifier, domain);
    emit(out, to_json(r), render_text(r), format);
    set_findings(findings, r.failures.size() + r.errors.size());
  });
}

// ---------------------------------------------------------------- classifiers

sg_status sg_classifier_load(const char* path, sg_classifier** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto c = std::make_unique<sg_classifier>();
    c->classifier = load_classifier(path);
    *out = c.release();
  });
}

sg_status sg_classifier_from_json(const char* json, const char* base_dir, sg_classifier** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    auto c = std::make_unique<sg_classifier>();
    c->classifier = classifier_from_json(parse_json_arg(json, "classifier"),
                                         base_dir ? std::filesystem::path(base_dir)
                                                  : std::filesystem::path());
    *out = c.release();
  });
}

void sg_classifier_free(sg_classifier* classifier) { delete classifier; }

sg_status sg_classifier_classify(const sg_classifier* classifier, const char* input_json,
                                 char** out) {
  return guard([&] {
    need(classifier, "classifier");
    need(input_json, "input_json");
    need(out, "out");
    FeatureRecord input = record_from_json(parse_json_arg(input_json, "input"), "/input");
    *out = dup(to_json(classifier->classifier->classify(input)).dump());
  });
}

// ---------------------------------------------------------------- monitor

sg_status sg_monitor_create(const sg_spec* spec, const char* policy_json, sg_monitor** out) {
  return guard([&] {
    need(spec, "spec");
    need(out, "out");
    require_well_formed(*spec->spec);
    auto m = std::make_unique<sg_monitor>();
    m->spec = spec->spec;
    if (policy_json != nullptr) m->policy = policy_from_json(parse_json_arg(policy_json, "policy"));
    m->monitor = std::make_unique<Monitor>(*m->spec, m->policy);
    *out = m.release();
  });
}

void sg_monitor_free(sg_monitor* monitor) { delete monitor; }

sg_status sg_monitor_observe(sg_monitor* monitor, const char* record_json, char** out) {
  return guard([&] {
    need(monitor, "monitor");
    need(record_json, "record_json");
    need(out, "out");
    const std::string id = "line:" + std::to_string(++monitor->observed);
    std::vector<Violation> found;
    Json j;
    try {
      j = Json::parse(record_json);
    } catch (const nlohmann::json::parse_error& e) {
      found = monitor->monitor->observe_malformed(id, std::string("malformed JSON: ") + e.what());
      *out = dup(violations_json(found).dump());
      return;
    }
    TraceRecord r;
    try {
      r = trace_record_from_json(j, id);
    } catch (const Error& e) {
      found = monitor->monitor->observe_malformed(id, e.what());
      *out = dup(violations_json(found).dump());
      return;
    }
    if (r.id.empty()) r.id = id;
    found = monitor->monitor->observe(r);
    *out = dup(violations_json(found).dump());
  });
}

const char* sg_monitor_state(const sg_monitor* monitor) {
  return monitor ? to_string(monitor->monitor->state()) : "";
}

sg_status sg_monitor_report(const sg_monitor* monitor, int format, char** out, int* findings) {
  return guard([&] {
    need(monitor, "monitor");
    need(out, "out");
    check_format(format);
    const MonitorReport& r = monitor->monitor->report();
    emit(out, to_json(r, monitor->policy), render_text(r), format);
    set_findings(findings, r.violations.size());
  });
}

sg_status sg_monitor_run(const sg_spec* spec, const char* trace_path, const char* policy_path,
                         int format, char** out, int* findings) {
  return guard([&] {
    need(spec, "spec");
    need(trace_path, "trace_path");
    need(out, "out");
    check_format(format);
    require_well_formed(*spec->spec);
    MonitorPolicy policy;
    if (policy_path != nullptr) policy = policy_from_json(read_json_file(policy_path));
    MonitorReport r = run_trace_file(*spec->spec, trace_path, policy);
    emit(out, to_json(r, policy), render_text(r), format);
    set_findings(findings, r.violations.size());
  });
}

// ---------------------------------------------------------------- data sets

namespace {

DataSetRequirements load_requirements(const char* path) {
  Json j = read_json_file(path);
  try {
    return requirements_from_json(j);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(path) + ": " + e.what(), e.details());
  }
}

}  // namespace

sg_status sg_dataset_coverage(const char* data_path, const char* requirements_path, int format,
                              char** out, int* findings) {
  return guard([&] {
    need(data_path, "data_path");
    need(requirements_path, "requirements_path");
    need(out, "out");
    check_format(format);
    auto data = load_dataset(data_path);
    CoverageReport r = coverage_report(data, load_requirements(requirements_path));
    emit(out, to_json(r), render_text(r), format);
    set_findings(findings, r.pass ? 0 : 1);
  });
}

sg_status sg_dataset_verify(const sg_spec* spec, const char* data_path,
                            const char* requirements_path, int format, char** out,
                            int* findings) {
  return guard([&] {
    need(spec, "spec");
    need(data_path, "data_path");
    need(out, "out");
    check_format(format);
    require_well_formed(*spec->spec);
    DataSetRequirements reqs;
    if (requirements_path != nullptr) reqs = load_requirements(requirements_path);
    auto data = load_dataset(data_path);
    ComplianceReport r = verify_dataset(data, reqs, *spec->spec);
    emit(out, to_json(r), render_text(r), format);
    set_findings(findings, r.pass ? 0 : 1);
  });
}

sg_status sg_dataset_boundary(const char* data_path, const char* requirements_path,
                              const char* partitioning, double epsilon, int format, char** out,
                              int* findings) {
  return guard([&] {
    need(data_path, "data_path");
    need(requirements_path, "requirements_path");
    need(out, "out");
    check_format(format);
    DataSetRequirements reqs = load_requirements(requirements_path);
    auto data = load_dataset(data_path);
    Json reports = Json::array();
    std::string text;
    std::size_t cases = 0;
    bool matched = false;
    for (const auto& p : reqs.partitionings) {
      if (partitioning != nullptr && p.name != partitioning) continue;
      matched = true;
      BoundaryReport r = boundary_cases(p, data, epsilon);
      cases += r.cases.size();
      Json jr = to_json(r);
      jr["partitioning"] = p.name;
      reports.push_back(std::move(jr));
      for (const auto& c : r.cases)
        text += p.name + "/" + c.partition + " " + c.id + " " + c.field + " distance " +
                format_number(c.distance) + "\n";
      for (const auto& s : r.skipped) text += "notice: " + s + "\n";
      for (const auto& e : r.errors) text += "error " + e.id + ": " + e.message + "\n";
    }
    if (partitioning != nullptr && !matched)
      throw Error(ErrorCode::kConfig, std::string("no partitioning named '") + partitioning + "'");
    emit(out, Json{{"epsilon", epsilon}, {"partitionings", std::move(reports)}}, text, format);
    set_findings(findings, cases);
  });
}

sg_status sg_dataset_augment(const sg_spec* spec, const char* data_path, const char* out_path,
                             int format, char** out, int* findings) {
  return guard([&] {
    need(spec, "spec");
    need(data_path, "data_path");
    need(out, "out");
    check_format(format);
    require_well_formed(*spec->spec);
    auto data = load_dataset(data_path);
    AugmentResult r = augment(data, *spec->spec);
    if (out_path != nullptr) write_text_file(out_path, dump_dataset(r.records));
    std::string text = "originals " + std::to_string(r.originals) + ", added " +
                       std::to_string(r.added) + ", duplicates " + std::to_string(r.duplicates) +
                       ", errors " + std::to_string(r.errors.size()) + "\n";
    for (const auto& e : r.errors) text += "error " + e.source_id + " " + e.transform + ": " + e.message + "\n";
    emit(out, to_json(r, out_path == nullptr), text, format);
    set_findings(findings, r.errors.size());
  });
}

sg_status sg_dataset_split(const char* data_path, const double ratios[3], uint64_t seed,
                           const char* stratify_path, const char* out_dir, int format,
                           char** out) {
  return guard([&] {
    need(data_path, "data_path");
    need(ratios, "ratios");
    need(out, "out");
    check_format(format);
    SplitSpec spec;
    spec.ratios = {ratios[0], ratios[1], ratios[2]};
    spec.seed = seed;
    if (stratify_path != nullptr)
      spec.stratify_by = partitioning_from_json(read_json_file(stratify_path), stratify_path);
    auto data = load_dataset(data_path);
    SplitResult r = split(data, spec);
    if (out_dir != nullptr) {
      std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      write_text_file(dir / "train.jsonl", dump_dataset(r.train()));
      write_text_file(dir / "validation.jsonl", dump_dataset(r.validation()));
      write_text_file(dir / "test.jsonl", dump_dataset(r.test()));
    }
    emit(out, to_json(r, false), render_text(r), format);
  });
}

sg_status sg_dataset_uncertainty(const sg_spec* spec, const char* known_path,
                                 const char* probes_path, int max_depth, int format, char** out) {
  return guard([&] {
    need(spec, "spec");
    need(known_path, "known_path");
    need(probes_path, "probes_path");
    need(out, "out");
    check_format(format);
    if (max_depth < 0) throw Error(ErrorCode::kConfig, "max_depth must be >= 0");
    require_well_formed(*spec->spec);
    auto known = load_dataset(known_path);
    auto probes = load_domain(probes_path);
    std::vector<Equivariant> steps;
    for (const auto& t : spec->spec->invariants) steps.push_back({t, OutputTransform{}});
    for (const auto& eq : spec->spec->equivariants) steps.push_back(eq);
    UncertaintyReport r = categorize_uncertainty(known, probes, std::span<const Equivariant>(steps),
                                                 static_cast<std::size_t>(max_depth));
    emit(out, to_json(r), render_text(r), format);
  });
}

// ---------------------------------------------------------------- patterns

sg_status sg_patterns_simulate(const char* harness_path, const char* domain_path,
                               const char* oracle_path, int format, char** out, int* findings) {
  return guard([&] {
    need(harness_path, "harness_path");
    need(domain_path, "domain_path");
    need(oracle_path, "oracle_path");
    need(out, "out");
    check_format(format);
    Harness h = load_harness(harness_path);
    auto domain = load_domain(domain_path);
    ClassifierPtr oracle = load_classifier(oracle_path);
    ErrorReport r = simulate(domain, *oracle, *h.subject);
    emit(out, to_json(r), render_text(r), format);
    set_findings(findings, r.mismatch_count);
  });
}

// ---------------------------------------------------------------- process

sg_status sg_catalog_load(const char* path, sg_catalog** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    auto c = std::make_unique<sg_catalog>();
    try {
      c->methods = load_catalog(path);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what(), e.details());
    }
    *out = c.release();
  });
}

void sg_catalog_free(sg_catalog* catalog) { delete catalog; }

sg_status sg_catalog_score(const sg_catalog* catalog, const char* condition, const char* asil,
                           const char* method_type, int format, char** out) {
  return guard([&] {
    need(catalog, "catalog");
    need(condition, "condition");
    need(out, "out");
    check_format(format);
    ScoringCondition c = parse_condition(condition);
    std::vector<Method> methods = catalog->methods;
    Json result{{"condition", to_string(c)}};
    if (method_type != nullptr) {
      MethodType t = parse_method_type(method_type);
      methods = filter_by_type(catalog->methods, t);
      result["method_type"] = to_string(t);
    }
    result["methods"] = methods.size();
    std::string text;
    if (asil != nullptr) {
      Asil a = parse_asil(asil);
      Rational s = score(methods, c, a);
      result["asil"] = to_string(a);
      result["score"] = to_json(s);
      text = s.to_decimal(12) + "\n";
    } else {
      Json scores = Json::object();
      for (Asil a : kAllAsils) {
        Rational s = score(methods, c, a);
        scores[to_string(a)] = to_json(s);
        text += std::string(to_string(a)) + " " + s.to_decimal(12) + " (" + s.to_fraction() + ")\n";
      }
      result["scores"] = std::move(scores);
    }
    emit(out, result, text, format);
  });
}

sg_status sg_catalog_impact(const sg_catalog* catalog, int format, char** out) {
  return guard([&] {
    need(catalog, "catalog");
    need(out, "out");
    check_format(format);
    ImpactTable t = impact_table(catalog->methods);
    Json j = to_json(t);
    j["full_catalog"] = is_full_catalog(catalog->methods);
    emit(out, j, render_text(t), format);
  });
}

sg_status sg_catalog_census(const sg_catalog* catalog, int format, char** out) {
  return guard([&] {
    need(catalog, "catalog");
    need(out, "out");
    check_format(format);
    auto rows = census(catalog->methods);
    std::string text;
    for (const auto& r : rows)
      text += std::string(display_name(r.category)) + ": " + std::to_string(r.actual) + "/" +
              std::to_string(r.expected) + "\n";
    emit(out, Json{{"total", catalog->methods.size()},
                   {"expected_total", kFullCatalogSize},
                   {"categories", to_json(std::span<const CensusRow>(rows))}},
         text, format);
  });
}

sg_status sg_gate_assess(const char* questionnaire_path, int format, char** out) {
  return guard([&] {
    need(questionnaire_path, "questionnaire_path");
    need(out, "out");
    check_format(format);
    GateDecision d = gate_assess(questionnaire_from_json(read_json_file(questionnaire_path)));
    emit(out, to_json(d), render_text(d), format);
  });
}

sg_status sg_diagnose(const char* failure_path, const char* phase_hint, int format, char** out) {
  return guard([&] {
    need(failure_path, "failure_path");
    need(out, "out");
    check_format(format);
    FailureRecord f = failure_from_json(read_json_file(failure_path));
    if (phase_hint != nullptr) f.phase = phase_hint;
    DiagnosisPlan p = diagnose(f);
    emit(out, to_json(p), render_text(p), format);
  });
}

sg_status sg_safetycase_check(const char* graph_path, int format, char** out, int* findings) {
  return guard([&] {
    need(graph_path, "graph_path");
    need(out, "out");
    check_format(format);
    SafetyCaseGraph g = graph_from_json(read_json_file(graph_path));
    TraceOptions opts;
    opts.artifact_root = std::filesystem::path(graph_path).parent_path();
    GapReport r = trace_check(g, opts);
    emit(out, to_json(r), render_text(r), format);
    set_findings(findings, r.gaps.size());
  });
}

}  // extern "C"
