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

// specguard command-line front end over the C interface.
//
// Exit codes: 0 success without findings, 1 findings, 2 usage, I/O or parse
// error. Errors go to stderr as {"error": ..., "detail": [...]}.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "specguard/specguard.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string message;
  std::string detail_json = "[]";
};

void report_error(const std::string& message, const std::string& detail_json) {
  nlohmann::ordered_json j;
  j["error"] = message;
  try {
    j["detail"] = nlohmann::ordered_json::parse(detail_json);
  } catch (const nlohmann::json::exception&) {
    j["detail"] = detail_json;
  }
  std::cerr << j.dump() << "\n";
}

void check(sg_status s) {
  if (s != SG_OK)
    throw Failure{std::string(sg_status_name(s)) + ": " + sg_last_error_message(),
                  sg_last_error_detail()};
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { sg_string_free(p); }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

using SpecHandle = Handle<sg_spec, sg_spec_free>;
using ClassifierHandle = Handle<sg_classifier, sg_classifier_free>;
using CatalogHandle = Handle<sg_catalog, sg_catalog_free>;

const char* opt(const std::optional<std::string>& s) { return s ? s->c_str() : nullptr; }

struct Options {
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> spec;
  std::string positional_spec;
  std::optional<std::string> samples, trace, policy, data, requirements, out, out_dir, stratify;
  std::optional<std::string> known, probes, harness, domain, oracle, classifier;
  std::optional<std::string> catalog, condition, asil, method_type;
  std::optional<std::string> questionnaire, failure, phase, graph, partitioning;
  std::string ratios = "0.6,0.2,0.2";
  int depth = 1;
  double epsilon = 0.0;
};

int fmt(const Options& o) { return o.format == "text" ? SG_FORMAT_TEXT : SG_FORMAT_JSON; }

std::string spec_path(const Options& o) {
  if (!o.positional_spec.empty()) return o.positional_spec;
  if (o.spec) return *o.spec;
  if (const char* env = std::getenv("SPECGUARD_SPEC"); env != nullptr && *env != '\0') return env;
  throw Failure{"no spec given: pass --spec or set SPECGUARD_SPEC"};
}

void load_spec(const Options& o, SpecHandle& h) { check(sg_spec_load(spec_path(o).c_str(), &h.p)); }

int finish(const OwnedString& out, int findings, bool findings_fail = true) {
  std::cout << out.p;
  if (out.p[0] != '\0' && out.p[std::char_traits<char>::length(out.p) - 1] != '\n') std::cout << "\n";
  return findings_fail && findings > 0 ? kExitFindings : kExitOk;
}

std::vector<double> parse_ratios(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw Failure{"--ratios: '" + piece + "' is not a number"};
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != 3) throw Failure{"--ratios needs three comma-separated values"};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specguard: partial specifications, runtime monitors, data-set checks and "
               "process tooling for ML components"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.set_version_flag("--version", std::string(sg_version()));

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, std::function<int()> fn) {
    sub->callback([&action, fn] { action = fn; });
  };
  auto spec_opt = [&](CLI::App* sub) {
    return sub->add_option("--spec", o.spec, "Partial specification (default: $SPECGUARD_SPEC)");
  };

  // spec
  auto* spec = app.add_subcommand("spec", "Partial specification checks");
  spec->require_subcommand(1);
  auto* spec_validate = spec->add_subcommand("validate", "Check that a spec is well formed");
  spec_validate->add_option("spec", o.positional_spec, "Spec file (default: $SPECGUARD_SPEC)");
  spec_validate->add_option("--samples", o.samples, "Sample inputs (JSON Lines or domain file)");
  bind(spec_validate, [&] {
    SpecHandle s;
    load_spec(o, s);
    OwnedString out;
    int findings = 0;
    check(sg_spec_validate(s.p, opt(o.samples), fmt(o), &out.p, &findings));
    return finish(out, findings);
  });
  auto* spec_meta = spec->add_subcommand("metamorphic", "Check invariants and equivariants on a domain");
  spec_opt(spec_meta);
  spec_meta->add_option("--classifier", o.classifier, "Classifier under test")->required();
  spec_meta->add_option("--domain", o.domain, "Input domain")->required();
  bind(spec_meta, [&] {
    SpecHandle s;
    load_spec(o, s);
    ClassifierHandle c;
    check(sg_classifier_load(o.classifier->c_str(), &c.p));
    OwnedString out;
    int findings = 0;
    check(sg_spec_metamorphic(s.p, c.p, o.domain->c_str(), fmt(o), &out.p, &findings));
    return finish(out, findings);
  });

  // monitor
  auto* monitor = app.add_subcommand("monitor", "Runtime monitoring");
  monitor->require_subcommand(1);
  auto* monitor_run = monitor->add_subcommand("run", "Check a recorded trace against a spec");
  spec_opt(monitor_run);
  monitor_run->add_option("--trace", o.trace, "Trace file (JSON Lines)")->required();
  monitor_run->add_option("--policy", o.policy, "Monitor policy file");
  bind(monitor_run, [&] {
    SpecHandle s;
    load_spec(o, s);
    OwnedString out;
    int findings = 0;
    check(sg_monitor_run(s.p, o.trace->c_str(), opt(o.policy), fmt(o), &out.p, &findings));
    return finish(out, findings);
  });

  // dataset
  auto* dataset = app.add_subcommand("dataset", "Data-set requirements and tooling");
  dataset->require_subcommand(1);
  auto* ds_cov = dataset->add_subcommand("coverage", "Partition coverage against requirements");
  ds_cov->add_option("--data", o.data, "Data set (JSON Lines)")->required();
  ds_cov->add_option("--requirements", o.requirements, "Data-set requirements")->required();
  bind(ds_cov, [&] {
    OwnedString out;
    int findings = 0;
    check(sg_dataset_coverage(o.data->c_str(), o.requirements->c_str(), fmt(o), &out.p, &findings));
    return finish(out, findings);
  });
  auto* ds_verify = dataset->add_subcommand("verify", "Schema, label and coverage compliance");
  spec_opt(ds_verify);
  ds_verify->add_option("--data", o.data, "Data set (JSON Lines)")->required();
  ds_verify->add_option("--requirements", o.requirements, "Data-set requirements");
  bind(ds_verify, [&] {
    SpecHandle s;
    load_spec(o, s);
    OwnedString out;
    int findings = 0;
    check(sg_dataset_verify(s.p, o.data->c_str(), opt(o.requirements), fmt(o), &out.p, &findings));
    return finish(out, findings);
  });
  auto* ds_boundary = dataset->add_subcommand("boundary", "List records near partition thresholds");
  ds_boundary->add_option("--data", o.data, "Data set (JSON Lines)")->required();
  ds_boundary->add_option("--requirements", o.requirements, "Data-set requirements")->required();
  ds_boundary->add_option("--partitioning", o.partitioning, "Restrict to one partitioning");
  ds_boundary->add_option("--epsilon", o.epsilon, "Distance threshold")->required()->check(CLI::NonNegativeNumber);
  bind(ds_boundary, [&] {
    OwnedString out;
    int findings = 0;
    check(sg_dataset_boundary(o.data->c_str(), o.requirements->c_str(), opt(o.partitioning),
                              o.epsilon, fmt(o), &out.p, &findings));
    return finish(out, findings, false);
  });
  auto* ds_aug = dataset->add_subcommand("augment", "Augment via invariants and equivariants");
  spec_opt(ds_aug);
  ds_aug->add_option("--data", o.data, "Data set (JSON Lines)")->required();
  ds_aug->add_option("--out", o.out, "Write the augmented data set here");
  bind(ds_aug, [&] {
    SpecHandle s;
    load_spec(o, s);
    OwnedString out;
    int findings = 0;
    check(sg_dataset_augment(s.p, o.data->c_str(), opt(o.out), fmt(o), &out.p, &findings));
    return finish(out, findings);
  });
  auto* ds_split = dataset->add_subcommand("split", "Deterministic train/validation/test split");
  ds_split->add_option("--data", o.data, "Data set (JSON Lines)")->required();
  ds_split->add_option("--ratios", o.ratios, "train,validation,test")->capture_default_str();
  ds_split->add_option("--seed", o.seed, "Shuffle seed")->required();
  ds_split->add_option("--stratify", o.stratify, "Partitioning file to stratify by");
  ds_split->add_option("--out-dir", o.out_dir, "Write train/validation/test JSON Lines here");
  bind(ds_split, [&] {
    std::vector<double> r = parse_ratios(o.ratios);
    OwnedString out;
    check(sg_dataset_split(o.data->c_str(), r.data(), *o.seed, opt(o.stratify), opt(o.out_dir),
                           fmt(o), &out.p));
    return finish(out, 0);
  });
  auto* ds_unc = dataset->add_subcommand("uncertainty", "Categorize probes as known or unknown");
  spec_opt(ds_unc);
  ds_unc->add_option("--known", o.known, "Known data set (JSON Lines)")->required();
  ds_unc->add_option("--probes", o.probes, "Probe inputs")->required();
  ds_unc->add_option("--depth", o.depth, "Maximum transformation depth")->check(CLI::Range(0, 4))->capture_default_str();
  bind(ds_unc, [&] {
    SpecHandle s;
    load_spec(o, s);
    OwnedString out;
    check(sg_dataset_uncertainty(s.p, o.known->c_str(), o.probes->c_str(), o.depth, fmt(o), &out.p));
    return finish(out, 0);
  });

  // patterns
  auto* patterns = app.add_subcommand("patterns", "Fault-tolerance patterns");
  patterns->require_subcommand(1);
  auto* simulate = patterns->add_subcommand("simulate", "Compare a pattern against an oracle");
  simulate->add_option("--harness", o.harness, "Harness file")->required();
  simulate->add_option("--domain", o.domain, "Input domain")->required();
  simulate->add_option("--oracle", o.oracle, "Oracle classifier")->required();
  bind(simulate, [&] {
    OwnedString out;
    int findings = 0;
    check(sg_patterns_simulate(o.harness->c_str(), o.domain->c_str(), o.oracle->c_str(), fmt(o),
                               &out.p, &findings));
    return finish(out, findings, false);
  });

  // catalog
  auto* catalog = app.add_subcommand("catalog", "Method catalogs and impact scores");
  catalog->require_subcommand(1);
  auto* score = catalog->add_subcommand("score", "Weighted fraction of usable methods");
  score->add_option("--catalog", o.catalog, "Catalog file")->required();
  score->add_option("--condition", o.condition, "no-spec or no-interp")
      ->required()
      ->check(CLI::IsMember({"no-spec", "no-interp"}));
  score->add_option("--asil", o.asil, "A, B, C or D (default: all)");
  score->add_option("--type", o.method_type, "Restrict to one method type");
  bind(score, [&] {
    CatalogHandle c;
    check(sg_catalog_load(o.catalog->c_str(), &c.p));
    OwnedString out;
    check(sg_catalog_score(c.p, o.condition->c_str(), opt(o.asil), opt(o.method_type), fmt(o), &out.p));
    return finish(out, 0);
  });
  auto* impact = catalog->add_subcommand("impact", "Mean and deviation of scores over ASILs");
  impact->add_option("--catalog", o.catalog, "Catalog file")->required();
  bind(impact, [&] {
    CatalogHandle c;
    check(sg_catalog_load(o.catalog->c_str(), &c.p));
    OwnedString out;
    check(sg_catalog_impact(c.p, fmt(o), &out.p));
    return finish(out, 0);
  });
  auto* cens = catalog->add_subcommand("census", "Methods per category");
  cens->add_option("--catalog", o.catalog, "Catalog file")->required();
  bind(cens, [&] {
    CatalogHandle c;
    check(sg_catalog_load(o.catalog->c_str(), &c.p));
    OwnedString out;
    check(sg_catalog_census(c.p, fmt(o), &out.p));
    return finish(out, 0);
  });

  // gate, diagnose, safetycase
  auto* gate = app.add_subcommand("gate", "ML decision gate");
  gate->require_subcommand(1);
  auto* assess = gate->add_subcommand("assess", "Decide whether ML is warranted");
  assess->add_option("--questionnaire", o.questionnaire, "Questionnaire file")->required();
  bind(assess, [&] {
    OwnedString out;
    check(sg_gate_assess(o.questionnaire->c_str(), fmt(o), &out.p));
    return finish(out, 0);
  });
  auto* diag = app.add_subcommand("diagnose", "Ordered questions for repairing a failure");
  diag->add_option("--failure", o.failure, "Failure record file")->required();
  diag->add_option("--phase", o.phase, "Phase hint (overrides the file)");
  bind(diag, [&] {
    OwnedString out;
    check(sg_diagnose(o.failure->c_str(), opt(o.phase), fmt(o), &out.p));
    return finish(out, 0);
  });
  auto* sc = app.add_subcommand("safetycase", "Safety-case traceability");
  sc->require_subcommand(1);
  auto* sc_check = sc->add_subcommand("check", "Report traceability gaps");
  sc_check->add_option("--graph", o.graph, "Safety-case graph file")->required();
  bind(sc_check, [&] {
    OwnedString out;
    int findings = 0;
    check(sg_safetycase_check(o.graph->c_str(), fmt(o), &out.p, &findings));
    return finish(out, findings);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage: " + std::string(e.what()), "[]");
    return kExitError;
  }

  try {
    return action ? action() : kExitError;
  } catch (const Failure& f) {
    report_error(f.message, f.detail_json);
    return kExitError;
  }
}
