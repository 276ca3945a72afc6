/* Copyright 2026 The specguard Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to specguard.
 *
 * Conventions:
 *  - Every operation returns an sg_status. On failure the thread-local
 *    sg_last_error_message() / sg_last_error_detail() describe the cause.
 *  - Output strings are heap-allocated and released with sg_string_free().
 *  - `format` is SG_FORMAT_JSON or SG_FORMAT_TEXT.
 *  - `findings`, when non-NULL, receives the number of findings (violations,
 *    gaps, failed checks); 0 means clean.
 *  - Nullable parameters are marked; all others must be non-NULL.
 */

#ifndef SPECGUARD_SPECGUARD_H_
#define SPECGUARD_SPECGUARD_H_

#include <stdint.h>

#if defined(SPECGUARD_BUILDING_LIBRARY)
#define SG_API __attribute__((visibility("default")))
#else
#define SG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_INVALID_ARGUMENT = 1,
  SG_ERR_SYNTAX = 2,
  SG_ERR_TYPE = 3,
  SG_ERR_EVAL = 4,
  SG_ERR_SCHEMA = 5,
  SG_ERR_SPEC = 6,
  SG_ERR_CLASSIFIER = 7,
  SG_ERR_PATTERN = 8,
  SG_ERR_CONFIG = 9,
  SG_ERR_IO = 10,
  SG_ERR_FORMAT = 11,
  SG_ERR_INTERNAL = 12
} sg_status;

enum { SG_FORMAT_JSON = 0, SG_FORMAT_TEXT = 1 };

typedef struct sg_spec sg_spec;
typedef struct sg_classifier sg_classifier;
typedef struct sg_monitor sg_monitor;
typedef struct sg_catalog sg_catalog;

/* ---- library ---- */

SG_API const char* sg_version(void);
SG_API const char* sg_status_name(sg_status status);
/* Message of the last failed call on this thread; "" after a success. */
SG_API const char* sg_last_error_message(void);
/* JSON array of detail strings for the last failed call; "[]" if none. */
SG_API const char* sg_last_error_detail(void);
SG_API void sg_string_free(char* s);

/* ---- expressions ---- */

/* out: {"canonical", "type", "errors"}; schema_json (nullable) enables typechecking,
 * allow_output permits output.* references. */
SG_API sg_status sg_expr_check(const char* text, const char* schema_json, int allow_output,
                               char** out);
/* out: {"value": ...}; output_json (nullable) is a prediction object. */
SG_API sg_status sg_expr_eval(const char* text, const char* input_json, const char* output_json,
                              char** out);

/* ---- partial specifications ---- */

SG_API sg_status sg_spec_load(const char* path, sg_spec** out);
SG_API sg_status sg_spec_from_json(const char* json, sg_spec** out);
SG_API void sg_spec_free(sg_spec* spec);
/* Static checks plus sample checks over samples_path (nullable, JSON Lines). */
SG_API sg_status sg_spec_validate(const sg_spec* spec, const char* samples_path, int format,
                                  char** out, int* findings);
/* Checks every invariant and equivariant of the spec on a domain file. */
SG_API sg_status sg_spec_metamorphic(const sg_spec* spec, const sg_classifier* classifier,
                                     const char* domain_path, int format, char** out,
                                     int* findings);

/* ---- classifiers ---- */

SG_API sg_status sg_classifier_load(const char* path, sg_classifier** out);
/* base_dir (nullable) resolves relative program paths and file references. */
SG_API sg_status sg_classifier_from_json(const char* json, const char* base_dir,
                                         sg_classifier** out);
SG_API void sg_classifier_free(sg_classifier* classifier);
/* out: {"label", "confidence"?} */
SG_API sg_status sg_classifier_classify(const sg_classifier* classifier, const char* input_json,
                                        char** out);

/* ---- runtime monitor ---- */

/* policy_json (nullable) uses the default policy. The spec may be freed afterwards. */
SG_API sg_status sg_monitor_create(const sg_spec* spec, const char* policy_json, sg_monitor** out);
SG_API void sg_monitor_free(sg_monitor* monitor);
/* Observes one trace record {"id"?, "input", "output"}. Undecodable records are
 * recorded as EVAL_ERROR violations. out: JSON array of the new violations. */
SG_API sg_status sg_monitor_observe(sg_monitor* monitor, const char* record_json, char** out);
/* "NOMINAL", "DEGRADED" or "FAILSAFE". */
SG_API const char* sg_monitor_state(const sg_monitor* monitor);
SG_API sg_status sg_monitor_report(const sg_monitor* monitor, int format, char** out,
                                   int* findings);
/* Runs a JSON Lines trace file; policy_path is nullable. */
SG_API sg_status sg_monitor_run(const sg_spec* spec, const char* trace_path,
                                const char* policy_path, int format, char** out, int* findings);

/* ---- data sets ---- */

SG_API sg_status sg_dataset_coverage(const char* data_path, const char* requirements_path,
                                     int format, char** out, int* findings);
SG_API sg_status sg_dataset_verify(const sg_spec* spec, const char* data_path,
                                   const char* requirements_path, int format, char** out,
                                   int* findings);
/* partitioning (nullable) restricts the check to one named partitioning. */
SG_API sg_status sg_dataset_boundary(const char* data_path, const char* requirements_path,
                                     const char* partitioning, double epsilon, int format,
                                     char** out, int* findings);
/* out_path (nullable) receives the augmented data set as JSON Lines. */
SG_API sg_status sg_dataset_augment(const sg_spec* spec, const char* data_path,
                                    const char* out_path, int format, char** out, int* findings);
/* stratify_path (nullable) names a partitioning file; out_dir (nullable) receives
 * train.jsonl, validation.jsonl and test.jsonl. */
SG_API sg_status sg_dataset_split(const char* data_path, const double ratios[3], uint64_t seed,
                                  const char* stratify_path, const char* out_dir, int format,
                                  char** out);
SG_API sg_status sg_dataset_uncertainty(const sg_spec* spec, const char* known_path,
                                        const char* probes_path, int max_depth, int format,
                                        char** out);

/* ---- architecture patterns ---- */

/* findings receives the subject's mismatch count. */
SG_API sg_status sg_patterns_simulate(const char* harness_path, const char* domain_path,
                                      const char* oracle_path, int format, char** out,
                                      int* findings);

/* ---- process ---- */

SG_API sg_status sg_catalog_load(const char* path, sg_catalog** out);
SG_API void sg_catalog_free(sg_catalog* catalog);
/* condition: "no-spec" | "no-interp"; asil and method_type nullable (all ASILs, all methods). */
SG_API sg_status sg_catalog_score(const sg_catalog* catalog, const char* condition,
                                  const char* asil, const char* method_type, int format,
                                  char** out);
SG_API sg_status sg_catalog_impact(const sg_catalog* catalog, int format, char** out);
SG_API sg_status sg_catalog_census(const sg_catalog* catalog, int format, char** out);

SG_API sg_status sg_gate_assess(const char* questionnaire_path, int format, char** out);
/* phase_hint (nullable) overrides the failure file's phase. */
SG_API sg_status sg_diagnose(const char* failure_path, const char* phase_hint, int format,
                             char** out);
SG_API sg_status sg_safetycase_check(const char* graph_path, int format, char** out,
                                     int* findings);

#ifdef __cplusplus
}
#endif

#endif /* SPECGUARD_SPECGUARD_H_ */
