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

// JSON encodings of the core types. Decoders throw Error(kFormat) with a
// JSON-pointer-like location for structural problems; semantic validation
// (typechecking, schema conformance) is left to the owning module.

#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "specguard/classifier.hpp"
#include "specguard/record.hpp"
#include "specguard/spec.hpp"
#include "specguard/transform.hpp"

namespace specguard {

using Json = nlohmann::ordered_json;

// --- decoding helpers shared by every module ---

/// Throws Error(kFormat) unless `j` is an object whose keys are all in
/// `allowed`.
void expect_object(const Json& j, std::string_view where,
                   std::initializer_list<std::string_view> allowed);
const Json& require_key(const Json& j, std::string_view key, std::string_view where);
std::string get_string(const Json& j, std::string_view where);
double get_number(const Json& j, std::string_view where);
long long get_integer(const Json& j, std::string_view where);
bool get_bool(const Json& j, std::string_view where);

/// Reads and parses a JSON document; kIo for unreadable files, kFormat for
/// malformed content.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

struct JsonLine {
  std::size_t line = 0;  // 1-based
  Json value;            // discarded when error is non-empty
  std::string error;
};

/// One entry per non-blank line; parse failures are reported per line rather
/// than thrown.
std::vector<JsonLine> read_jsonl_file(const std::filesystem::path& path);
std::vector<JsonLine> parse_jsonl(std::string_view text);

/// Stable textual form: two-space indentation, trailing newline.
std::string dump_pretty(const Json& j);

// --- schema / records ---

Schema schema_from_json(const Json& j);
Json to_json(const Schema& schema);

/// Decodes a value for a declared field (grids are nested arrays).
FieldValue value_from_json(const Json& j, std::string_view where);
Json to_json(const FieldValue& v);

/// Without a schema every JSON number becomes a number field and every
/// nested array a grid.
FeatureRecord record_from_json(const Json& fields, std::string_view where);
Json to_json(const FeatureRecord& record);  // fields only; id is metadata

Prediction prediction_from_json(const Json& j, std::string_view where);
Json to_json(const Prediction& p);

// --- transformations / specs ---

Transformation transformation_from_json(const Json& j, std::string_view where);
Json to_json(const Transformation& t);

OutputTransform output_transform_from_json(const Json& j, std::string_view where);
Json to_json(const OutputTransform& t);

/// Parses every expression; syntax errors propagate as SyntaxError annotated
/// with the document location. Static well-formedness is not enforced here.
PartialSpec spec_from_json(const Json& j);
Json to_json(const PartialSpec& spec);
PartialSpec load_spec(const std::filesystem::path& path);

Json to_json(const WellFormednessReport& r);
std::string render_text(const WellFormednessReport& r);
Json to_json(const MetamorphicReport& r);
std::string render_text(const MetamorphicReport& r);

// --- classifiers ---

/// kinds: table, expression, subprocess. Relative subprocess program paths
/// and {"file": ...} references resolve against `base_dir`.
ClassifierPtr classifier_from_json(const Json& j, const std::filesystem::path& base_dir = {});
ClassifierPtr load_classifier(const std::filesystem::path& path);

}  // namespace specguard
