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

#include "specguard/error.hpp"
#include "specguard/patterns.hpp"

namespace specguard {
namespace {

ClassifierPtr by_name(const Harness& h, const Json& j, const char* key) {
  std::string name = get_string(require_key(j, key, ""), std::string("/") + key);
  auto it = h.classifiers.find(name);
  if (it == h.classifiers.end())
    throw Error(ErrorCode::kConfig, std::string("harness: ") + key + " refers to unknown classifier \"" +
                                        name + "\"");
  return it->second;
}

}  // namespace

Harness harness_from_json(const Json& j, const std::filesystem::path& base_dir) {
  Harness h;
  h.pattern = get_string(require_key(j, "pattern", ""), "/pattern");
  const Json& cj = require_key(j, "classifiers", "");
  if (!cj.is_object()) throw Error(ErrorCode::kFormat, "/classifiers: expected an object");
  for (const auto& [name, def] : cj.items()) {
    try {
      h.classifiers[name] = classifier_from_json(def, base_dir);
    } catch (const Error& e) {
      throw Error(e.code(), "/classifiers/" + name + ": " + e.what(), e.details());
    }
  }

  if (h.pattern == "classifier") {
    expect_object(j, "", {"pattern", "classifiers", "classifier"});
    h.subject = make_subject(by_name(h, j, "classifier"));
  } else if (h.pattern == "simplex") {
    expect_object(j, "", {"pattern", "classifiers", "primary", "fallback", "threshold"});
    SimplexConfig c{by_name(h, j, "primary"), by_name(h, j, "fallback"), 0.5};
    if (j.contains("threshold")) c.threshold = get_number(j["threshold"], "/threshold");
    h.subject = make_subject(std::move(c));
  } else if (h.pattern == "gated") {
    expect_object(j, "", {"pattern", "classifiers", "spec", "ml"});
    std::filesystem::path sp = get_string(require_key(j, "spec", ""), "/spec");
    h.spec = std::make_shared<const PartialSpec>(load_spec(sp.is_absolute() ? sp : base_dir / sp));
    h.subject = make_subject(GatedConfig{h.spec, by_name(h, j, "ml")});
  } else if (h.pattern == "ensemble") {
    expect_object(j, "", {"pattern", "classifiers", "members", "fusion"});
    EnsembleConfig c;
    const Json& mj = require_key(j, "members", "");
    if (!mj.is_array()) throw Error(ErrorCode::kFormat, "/members: expected an array of names");
    for (std::size_t i = 0; i < mj.size(); ++i) {
      std::string name = get_string(mj[i], "/members/" + std::to_string(i));
      auto it = h.classifiers.find(name);
      if (it == h.classifiers.end())
        throw Error(ErrorCode::kConfig, "harness: unknown ensemble member \"" + name + "\"");
      c.members.push_back(it->second);
    }
    if (j.contains("fusion")) c.fusion = parse_fusion(get_string(j["fusion"], "/fusion"));
    h.subject = make_subject(std::move(c));
  } else if (h.pattern == "envelope") {
    expect_object(j, "", {"pattern", "classifiers", "safety", "advisory"});
    h.subject = make_subject(EnvelopeConfig{by_name(h, j, "safety"), by_name(h, j, "advisory")});
  } else {
    throw Error(ErrorCode::kConfig, "unknown pattern \"" + h.pattern +
                                        "\" (expected simplex, gated, ensemble, envelope or classifier)");
  }
  return h;
}

Harness load_harness(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  try {
    return harness_from_json(j, path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.details());
  }
}

std::vector<FeatureRecord> enumerate_domain(const Json& j) {
  expect_object(j, "", {"enumerate"});
  const Json& axes = require_key(j, "enumerate", "");
  if (!axes.is_array() || axes.empty())
    throw Error(ErrorCode::kFormat, "/enumerate: expected a non-empty array of axes");

  // Every axis expands to its list of candidate values.
  std::vector<std::pair<std::string, std::vector<FieldValue>>> expanded;
  std::size_t total = 1;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::string where = "/enumerate/" + std::to_string(a);
    expect_object(axes[a], where, {"field", "values", "grid"});
    std::string field = get_string(require_key(axes[a], "field", where), where + "/field");
    const Json& vj = require_key(axes[a], "values", where);
    if (!vj.is_array() || vj.empty())
      throw Error(ErrorCode::kFormat, where + "/values: expected a non-empty array");
    std::vector<FieldValue> values;
    if (axes[a].contains("grid")) {
      const Json& g = axes[a]["grid"];
      if (!g.is_array() || g.size() != 2)
        throw Error(ErrorCode::kFormat, where + "/grid: expected [rows, cols]");
      auto rows = static_cast<std::size_t>(get_integer(g[0], where + "/grid/0"));
      auto cols = static_cast<std::size_t>(get_integer(g[1], where + "/grid/1"));
      std::vector<double> cell_values;
      for (std::size_t i = 0; i < vj.size(); ++i)
        cell_values.push_back(get_number(vj[i], where + "/values/" + std::to_string(i)));
      const std::size_t cells = rows * cols;
      double combos = 1;
      for (std::size_t i = 0; i < cells; ++i) combos *= static_cast<double>(cell_values.size());
      if (cells == 0 || combos > 1e6)
        throw Error(ErrorCode::kConfig, where + ": grid domain must have between 1 and 10^6 elements");
      // Mixed-radix decode; cell 0 is the most significant digit.
      const auto count = static_cast<std::size_t>(combos);
      const std::size_t base = cell_values.size();
      for (std::size_t n = 0; n < count; ++n) {
        Grid grid(rows, cols);
        std::size_t rest = n;
        for (std::size_t i = cells; i-- > 0;) {
          grid.cells[i] = cell_values[rest % base];
          rest /= base;
        }
        values.push_back(std::move(grid));
      }
    } else {
      for (std::size_t i = 0; i < vj.size(); ++i)
        values.push_back(value_from_json(vj[i], where + "/values/" + std::to_string(i)));
    }
    total *= values.size();
    if (total > 1000000) throw Error(ErrorCode::kConfig, "domain exceeds 10^6 elements");
    expanded.emplace_back(std::move(field), std::move(values));
  }

  std::vector<FeatureRecord> out;
  out.reserve(total);
  std::vector<std::size_t> idx(expanded.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    FeatureRecord r;
    r.id = "d" + std::to_string(n);
    for (std::size_t a = 0; a < expanded.size(); ++a)
      r.fields[expanded[a].first] = expanded[a].second[idx[a]];
    out.push_back(std::move(r));
    for (std::size_t a = expanded.size(); a-- > 0;) {
      if (++idx[a] < expanded[a].second.size()) break;
      idx[a] = 0;
    }
  }
  return out;
}

std::vector<FeatureRecord> load_domain(const std::filesystem::path& path) {
  if (path.extension() == ".jsonl") {
    std::vector<FeatureRecord> out;
    for (const auto& line : read_jsonl_file(path)) {
      const std::string where = path.string() + ":" + std::to_string(line.line);
      if (!line.error.empty()) throw Error(ErrorCode::kFormat, where + ": " + line.error);
      const Json& v = line.value;
      FeatureRecord r;
      if (v.is_object() && v.contains("input")) {
        expect_object(v, where, {"id", "input", "label", "provenance", "output"});
        r = record_from_json(v["input"], where + "/input");
        if (v.contains("id")) r.id = get_string(v["id"], where + "/id");
      } else {
        r = record_from_json(v, where);
      }
      if (!r.id) r.id = "line:" + std::to_string(line.line);
      out.push_back(std::move(r));
    }
    return out;
  }
  Json j = read_json_file(path);
  try {
    return enumerate_domain(j);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what(), e.details());
  }
}

}  // namespace specguard
