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

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "specguard/dataset.hpp"
#include "specguard/error.hpp"

namespace specguard {

AugmentResult augment(std::span<const LabeledRecord> data, const PartialSpec& spec) {
  AugmentResult result;
  std::unordered_set<std::string> seen;
  for (const auto& r : data) {
    result.records.push_back(r);
    seen.insert(canonical_key(r.input));
  }
  result.originals = data.size();

  std::vector<Equivariant> steps;
  for (const auto& t : spec.invariants) steps.push_back({t, OutputTransform{}});
  for (const auto& eq : spec.equivariants) steps.push_back(eq);

  for (std::size_t i = 0; i < data.size(); ++i) {
    const LabeledRecord& src = data[i];
    // Only collected samples seed augmentation, which keeps the operation
    // idempotent on its own output.
    if (src.provenance.augmented) continue;
    const std::string sid = record_id(src, i);
    for (const auto& step : steps) {
      LabeledRecord out;
      try {
        out.input = apply_transformation(step.input, src.input);
        out.label = step.output.apply(src.label);
      } catch (const Error& e) {
        result.errors.push_back({sid, step.input.name, e.what()});
        continue;
      }
      auto issues = conformance_issues(spec.schema, out.input);
      if (!issues.empty()) {
        result.errors.push_back({sid, step.input.name, "result does not conform: " + issues.front()});
        continue;
      }
      if (!seen.insert(canonical_key(out.input)).second) {
        ++result.duplicates;
        continue;
      }
      out.input.id = sid + "~" + step.input.name;
      out.provenance = Provenance{true, step.input.name, sid};
      result.records.push_back(std::move(out));
      ++result.added;
    }
  }
  return result;
}

const char* to_string(UncertaintyCategory c) noexcept {
  switch (c) {
    case UncertaintyCategory::kKnown: return "KNOWN";
    case UncertaintyCategory::kKnownUnknown: return "KNOWN_UNKNOWN";
    case UncertaintyCategory::kUnknownUnknown: return "UNKNOWN_UNKNOWN";
  }
  return "UNKNOWN";
}

double UncertaintyReport::fraction(UncertaintyCategory c) const {
  std::size_t total = counts[0] + counts[1] + counts[2];
  return total == 0 ? 0.0
                    : static_cast<double>(counts[static_cast<std::size_t>(c)]) /
                          static_cast<double>(total);
}

namespace {

struct Reached {
  std::size_t depth = 0;
  std::string parent;  // canonical key; empty at depth 0
  std::string step;    // transform name leading here
  std::string source_id;
  std::optional<std::string> label;
};

}  // namespace

UncertaintyReport categorize_uncertainty(std::span<const LabeledRecord> known,
                                         std::span<const FeatureRecord> probes,
                                         std::span<const Equivariant> steps,
                                         std::size_t max_depth) {
  if (max_depth > kMaxUncertaintyDepth)
    throw Error(ErrorCode::kConfig, "max_depth " + std::to_string(max_depth) +
                                        " exceeds the limit of " +
                                        std::to_string(kMaxUncertaintyDepth));
  UncertaintyReport report;
  report.max_depth = max_depth;

  std::unordered_map<std::string, Reached> reached;
  std::vector<std::pair<std::string, FeatureRecord>> frontier;
  for (std::size_t i = 0; i < known.size(); ++i) {
    std::string key = canonical_key(known[i].input);
    if (reached.emplace(key, Reached{0, "", "", record_id(known[i], i), known[i].label}).second)
      frontier.emplace_back(std::move(key), known[i].input);
  }

  for (std::size_t depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<std::pair<std::string, FeatureRecord>> next;
    for (const auto& [key, input] : frontier) {
      const Reached from = reached.at(key);
      for (const auto& step : steps) {
        FeatureRecord out;
        std::optional<std::string> label;
        try {
          out = apply_transformation(step.input, input);
          if (from.label) label = step.output.apply(*from.label);
        } catch (const Error&) {
          ++report.pruned;
          continue;
        }
        out.id.reset();
        std::string k = canonical_key(out);
        if (reached.emplace(k, Reached{depth, key, step.input.name, from.source_id, label}).second)
          next.emplace_back(std::move(k), std::move(out));
      }
    }
    frontier = std::move(next);
  }
  report.explored = reached.size();

  for (std::size_t p = 0; p < probes.size(); ++p) {
    ProbeResult pr;
    pr.id = probes[p].id ? *probes[p].id : "#" + std::to_string(p);
    auto it = reached.find(canonical_key(probes[p]));
    if (it == reached.end()) {
      pr.category = UncertaintyCategory::kUnknownUnknown;
    } else {
      pr.depth = it->second.depth;
      pr.source_id = it->second.source_id;
      pr.derived_label = it->second.label;
      pr.category = pr.depth == 0 ? UncertaintyCategory::kKnown : UncertaintyCategory::kKnownUnknown;
      for (auto cur = it; cur->second.depth > 0; cur = reached.find(cur->second.parent))
        pr.path.push_back(cur->second.step);
      std::reverse(pr.path.begin(), pr.path.end());
    }
    ++report.counts[static_cast<std::size_t>(pr.category)];
    report.probes.push_back(std::move(pr));
  }
  return report;
}

UncertaintyReport categorize_uncertainty(std::span<const LabeledRecord> known,
                                         std::span<const FeatureRecord> probes,
                                         std::span<const Transformation> transforms,
                                         std::size_t max_depth) {
  std::vector<Equivariant> steps;
  for (const auto& t : transforms) steps.push_back({t, OutputTransform{}});
  return categorize_uncertainty(known, probes, std::span<const Equivariant>(steps), max_depth);
}

}  // namespace specguard
