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
#include <map>
#include <set>

#include "specguard/error.hpp"
#include "specguard/process.hpp"

namespace specguard {
namespace {

const std::set<std::string> kRequirementKinds{"partial_spec", "dataset_requirements"};
const std::set<std::string> kEvidenceKinds{"monitor_report", "coverage_report",
                                           "simulation_report", "document"};

bool edge_types_ok(EdgeKind k, NodeKind from, NodeKind to) {
  switch (k) {
    case EdgeKind::kMitigates: return from == NodeKind::kSafetyGoal && to == NodeKind::kHazard;
    case EdgeKind::kRefines:
      return from == NodeKind::kRequirement &&
             (to == NodeKind::kSafetyGoal || to == NodeKind::kRequirement);
    case EdgeKind::kSupports: return from == NodeKind::kEvidence && to == NodeKind::kRequirement;
  }
  return false;
}

}  // namespace

const char* to_string(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::kHazard: return "HAZARD";
    case NodeKind::kSafetyGoal: return "SAFETY_GOAL";
    case NodeKind::kRequirement: return "REQUIREMENT";
    case NodeKind::kEvidence: return "EVIDENCE";
  }
  return "?";
}

NodeKind parse_node_kind(std::string_view s) {
  for (NodeKind k : {NodeKind::kHazard, NodeKind::kSafetyGoal, NodeKind::kRequirement,
                     NodeKind::kEvidence})
    if (s == to_string(k)) return k;
  throw Error(ErrorCode::kFormat, "unknown node kind '" + std::string(s) +
                                      "' (expected HAZARD, SAFETY_GOAL, REQUIREMENT or EVIDENCE)");
}

const char* to_string(EdgeKind k) noexcept {
  switch (k) {
    case EdgeKind::kMitigates: return "mitigates";
    case EdgeKind::kRefines: return "refines";
    case EdgeKind::kSupports: return "supports";
  }
  return "?";
}

EdgeKind parse_edge_kind(std::string_view s) {
  for (EdgeKind k : {EdgeKind::kMitigates, EdgeKind::kRefines, EdgeKind::kSupports})
    if (s == to_string(k)) return k;
  throw Error(ErrorCode::kFormat, "unknown edge kind '" + std::string(s) +
                                      "' (expected mitigates, refines or supports)");
}

const char* to_string(GapKind k) noexcept {
  switch (k) {
    case GapKind::kMissingGoal: return "MISSING_GOAL";
    case GapKind::kMissingRequirement: return "MISSING_REQUIREMENT";
    case GapKind::kMissingEvidence: return "MISSING_EVIDENCE";
    case GapKind::kMissingArtifact: return "MISSING_ARTIFACT";
    case GapKind::kAsilMismatch: return "ASIL_MISMATCH";
  }
  return "?";
}

std::vector<std::string> validate(const SafetyCaseGraph& g) {
  std::vector<std::string> issues;
  std::map<std::string, NodeKind> kinds;
  for (const auto& n : g.nodes) {
    if (n.id.empty()) issues.push_back("node with empty id");
    else if (!kinds.emplace(n.id, n.kind).second) issues.push_back("duplicate node id '" + n.id + "'");
    if (n.kind == NodeKind::kRequirement && !n.subkind.empty() && !kRequirementKinds.count(n.subkind))
      issues.push_back("requirement '" + n.id + "' has unknown kind '" + n.subkind +
                       "' (expected partial_spec or dataset_requirements)");
    if (n.kind == NodeKind::kEvidence && !n.subkind.empty() && !kEvidenceKinds.count(n.subkind))
      issues.push_back("evidence '" + n.id + "' has unknown kind '" + n.subkind +
                       "' (expected monitor_report, coverage_report, simulation_report or document)");
  }
  for (const auto& e : g.edges) {
    auto f = kinds.find(e.from);
    auto t = kinds.find(e.to);
    if (f == kinds.end()) issues.push_back("edge from unknown node '" + e.from + "'");
    if (t == kinds.end()) issues.push_back("edge to unknown node '" + e.to + "'");
    if (f == kinds.end() || t == kinds.end()) continue;
    if (!edge_types_ok(e.kind, f->second, t->second))
      issues.push_back(std::string("edge ") + e.from + " -" + to_string(e.kind) + "-> " + e.to +
                       " connects " + to_string(f->second) + " to " + to_string(t->second));
  }
  return issues;
}

GapReport trace_check(const SafetyCaseGraph& g, const TraceOptions& opts) {
  auto issues = validate(g);
  if (!issues.empty()) throw Error(ErrorCode::kSpec, "malformed safety case graph", issues);

  std::map<std::string, const SafetyNode*> nodes;
  for (const auto& n : g.nodes) nodes[n.id] = &n;
  std::map<std::string, std::vector<std::string>> out, in;
  for (const auto& e : g.edges) {
    out[e.from].push_back(e.to);
    in[e.to].push_back(e.from);
  }
  for (auto& [_, v] : out) std::sort(v.begin(), v.end());

  // Iterative three-colour DFS in id order so the reported cycle is stable.
  std::map<std::string, int> colour;
  for (const auto& [id, _] : nodes) {
    if (colour[id] != 0) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{id, 0}};
    colour[id] = 1;
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      const auto& succ = out[cur];
      if (next == succ.size()) {
        colour[cur] = 2;
        stack.pop_back();
        continue;
      }
      const std::string s = succ[next++];
      if (colour[s] == 1) {
        std::string path;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == s; });
        for (; it != stack.end(); ++it) path += it->first + " -> ";
        throw Error(ErrorCode::kSpec, "cycle detected: " + path + s);
      }
      if (colour[s] == 0) {
        colour[s] = 1;
        stack.emplace_back(s, 0);
      }
    }
  }

  auto incoming_of = [&](const std::string& id, NodeKind kind) {
    return std::any_of(in[id].begin(), in[id].end(),
                       [&](const std::string& from) { return nodes.at(from)->kind == kind; });
  };

  GapReport report;
  for (const auto& [id, n] : nodes) {
    switch (n->kind) {
      case NodeKind::kHazard:
        if (!incoming_of(id, NodeKind::kSafetyGoal))
          report.gaps.push_back({GapKind::kMissingGoal, id, "no safety goal mitigates this hazard"});
        break;
      case NodeKind::kSafetyGoal:
        if (!incoming_of(id, NodeKind::kRequirement))
          report.gaps.push_back({GapKind::kMissingRequirement, id, "no requirement refines this goal"});
        break;
      case NodeKind::kRequirement:
        if (!incoming_of(id, NodeKind::kEvidence) && !incoming_of(id, NodeKind::kRequirement))
          report.gaps.push_back({GapKind::kMissingEvidence, id, "no evidence supports this requirement"});
        for (const auto& parent : out[id]) {
          const SafetyNode* p = nodes.at(parent);
          if (n->asil && p->asil && *n->asil != *p->asil)
            report.gaps.push_back({GapKind::kAsilMismatch, id,
                                   std::string("ASIL ") + to_string(*n->asil) + " under " + parent +
                                       " with ASIL " + to_string(*p->asil)});
        }
        break;
      case NodeKind::kEvidence:
        if (!n->artifact || n->artifact->empty()) {
          report.gaps.push_back({GapKind::kMissingArtifact, id, "no artifact path"});
        } else if (opts.check_artifacts) {
          std::filesystem::path p(*n->artifact);
          if (p.is_relative()) p = opts.artifact_root / p;
          std::error_code ec;
          if (!std::filesystem::exists(p, ec))
            report.gaps.push_back({GapKind::kMissingArtifact, id, "artifact not found: " + *n->artifact});
        }
        break;
    }
  }
  std::sort(report.gaps.begin(), report.gaps.end());
  return report;
}

}  // namespace specguard
