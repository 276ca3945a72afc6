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
#include "specguard/process.hpp"

namespace specguard {

const char* to_string(GateVerdict v) noexcept {
  switch (v) {
    case GateVerdict::kUseProgramming: return "USE_PROGRAMMING";
    case GateVerdict::kSplitComponent: return "SPLIT_COMPONENT";
    case GateVerdict::kStrengthenRequirement: return "STRENGTHEN_REQUIREMENT";
    case GateVerdict::kUseMlWithMeasures: return "USE_ML_WITH_MEASURES";
  }
  return "?";
}

GateVerdict gate_verdict(bool completely_specifiable, bool splittable, bool strengthenable,
                         bool acceptable) noexcept {
  if (completely_specifiable) return GateVerdict::kUseProgramming;
  if (strengthenable && acceptable) return GateVerdict::kStrengthenRequirement;
  if (splittable) return GateVerdict::kSplitComponent;
  return GateVerdict::kUseMlWithMeasures;
}

GateDecision gate_assess(const GateQuestionnaire& q) {
  std::vector<std::string> missing;
  if (!q.completely_specifiable) missing.push_back("completely_specifiable");
  if (!q.splittable) missing.push_back("splittable");
  if (!q.strengthenable) missing.push_back("strengthenable");
  if (!q.strengthened_functionality_acceptable)
    missing.push_back("strengthened_functionality_acceptable");
  if (!missing.empty()) throw Error(ErrorCode::kConfig, "unanswered gate questions", missing);

  GateDecision d{gate_verdict(*q.completely_specifiable, *q.splittable, *q.strengthenable,
                              *q.strengthened_functionality_acceptable),
                 "", q};
  switch (d.verdict) {
    case GateVerdict::kUseProgramming:
      d.reason = "the requirement can be specified completely, so a programmed implementation is used";
      break;
    case GateVerdict::kStrengthenRequirement:
      d.reason = "a stronger, completely specifiable requirement exists and its functionality is acceptable";
      break;
    case GateVerdict::kSplitComponent:
      d.reason = "a completely specifiable part can be separated into a programmed component";
      break;
    case GateVerdict::kUseMlWithMeasures:
      d.reason = "no programmed alternative applies; ML is used with the ML-specific measures";
      break;
  }
  return d;
}

}  // namespace specguard
