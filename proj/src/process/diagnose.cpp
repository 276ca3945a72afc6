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

#include "specguard/error.hpp"
#include "specguard/process.hpp"

namespace specguard {
namespace {

constexpr std::array<Phase, 6> kPhases{Phase::kInitiation,   Phase::kRequirements,
                                       Phase::kArchitecture, Phase::kUnitDesign,
                                       Phase::kTesting,      Phase::kVerification};

}  // namespace

const char* to_string(Phase p) noexcept {
  switch (p) {
    case Phase::kInitiation: return "initiation";
    case Phase::kRequirements: return "requirements";
    case Phase::kArchitecture: return "architecture";
    case Phase::kUnitDesign: return "unit-design";
    case Phase::kTesting: return "testing";
    case Phase::kVerification: return "verification";
  }
  return "?";
}

Phase parse_phase(std::string_view s) {
  for (Phase p : kPhases)
    if (s == to_string(p)) return p;
  std::vector<std::string> valid;
  for (Phase p : kPhases) valid.emplace_back(to_string(p));
  throw Error(ErrorCode::kConfig, "unknown phase hint '" + std::string(s) + "'", valid);
}

const std::vector<DiagnosisGroup>& diagnosis_groups() {
  static const std::vector<DiagnosisGroup> groups{
      {"MLIN1", Phase::kInitiation, "ML decision gate",
       {"Would a programmed implementation of the safety requirement remove this failure?"}},
      {"6.4.1ML", Phase::kRequirements, "Partial specification",
       {"Is there domain knowledge, expressible as a partial specification, that rules out this "
        "failure?"}},
      {"6.4.1ML", Phase::kRequirements, "Data requirements",
       {"Which change to the data set requirements would cover this failure, and how is the "
        "change described?"}},
      {"7.4.14/7.4.15", Phase::kArchitecture, "Fault tolerance",
       {"Could an architectural fault tolerance pattern contain this failure?"}},
      {"MLDS1-3", Phase::kUnitDesign, "Data set collection and verification",
       {"How will the data items required by the changed requirements be collected?",
        "Can augmentation produce the required data items from existing ones?"}},
      {"MLMS1/MLMS2", Phase::kUnitDesign, "Model selection",
       {"Would a different model class remove this failure?"}},
      {"MLFS1", Phase::kUnitDesign, "Feature selection",
       {"Would a different choice of input features remove this failure?"}},
      {"MLTR1/MLTR2", Phase::kUnitDesign, "Training",
       {"Would a change to the training procedure or learning algorithm remove this failure?",
        "Can the changed partial specification be enforced during training?"}},
      {"MLVT1", Phase::kUnitDesign, "Data set splitting",
       {"Would a different train/validation/test split procedure remove this failure?"}},
      {"MLVT2", Phase::kUnitDesign, "Validation",
       {"Would different hyper-parameter choices remove this failure?"}},
      {"9.4.6", Phase::kTesting, "Test vs. operating environment",
       {"Does the test environment differ from the operating environment in a way that hides "
        "this failure?"}},
      {"MLTE1", Phase::kTesting, "Test result explanation",
       {"Can interpretability techniques explain why the failing test failed?"}},
      {"8.4.5", Phase::kVerification, "Verification",
       {"Can the trained model be checked against the changed partial specification?"}},
  };
  return groups;
}

DiagnosisPlan diagnose(const FailureRecord& failure) {
  DiagnosisPlan plan{failure, {}};
  const auto& all = diagnosis_groups();
  if (!failure.phase) {
    plan.groups = all;
    return plan;
  }
  Phase hint = parse_phase(*failure.phase);
  std::copy_if(all.begin(), all.end(), std::back_inserter(plan.groups),
               [&](const DiagnosisGroup& g) { return g.phase == hint; });
  std::copy_if(all.begin(), all.end(), std::back_inserter(plan.groups),
               [&](const DiagnosisGroup& g) { return g.phase != hint; });
  return plan;
}

}  // namespace specguard
