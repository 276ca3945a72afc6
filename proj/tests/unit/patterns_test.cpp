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

// Tests for the ensemble, simplex, gated, envelope and harvest patterns and
// for exhaustive simulation.

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <memory>
#include <string>
#include <vector>

#include "specguard/error.hpp"
#include "specguard/json_io.hpp"
#include "specguard/patterns.hpp"
#include "test_support.hpp"

namespace sg = specguard;
using sgtest::all_grids;
using sgtest::bit;
using sgtest::grid_record;
using sgtest::kGridDomain;

namespace {

sg::ClassifierPtr constant(const std::string& name, const std::string& label,
                           std::optional<double> conf = std::nullopt) {
  return std::make_shared<sg::CallbackClassifier>(
      name, [label, conf](const sg::FeatureRecord&) { return sg::Prediction{label, conf}; });
}

sg::ClassifierPtr failing(const std::string& name) {
  return std::make_shared<sg::CallbackClassifier>(name, [](const sg::FeatureRecord&) -> sg::Prediction {
    throw sg::Error(sg::ErrorCode::kClassifier, "boom");
  });
}

sg::FeatureRecord ped(double h, double w) {
  sg::FeatureRecord r;
  r.fields["height_ft"] = h;
  r.fields["width_ft"] = w;
  return r;
}

const std::filesystem::path kExamples = SPECGUARD_EXAMPLES_DIR;

}  // namespace

// --- ensemble ---

TEST(Ensemble, MajorityOfThree) {
  sg::EnsembleConfig cfg{{constant("a", "yes"), constant("b", "yes"), constant("c", "no")},
                         sg::Fusion::kMajority};
  auto r = ensemble_fuse(cfg, grid_record(0));
  EXPECT_EQ(r.prediction.label, "yes");
  ASSERT_TRUE(r.prediction.confidence);
  EXPECT_NEAR(*r.prediction.confidence, 2.0 / 3.0, 1e-12);
  EXPECT_FALSE(r.tie);
  EXPECT_EQ(r.votes.size(), 3u);
  EXPECT_DOUBLE_EQ(r.mass.at("yes"), 2.0);
}

TEST(Ensemble, SingleMemberPassesThroughVerbatim) {
  sg::EnsembleConfig cfg{{constant("a", "maybe", 0.37)}, sg::Fusion::kMajority};
  auto r = ensemble_fuse(cfg, grid_record(5));
  EXPECT_EQ(r.prediction.label, "maybe");
  EXPECT_EQ(r.prediction.confidence, std::optional<double>(0.37));
}

TEST(Ensemble, ConfidenceWeightedUsesSummedConfidence) {
  sg::EnsembleConfig cfg{{constant("a", "yes", 0.9), constant("b", "no", 0.4), constant("c", "no", 0.4)},
                         sg::Fusion::kConfidenceWeighted};
  auto r = ensemble_fuse(cfg, grid_record(0));
  EXPECT_EQ(r.prediction.label, "yes");
  EXPECT_NEAR(*r.prediction.confidence, 0.9 / 1.7, 1e-12);
}

TEST(Ensemble, MissingConfidenceWeighsOne) {
  sg::EnsembleConfig cfg{{constant("a", "yes"), constant("b", "no", 0.6), constant("c", "no", 0.3)},
                         sg::Fusion::kConfidenceWeighted};
  auto r = ensemble_fuse(cfg, grid_record(0));
  EXPECT_EQ(r.prediction.label, "yes");
  EXPECT_DOUBLE_EQ(r.mass.at("yes"), 1.0);
}

TEST(Ensemble, TieBreaksLexicographicallyAndIsFlagged) {
  sg::EnsembleConfig cfg{{constant("a", "zebra"), constant("b", "apple")}, sg::Fusion::kMajority};
  auto r = ensemble_fuse(cfg, grid_record(0));
  EXPECT_EQ(r.prediction.label, "apple");
  EXPECT_TRUE(r.tie);
  EXPECT_EQ(r.tied_labels, (std::vector<std::string>{"apple", "zebra"}));
  EXPECT_EQ(sg::make_subject(cfg)->decide(grid_record(0)).source, "ENSEMBLE_TIE");
}

TEST(Ensemble, MemberFailureIsPatternErrorNamingMember) {
  sg::EnsembleConfig cfg{{constant("a", "yes"), failing("broken")}, sg::Fusion::kMajority};
  try {
    ensemble_fuse(cfg, grid_record(0));
    FAIL() << "expected an error";
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.code(), sg::ErrorCode::kPattern);
    ASSERT_EQ(e.details().size(), 1u);
    EXPECT_NE(e.details()[0].find("broken"), std::string::npos);
  }
}

TEST(Ensemble, EmptyConfigRejected) {
  sg::EnsembleConfig cfg{{}, sg::Fusion::kMajority};
  EXPECT_THROW(ensemble_fuse(cfg, grid_record(0)), sg::Error);
}

TEST(Ensemble, ParseFusion) {
  EXPECT_EQ(sg::parse_fusion("MAJORITY"), sg::Fusion::kMajority);
  EXPECT_EQ(sg::parse_fusion("CONFIDENCE_WEIGHTED"), sg::Fusion::kConfidenceWeighted);
  EXPECT_THROW(sg::parse_fusion("majority"), sg::Error);
}

TEST(Ensemble, IdenticalMembersMatchSingleMemberOnGridDomain) {
  auto c = sgtest::grid_table("c", [](unsigned m) { return sgtest::popcount9(m) % 3 ? "yes" : "no"; });
  for (std::size_t k : {2u, 3u, 4u, 5u}) {
    sg::EnsembleConfig cfg{std::vector<sg::ClassifierPtr>(k, c), sg::Fusion::kMajority};
    sg::EnsembleConfig weighted{std::vector<sg::ClassifierPtr>(k, c), sg::Fusion::kConfidenceWeighted};
    for (unsigned m = 0; m < kGridDomain; ++m) {
      auto rec = grid_record(m);
      auto single = c->classify(rec);
      EXPECT_EQ(ensemble_fuse(cfg, rec).prediction.label, single.label);
      EXPECT_EQ(ensemble_fuse(weighted, rec).prediction.label, single.label);
    }
  }
}

TEST(Ensemble, MajorityCorrectImpliesFusedCorrect) {
  const std::vector<std::string> alphabet{"a", "b", "c"};
  for (std::size_t k : {1u, 3u, 5u}) {
    std::size_t patterns = 1;
    for (std::size_t i = 0; i < k; ++i) patterns *= alphabet.size();
    std::size_t checked = 0;
    for (std::size_t p = 0; p < patterns; ++p) {
      std::vector<std::string> votes;
      for (std::size_t i = 0, x = p; i < k; ++i, x /= alphabet.size()) votes.push_back(alphabet[x % 3]);
      std::vector<sg::ClassifierPtr> members;
      for (std::size_t i = 0; i < k; ++i) members.push_back(constant("m" + std::to_string(i), votes[i]));
      for (const auto& truth : alphabet) {
        auto correct = static_cast<std::size_t>(std::count(votes.begin(), votes.end(), truth));
        if (2 * correct <= k) continue;
        ++checked;
        for (auto fusion : {sg::Fusion::kMajority, sg::Fusion::kConfidenceWeighted}) {
          auto r = ensemble_fuse({members, fusion}, grid_record(0));
          EXPECT_EQ(r.prediction.label, truth);
          EXPECT_FALSE(r.tie);
        }
      }
    }
    EXPECT_GT(checked, 0u);
  }
}

// --- simplex ---

TEST(Simplex, WorkedExampleFallsBackOnLowConfidence) {
  auto ml = sg::load_classifier(kExamples / "pedestrian" / "low_confidence_ml.json");
  auto rule = sg::load_classifier(kExamples / "pedestrian" / "rule_classifier.json");
  sg::SimplexConfig cfg{ml, rule, 0.5};
  auto a = simplex_decide(cfg, ped(5.5, 1.5));
  EXPECT_EQ(a.prediction.label, "pedestrian");
  EXPECT_EQ(a.source, sg::SimplexSource::kFallback);
  ASSERT_TRUE(a.primary);
  EXPECT_EQ(a.primary->confidence, std::optional<double>(0.3));
  auto b = simplex_decide(cfg, ped(9.0, 1.5));
  EXPECT_EQ(b.prediction.label, "not_pedestrian");
  EXPECT_EQ(b.source, sg::SimplexSource::kFallback);
}

TEST(Simplex, ConfidentPrimaryIsUsed) {
  sg::SimplexConfig cfg{constant("p", "pedestrian", 0.9), constant("f", "not_pedestrian"), 0.5};
  auto r = simplex_decide(cfg, ped(5, 1));
  EXPECT_EQ(r.prediction.label, "pedestrian");
  EXPECT_EQ(r.source, sg::SimplexSource::kPrimary);
}

TEST(Simplex, ThresholdIsInclusive) {
  sg::SimplexConfig cfg{constant("p", "x", 0.5), constant("f", "y"), 0.5};
  EXPECT_EQ(simplex_decide(cfg, ped(1, 1)).source, sg::SimplexSource::kPrimary);
}

TEST(Simplex, ThresholdZeroEqualsPrimaryAndOneEqualsFallback) {
  auto primary = std::make_shared<sg::CallbackClassifier>("p", [](const sg::FeatureRecord& r) {
    unsigned m = sgtest::grid_mask(r);
    return sg::Prediction{m % 2 ? "yes" : "no", (m % 100) / 100.0};
  });
  auto fallback = sgtest::grid_table("f", [](unsigned m) { return bit(m, 1, 1) ? "yes" : "no"; });
  sg::SimplexConfig zero{primary, fallback, 0.0};
  sg::SimplexConfig one{primary, fallback, 1.0};
  for (unsigned m = 0; m < kGridDomain; ++m) {
    auto rec = grid_record(m);
    auto z = simplex_decide(zero, rec);
    EXPECT_EQ(z.source, sg::SimplexSource::kPrimary);
    EXPECT_EQ(z.prediction.label, primary->classify(rec).label);
    auto o = simplex_decide(one, rec);
    EXPECT_EQ(o.source, sg::SimplexSource::kFallback);
    EXPECT_EQ(o.prediction.label, fallback->classify(rec).label);
  }
}

TEST(Simplex, PrimaryWithoutConfidenceIsConfigError) {
  sg::SimplexConfig cfg{constant("p", "x"), constant("f", "y"), 0.5};
  try {
    simplex_decide(cfg, ped(1, 1));
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.code(), sg::ErrorCode::kConfig);
  }
}

TEST(Simplex, PrimaryFailureRoutesToFallback) {
  sg::SimplexConfig cfg{failing("p"), constant("f", "safe"), 0.5};
  auto r = simplex_decide(cfg, ped(1, 1));
  EXPECT_EQ(r.prediction.label, "safe");
  EXPECT_EQ(r.source, sg::SimplexSource::kFallback);
  EXPECT_FALSE(r.primary);
  EXPECT_FALSE(r.primary_error.empty());
}

TEST(Simplex, FallbackFailureIsPatternError) {
  sg::SimplexConfig cfg{constant("p", "x", 0.1), failing("f"), 0.5};
  try {
    simplex_decide(cfg, ped(1, 1));
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.code(), sg::ErrorCode::kPattern);
  }
}

TEST(Simplex, ThresholdOutOfRangeRejected) {
  sg::SimplexConfig cfg{constant("p", "x", 0.1), constant("f", "y"), 1.5};
  EXPECT_THROW(simplex_decide(cfg, ped(1, 1)), sg::Error);
}

// --- gated ---

TEST(Gated, SufficientConditionDecidesWithoutConsultingMl) {
  auto spec = std::make_shared<sg::PartialSpec>(sg::load_spec(kExamples / "pedestrian" / "spec.json"));
  auto calls = std::make_shared<std::atomic<int>>(0);
  auto ml = std::make_shared<sg::CallbackClassifier>("ml", [calls](const sg::FeatureRecord&) {
    ++*calls;
    return sg::Prediction{"pedestrian", 0.99};
  });
  auto r = gated_classify({spec, ml}, ped(6, 25));
  EXPECT_EQ(r.prediction.label, "not_pedestrian");
  EXPECT_EQ(r.source, sg::GatedSource::kSpec);
  EXPECT_EQ(r.rule, sg::GateRule::kSufficient);
  EXPECT_EQ(*calls, 0);
}

TEST(Gated, EliminationDecidesBinaryAlphabet) {
  auto spec = std::make_shared<sg::PartialSpec>(sg::load_spec(kExamples / "pedestrian" / "spec.json"));
  auto r = gated_classify({spec, failing("ml")}, ped(9, 2));
  EXPECT_EQ(r.prediction.label, "not_pedestrian");
  EXPECT_EQ(r.rule, sg::GateRule::kElimination);
  EXPECT_EQ(r.excluded, (std::vector<std::string>{"pedestrian"}));
}

TEST(Gated, UndecidedInputGoesToMlVerbatim) {
  auto spec = std::make_shared<sg::PartialSpec>(sg::load_spec(kExamples / "pedestrian" / "spec.json"));
  auto r = gated_classify({spec, constant("ml", "pedestrian", 0.42)}, ped(5, 2));
  EXPECT_EQ(r.source, sg::GatedSource::kMl);
  EXPECT_EQ(r.prediction.label, "pedestrian");
  EXPECT_EQ(r.prediction.confidence, std::optional<double>(0.42));
  EXPECT_EQ(r.rule, sg::GateRule::kNone);
}

TEST(Gated, FailingPreconditionDefersToMl) {
  auto spec = std::make_shared<sg::PartialSpec>(sg::load_spec(kExamples / "pedestrian" / "spec.json"));
  auto r = gated_classify({spec, constant("ml", "pedestrian", 0.5)}, ped(-1, 25));
  EXPECT_EQ(r.source, sg::GatedSource::kMl);
}

TEST(Gated, ConflictingSufficientConditionsArePatternError) {
  auto spec = std::make_shared<sg::PartialSpec>(sgtest::grid_schema());
  spec->sufficient["yes"] = {sg::Condition("input.img[0][0] == 1")};
  spec->sufficient["no"] = {sg::Condition("input.img[1][1] == 1")};
  try {
    gated_classify({spec, constant("ml", "yes")}, grid_record(1u | 16u));
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.code(), sg::ErrorCode::kPattern);
  }
}

TEST(Gated, DecidedInputsAreIndependentOfMl) {
  auto spec = std::make_shared<sg::PartialSpec>(sgtest::gated_grid_spec());
  auto ml1 = sgtest::grid_table("ml1", [](unsigned m) { return m % 2 ? "yes" : "no"; });
  auto ml2 = sgtest::grid_table("ml2", [](unsigned m) { return m % 2 ? "no" : "yes"; });
  std::size_t decided = 0;
  for (unsigned m = 0; m < kGridDomain; ++m) {
    auto rec = grid_record(m);
    bool d = sg::spec_decides(*spec, rec);
    EXPECT_EQ(d, sgtest::gated_spec_decides_oracle(m)) << m;
    if (!d) continue;
    ++decided;
    auto a = gated_classify({spec, ml1}, rec);
    auto b = gated_classify({spec, ml2}, rec);
    EXPECT_EQ(a.prediction.label, b.prediction.label);
    EXPECT_EQ(a.prediction.label, sgtest::gated_oracle_label(m));
  }
  EXPECT_EQ(decided, 202u);
}

// --- envelope and harvest ---

TEST(Envelope, SafetyControlsAndAdvisoryIsRecorded) {
  sg::EnvelopeConfig cfg{constant("safety", "obstacle"), constant("advisory", "clear", 0.8)};
  auto r = envelope_route(cfg, ped(1, 1));
  EXPECT_EQ(r.safety.label, "obstacle");
  ASSERT_TRUE(r.advisory);
  EXPECT_EQ(r.advisory->label, "clear");
  EXPECT_EQ(sg::make_subject(cfg)->decide(ped(1, 1)).prediction.label, "obstacle");
}

TEST(Envelope, AdvisoryCrashDoesNotAffectSafety) {
  sg::EnvelopeConfig cfg{constant("safety", "obstacle"), failing("advisory")};
  auto r = envelope_route(cfg, ped(1, 1));
  EXPECT_EQ(r.safety.label, "obstacle");
  EXPECT_FALSE(r.advisory);
  EXPECT_FALSE(r.advisory_error.empty());
}

TEST(Envelope, AdvisorySubprocessCrashDoesNotAffectSafety) {
  auto crash = std::make_shared<sg::SubprocessClassifier>(
      "advisory", std::vector<std::string>{FAKE_MODEL_PATH, "crash"}, std::chrono::milliseconds(2000));
  sg::EnvelopeConfig cfg{constant("safety", "obstacle"), crash};
  auto r = envelope_route(cfg, ped(1, 1));
  EXPECT_EQ(r.safety.label, "obstacle");
  EXPECT_FALSE(r.advisory_error.empty());
}

TEST(Envelope, SafetyFailureIsPatternError) {
  sg::EnvelopeConfig cfg{failing("safety"), constant("advisory", "clear")};
  EXPECT_THROW(envelope_route(cfg, ped(1, 1)), sg::Error);
}

TEST(Harvest, StoresLowAndMissingConfidenceOnly) {
  sg::HarvestStore store(0.5);
  EXPECT_TRUE(store.harvest({"r1", ped(1, 1), {"pedestrian", 0.3}}));
  EXPECT_FALSE(store.harvest({"r2", ped(1, 1), {"pedestrian", 0.9}}));
  EXPECT_FALSE(store.harvest({"r3", ped(1, 1), {"pedestrian", 0.5}}));
  EXPECT_TRUE(store.harvest({"r4", ped(1, 1), {"pedestrian", std::nullopt}}));
  ASSERT_EQ(store.entries().size(), 2u);
  EXPECT_EQ(store.entries()[0].record.id, "r1");
  EXPECT_EQ(store.entries()[1].reason, "no confidence");
  EXPECT_THROW(sg::HarvestStore(1.5), sg::Error);
}

// --- simulation ---

TEST(Simulate, SubjectEqualToOracleHasZeroError) {
  auto oracle = sgtest::grid_table("oracle", [](unsigned m) { return sgtest::gated_oracle_label(m); });
  auto domain = all_grids();
  auto rep = simulate(domain, *oracle, *sg::make_subject(oracle));
  EXPECT_EQ(rep.domain_size, kGridDomain);
  EXPECT_EQ(rep.mismatch_count, 0u);
  EXPECT_DOUBLE_EQ(rep.error_rate, 0.0);
}

TEST(Simulate, ConstantClassifierMissesExactlyTheOtherLabel) {
  auto oracle = sgtest::grid_table("oracle", [](unsigned m) { return m < 100 ? "yes" : "no"; });
  auto domain = all_grids();
  auto rep_no = simulate(domain, *oracle, *sg::make_subject(constant("always_no", "no")));
  EXPECT_EQ(rep_no.mismatch_count, 100u);
  EXPECT_NEAR(rep_no.error_rate, 100.0 / 512.0, 1e-12);
  auto rep_yes = simulate(domain, *oracle, *sg::make_subject(constant("always_yes", "yes")));
  EXPECT_EQ(rep_yes.mismatch_count, 412u);
  EXPECT_EQ(rep_yes.mismatches.front().id, "g100");
}

TEST(Simulate, GatedWithFaultyMlHasNoSpecMismatches) {
  auto spec = std::make_shared<sg::PartialSpec>(sgtest::gated_grid_spec());
  auto oracle = sgtest::grid_table("oracle", [](unsigned m) { return sgtest::gated_oracle_label(m); });
  auto faulty = sgtest::grid_table("faulty", [](unsigned m) {
    return sgtest::gated_oracle_label(m) == "yes" ? "no" : "yes";
  });
  auto domain = all_grids();
  auto gated = simulate(domain, *oracle, *sg::make_subject(sg::GatedConfig{spec, faulty}));
  auto bare = simulate(domain, *oracle, *sg::make_subject(faulty));
  EXPECT_EQ(gated.per_source.at("SPEC").decisions, 202u);
  EXPECT_EQ(gated.per_source.at("SPEC").mismatches, 0u);
  EXPECT_EQ(gated.per_source.at("ML").mismatches, 310u);
  EXPECT_EQ(bare.mismatch_count, 512u);
  EXPECT_LE(gated.error_rate, bare.error_rate);
}

TEST(Simulate, SubjectErrorCountsAsMismatch) {
  auto oracle = constant("oracle", "yes");
  std::vector<sg::FeatureRecord> domain{grid_record(1), grid_record(2)};
  auto rep = simulate(domain, *oracle, *sg::make_subject(failing("bad")));
  EXPECT_EQ(rep.mismatch_count, 2u);
  EXPECT_EQ(rep.mismatches[0].source, "ERROR");
}

TEST(Simulate, OracleFailureAborts) {
  std::vector<sg::FeatureRecord> domain{grid_record(1)};
  try {
    simulate(domain, *failing("oracle"), *sg::make_subject(constant("s", "yes")));
    FAIL();
  } catch (const sg::Error& e) {
    EXPECT_EQ(e.code(), sg::ErrorCode::kClassifier);
  }
}

TEST(Simulate, ReportJsonHasCounts) {
  auto oracle = constant("oracle", "yes");
  std::vector<sg::FeatureRecord> domain{grid_record(1), grid_record(2)};
  auto j = sg::to_json(simulate(domain, *oracle, *sg::make_subject(constant("s", "no"))));
  EXPECT_EQ(j.at("domain_size"), 2);
  EXPECT_EQ(j.at("mismatch_count"), 2);
  EXPECT_FALSE(sg::render_text(simulate(domain, *oracle, *sg::make_subject(oracle))).empty());
}

// --- harness and domain files ---

TEST(Domain, EnumerateGridAxisGivesFullDomain) {
  auto j = sg::Json::parse(R"({"enumerate": [{"field": "img", "grid": [3, 3], "values": [0, 1]}]})");
  auto domain = sg::enumerate_domain(j);
  ASSERT_EQ(domain.size(), kGridDomain);
  std::vector<unsigned> masks;
  for (const auto& r : domain) masks.push_back(sgtest::grid_mask(r));
  std::sort(masks.begin(), masks.end());
  for (unsigned m = 0; m < kGridDomain; ++m) EXPECT_EQ(masks[m], m);
}

TEST(Domain, EnumerateCartesianProduct) {
  auto domain = sg::load_domain(kExamples / "pedestrian" / "domain.json");
  EXPECT_EQ(domain.size(), 64u);
}

TEST(Domain, RejectsUnknownKeys) {
  EXPECT_THROW(sg::enumerate_domain(sg::Json::parse(R"({"enumerate": [], "extra": 1})")), sg::Error);
}

TEST(Harness, GatedExampleHasNoSpecMismatches) {
  auto h = sg::load_harness(kExamples / "pedestrian" / "gated.json");
  EXPECT_EQ(h.pattern, "gated");
  auto oracle = sg::load_classifier(kExamples / "pedestrian" / "oracle.json");
  auto domain = sg::load_domain(kExamples / "pedestrian" / "domain.json");
  auto rep = simulate(domain, *oracle, *h.subject);
  EXPECT_EQ(rep.per_source.at("SPEC").decisions, 34u);
  EXPECT_EQ(rep.per_source.at("SPEC").mismatches, 0u);
}

TEST(Harness, SimplexAndEnsembleExamplesLoad) {
  for (const char* f : {"simplex.json", "ensemble.json"}) {
    auto h = sg::load_harness(kExamples / "pedestrian" / f);
    EXPECT_TRUE(h.subject) << f;
    EXPECT_FALSE(h.subject->decide(ped(5.5, 1.5)).prediction.label.empty());
  }
  auto h = sg::load_harness(kExamples / "pedestrian" / "simplex.json");
  auto d = h.subject->decide(ped(5.5, 1.5));
  EXPECT_EQ(d.source, "FALLBACK");
  EXPECT_EQ(d.prediction.label, "pedestrian");
}

TEST(Harness, RejectsUnknownPatternAndDanglingReference) {
  EXPECT_THROW(sg::harness_from_json(sg::Json::parse(R"({"pattern": "voting", "classifiers": {}})"), {}),
               sg::Error);
  auto j = sg::Json::parse(R"({"pattern": "simplex", "classifiers": {
      "a": {"kind": "expression", "name": "a", "rules": [], "default": "x", "default_confidence": 0.5}},
      "primary": "a", "fallback": "missing", "threshold": 0.5})");
  EXPECT_THROW(sg::harness_from_json(j, {}), sg::Error);
}
