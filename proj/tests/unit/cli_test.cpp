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

// End-to-end tests of the command-line tool: exit codes, output and error
// reporting.

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const fs::path kPed = fs::path(SPECGUARD_EXAMPLES_DIR) / "pedestrian";
const fs::path kData = SPECGUARD_DATA_DIR;
const fs::path kFixtures = SPECGUARD_FIXTURES_DIR;

struct Outcome {
  int exit = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("specguard_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  Outcome run(const std::string& args, const std::string& env = "") {
    const fs::path err = dir_ / "stderr.txt";
    std::string cmd = "cd '" + kPed.string() + "' && " + env + " '" + SPECGUARD_CLI + "' " + args +
                      " 2>'" + err.string() + "'";
    Outcome r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = ::pclose(p);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
  static inline int counter_ = 0;
};

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_F(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run("--help").exit, 0);
  auto v = run("--version");
  EXPECT_EQ(v.exit, 0);
  EXPECT_FALSE(v.out.empty());
}

TEST_F(Cli, UsageErrorsExitTwoWithJsonOnStderr) {
  for (const char* args : {"", "monitor run --spec spec.json", "catalog score --catalog x --condition maybe",
                           "--format yaml gate assess --questionnaire questionnaire.json"}) {
    auto r = run(args);
    EXPECT_EQ(r.exit, 2) << args;
    auto j = Json::parse(r.err);
    EXPECT_TRUE(j.contains("error")) << args;
    EXPECT_TRUE(r.out.empty()) << args;
  }
}

TEST_F(Cli, MonitorCleanTraceExitsZero) {
  auto r = run("monitor run --spec spec.json --trace trace_clean.jsonl");
  EXPECT_EQ(r.exit, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("violation_count"), 0);
}

TEST_F(Cli, MonitorViolationExitsOne) {
  auto r = run("monitor run --spec spec.json --trace trace_violation.jsonl");
  EXPECT_EQ(r.exit, 1);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("counts").at("NECESSARY"), 1);
  EXPECT_EQ(j.at("violations").at(0).at("kind"), "NECESSARY");
}

TEST_F(Cli, MonitorGoldenTraceWithFailsafePolicy) {
  auto r = run("monitor run --spec spec.json --trace trace_golden.jsonl --policy policy_failsafe.json");
  EXPECT_EQ(r.exit, 1);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("records_processed"), 10);
  EXPECT_EQ(j.at("counts").at("PRE"), 1);
  EXPECT_EQ(j.at("counts").at("POST"), 1);
  EXPECT_EQ(j.at("counts").at("NECESSARY"), 1);
  EXPECT_EQ(j.at("final_state"), "FAILSAFE");
}

TEST_F(Cli, SpecFromEnvironment) {
  auto r = run("monitor run --trace trace_clean.jsonl", "SPECGUARD_SPEC=spec.json");
  EXPECT_EQ(r.exit, 0) << r.err;
  auto missing = run("monitor run --trace trace_clean.jsonl", "SPECGUARD_SPEC=");
  EXPECT_EQ(missing.exit, 2);
}

TEST_F(Cli, MissingFileIsIoError) {
  auto r = run("monitor run --spec spec.json --trace nope.jsonl");
  EXPECT_EQ(r.exit, 2);
  auto j = Json::parse(r.err);
  EXPECT_NE(j.at("error").get<std::string>().find("IO"), std::string::npos);
}

TEST_F(Cli, MalformedSpecIsParseError) {
  std::ofstream(dir_ / "bad.json") << R"({"schema": {"fields": [], "labels": ["a"]}, "precondition": "input.x >"})";
  auto r = run("spec validate " + q(dir_ / "bad.json"));
  EXPECT_EQ(r.exit, 2);
  EXPECT_TRUE(Json::parse(r.err).contains("error"));
}

TEST_F(Cli, SpecValidateExample) {
  auto r = run("spec validate spec.json --samples samples.jsonl");
  EXPECT_EQ(r.exit, 0) << r.out << r.err;
  auto text = run("--format text spec validate spec.json");
  EXPECT_EQ(text.exit, 0);
  EXPECT_FALSE(text.out.empty());
}

TEST_F(Cli, CatalogScorePrintsSixTenths) {
  auto text = run("--format text catalog score --catalog " + q(kData / "catalog_error_handling.json") +
                  " --condition no-spec --asil C");
  EXPECT_EQ(text.exit, 0) << text.err;
  EXPECT_EQ(text.out, "0.6\n");
  auto j = Json::parse(run("catalog score --catalog " + q(kData / "catalog_error_handling.json") +
                           " --condition no-spec --asil A")
                           .out);
  EXPECT_EQ(j.at("score").at("fraction"), "2/3");
}

TEST_F(Cli, CatalogImpactOnFixture) {
  auto r = run("catalog impact --catalog " + q(kData / "catalog_impact_fixture.json"));
  EXPECT_EQ(r.exit, 0) << r.err;
  auto text = run("--format text catalog impact --catalog " + q(kData / "catalog_impact_fixture.json"));
  EXPECT_NE(text.out.find("0.50"), std::string::npos);
  EXPECT_NE(text.out.find("0.97"), std::string::npos);
  EXPECT_EQ(run("catalog census --catalog " + q(kData / "catalog_impact_fixture.json")).exit, 0);
}

TEST_F(Cli, BadAsilIsConfigError) {
  auto r = run("catalog score --catalog " + q(kData / "catalog_error_handling.json") + " --condition no-spec --asil Q");
  EXPECT_EQ(r.exit, 2);
}

TEST_F(Cli, GateAndDiagnose) {
  auto g = run("gate assess --questionnaire questionnaire.json");
  EXPECT_EQ(g.exit, 0);
  EXPECT_EQ(Json::parse(g.out).at("verdict"), "STRENGTHEN_REQUIREMENT");
  auto d = run("diagnose --failure failure.json");
  EXPECT_EQ(d.exit, 0);
  EXPECT_EQ(run("diagnose --failure failure.json --phase bogus").exit, 2);
}

TEST_F(Cli, SafetyCaseExitCodes) {
  const fs::path sc = kFixtures / "safety_case";
  EXPECT_EQ(run("safetycase check --graph safety_case.json").exit, 0);
  EXPECT_EQ(run("safetycase check --graph " + q(sc / "complete.json")).exit, 0);
  for (const char* f : {"missing_goal.json", "missing_requirement.json", "missing_evidence.json",
                        "missing_artifact.json", "asil_mismatch.json"}) {
    auto r = run("safetycase check --graph " + q(sc / f));
    EXPECT_EQ(r.exit, 1) << f;
    EXPECT_EQ(Json::parse(r.out).at("gap_count"), 1) << f;
  }
  auto cycle = run("safetycase check --graph " + q(sc / "cycle.json"));
  EXPECT_EQ(cycle.exit, 2);
  EXPECT_NE(cycle.err.find("cycle"), std::string::npos);
}

TEST_F(Cli, DatasetCoverageFailsOnFixture) {
  auto r = run("dataset coverage --data " + q(kFixtures / "coverage_2x3" / "data.jsonl") + " --requirements " +
               q(kFixtures / "coverage_2x3" / "requirements.json"));
  EXPECT_EQ(r.exit, 1);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("cells_met"), 3);
  EXPECT_EQ(j.at("cells_total"), 6);
}

TEST_F(Cli, DatasetSplitIsDeterministic) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  auto r1 = run("dataset split --data dataset.jsonl --seed 11 --out-dir " + q(a));
  auto r2 = run("dataset split --data dataset.jsonl --seed 11 --out-dir " + q(b));
  ASSERT_EQ(r1.exit, 0) << r1.err;
  ASSERT_EQ(r2.exit, 0);
  EXPECT_EQ(r1.out, r2.out);
  std::size_t lines = 0;
  for (const char* part : {"train.jsonl", "validation.jsonl", "test.jsonl"}) {
    auto x = slurp(a / part);
    EXPECT_EQ(x, slurp(b / part)) << part;
    lines += static_cast<std::size_t>(std::count(x.begin(), x.end(), '\n'));
  }
  EXPECT_EQ(lines, 10u);
  const std::string train = slurp(a / "train.jsonl");
  EXPECT_EQ(std::count(train.begin(), train.end(), '\n'), 6);
}

TEST_F(Cli, DatasetSplitNeedsSeed) {
  EXPECT_EQ(run("dataset split --data dataset.jsonl").exit, 2);
  EXPECT_EQ(run("dataset split --data dataset.jsonl --seed 1 --ratios 0.5,0.5").exit, 2);
}

TEST_F(Cli, DatasetAugmentUncertaintyBoundaryVerify) {
  auto aug = run("dataset augment --spec spec.json --data dataset.jsonl --out " + q(dir_ / "aug.jsonl"));
  EXPECT_EQ(aug.exit, 0) << aug.err;
  EXPECT_TRUE(fs::exists(dir_ / "aug.jsonl"));
  auto unc = run("dataset uncertainty --spec spec.json --known dataset.jsonl --probes samples.jsonl --depth 2");
  EXPECT_EQ(unc.exit, 0) << unc.err;
  EXPECT_EQ(run("dataset uncertainty --spec spec.json --known dataset.jsonl --probes samples.jsonl --depth 5").exit, 2);
  auto bnd = run("dataset boundary --data dataset.jsonl --requirements requirements.json --epsilon 0.1");
  EXPECT_EQ(bnd.exit, 0) << bnd.err;
  EXPECT_NE(bnd.out.find("d03"), std::string::npos);
  auto ver = run("dataset verify --spec spec.json --data dataset.jsonl --requirements requirements.json");
  EXPECT_TRUE(ver.exit == 0 || ver.exit == 1) << ver.err;
}

TEST_F(Cli, PatternsSimulate) {
  auto r = run("patterns simulate --harness gated.json --domain domain.json --oracle oracle.json");
  EXPECT_EQ(r.exit, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("domain_size"), 64);
  EXPECT_EQ(j.at("per_source").at("SPEC").at("mismatches"), 0);
}
