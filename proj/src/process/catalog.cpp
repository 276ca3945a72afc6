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
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "specguard/error.hpp"
#include "specguard/process.hpp"

namespace specguard {
namespace {

__extension__ typedef __int128 Wide;

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

struct CategoryInfo {
  Category category;
  const char* id;
  const char* display;
  MethodType type;
  std::size_t count;
};

constexpr std::array<CategoryInfo, kCategoryCount> kCategories{{
    {Category::kCodingGuidelines, "coding_guidelines", "Coding guidelines",
     MethodType::kBestPractice, 8},
    {Category::kArchitectureNotations, "architecture_notations", "Architecture notations",
     MethodType::kBestPractice, 3},
    {Category::kArchitectureDesign, "architecture_design", "Architecture design",
     MethodType::kBestPractice, 7},
    {Category::kArchitectureErrorDetection, "architecture_error_detection",
     "Architecture error detection", MethodType::kFaultTolerance, 6},
    {Category::kArchitectureErrorHandling, "architecture_error_handling",
     "Architecture error handling", MethodType::kFaultTolerance, 4},
    {Category::kArchitectureVerification, "architecture_verification",
     "Architecture verification", MethodType::kVerification, 7},
    {Category::kUnitDesignNotations, "unit_design_notations", "Unit design notations",
     MethodType::kBestPractice, 4},
    {Category::kUnitDesignImplementation, "unit_design_implementation",
     "Unit design and implementation", MethodType::kBestPractice, 10},
    {Category::kUnitVerification, "unit_verification",
     "Unit design and implementation verification", MethodType::kVerification, 8},
    {Category::kUnitTesting, "unit_testing", "Unit testing", MethodType::kTesting, 5},
    {Category::kUnitTestDerivation, "unit_test_derivation", "Unit deriving test cases",
     MethodType::kTesting, 4},
    {Category::kUnitTestCoverage, "unit_test_coverage", "Unit testing coverage metrics",
     MethodType::kTesting, 3},
    {Category::kIntegrationTesting, "integration_testing", "Integration testing",
     MethodType::kTesting, 5},
    {Category::kIntegrationTestDerivation, "integration_test_derivation",
     "Integration deriving test cases", MethodType::kTesting, 4},
    {Category::kIntegrationTestCoverage, "integration_test_coverage",
     "Integration testing coverage metrics", MethodType::kTesting, 2},
    {Category::kSafetyRequirementsVerification, "safety_requirements_verification",
     "Verification of software safety requirements", MethodType::kTesting, 3},
}};

const CategoryInfo& info(Category c) { return kCategories[static_cast<std::size_t>(c)]; }

}  // namespace

const char* to_string(Asil a) noexcept {
  switch (a) {
    case Asil::kA: return "A";
    case Asil::kB: return "B";
    case Asil::kC: return "C";
    case Asil::kD: return "D";
  }
  return "?";
}

Asil parse_asil(std::string_view s) {
  std::string u = upper(s);
  if (u.rfind("ASIL-", 0) == 0 || u.rfind("ASIL_", 0) == 0) u = u.substr(5);
  else if (u.rfind("ASIL", 0) == 0) u = u.substr(4);
  if (u == "A") return Asil::kA;
  if (u == "B") return Asil::kB;
  if (u == "C") return Asil::kC;
  if (u == "D") return Asil::kD;
  throw Error(ErrorCode::kConfig, "unknown ASIL '" + std::string(s) + "' (expected A, B, C or D)");
}

const char* to_string(Recommendation r) noexcept {
  switch (r) {
    case Recommendation::kOptional: return "o";
    case Recommendation::kRecommended: return "+";
    case Recommendation::kHighlyRecommended: return "++";
  }
  return "?";
}

Recommendation parse_recommendation(std::string_view s) {
  std::string u = upper(s);
  if (u == "O" || u == "-") return Recommendation::kOptional;
  if (u == "+" || u == "R") return Recommendation::kRecommended;
  if (u == "++" || u == "HR") return Recommendation::kHighlyRecommended;
  throw Error(ErrorCode::kConfig,
              "unknown recommendation '" + std::string(s) + "' (expected o, +, ++ or O, R, HR)");
}

int weight(Recommendation r) noexcept {
  switch (r) {
    case Recommendation::kOptional: return 0;
    case Recommendation::kRecommended: return 1;
    case Recommendation::kHighlyRecommended: return 2;
  }
  return 0;
}

const char* to_string(MethodType t) noexcept {
  switch (t) {
    case MethodType::kBestPractice: return "BEST_PRACTICE";
    case MethodType::kVerification: return "VERIFICATION";
    case MethodType::kTesting: return "TESTING";
    case MethodType::kFaultTolerance: return "FAULT_TOLERANCE";
  }
  return "?";
}

MethodType parse_method_type(std::string_view s) {
  std::string u = upper(s);
  std::replace(u.begin(), u.end(), '-', '_');
  for (MethodType t : {MethodType::kBestPractice, MethodType::kVerification, MethodType::kTesting,
                       MethodType::kFaultTolerance})
    if (u == to_string(t)) return t;
  throw Error(ErrorCode::kConfig,
              "unknown method type '" + std::string(s) +
                  "' (expected BEST_PRACTICE, VERIFICATION, TESTING or FAULT_TOLERANCE)");
}

const char* to_string(Category c) noexcept { return info(c).id; }
const char* display_name(Category c) noexcept { return info(c).display; }
MethodType method_type_of(Category c) noexcept { return info(c).type; }
std::size_t census_size(Category c) noexcept { return info(c).count; }

Category parse_category(std::string_view s) {
  for (const auto& ci : kCategories)
    if (s == ci.id || s == ci.display) return ci.category;
  throw Error(ErrorCode::kConfig, "unknown method category '" + std::string(s) + "'");
}

std::vector<std::string> validate_catalog(std::span<const Method> catalog) {
  std::vector<std::string> issues;
  std::set<std::string> ids;
  for (const auto& m : catalog) {
    if (m.id.empty()) issues.push_back("method with empty id");
    else if (!ids.insert(m.id).second) issues.push_back("duplicate method id '" + m.id + "'");
    if (m.type != method_type_of(m.category))
      issues.push_back("method '" + m.id + "' has type " + to_string(m.type) + " but category " +
                       to_string(m.category) + " is " + to_string(method_type_of(m.category)));
  }
  return issues;
}

std::vector<Method> filter_by_type(std::span<const Method> catalog, MethodType type) {
  std::vector<Method> out;
  for (const auto& m : catalog)
    if (m.type == type) out.push_back(m);
  return out;
}

std::vector<CensusRow> census(std::span<const Method> catalog) {
  std::vector<CensusRow> rows;
  for (const auto& ci : kCategories) {
    auto n = static_cast<std::size_t>(std::count_if(
        catalog.begin(), catalog.end(), [&](const Method& m) { return m.category == ci.category; }));
    rows.push_back({ci.category, ci.count, n});
  }
  return rows;
}

bool is_full_catalog(std::span<const Method> catalog) {
  auto rows = census(catalog);
  return std::all_of(rows.begin(), rows.end(),
                     [](const CensusRow& r) { return r.expected == r.actual; });
}

// ---------------------------------------------------------------- Rational

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::kConfig, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

double Rational::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_fraction() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal(int digits) const {
  Wide scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  bool negative = num_ < 0;
  Wide n = negative ? -static_cast<Wide>(num_) : num_;
  Wide scaled = (n * scale * 2 + den_) / (2 * static_cast<Wide>(den_));
  auto whole = static_cast<long long>(scaled / scale);
  auto frac = static_cast<long long>(scaled % scale);
  std::string out = (negative && scaled != 0 ? "-" : "") + std::to_string(whole);
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return out;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, std::int64_t k) { return Rational(a.num_, a.den_ * k); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<Wide>(a.num_) * b.den_ <=> static_cast<Wide>(b.num_) * a.den_;
}

// ---------------------------------------------------------------- scoring

const char* to_string(ScoringCondition c) noexcept {
  return c == ScoringCondition::kNoSpecification ? "NO_SPECIFICATION" : "NO_INTERPRETABILITY";
}

const char* cli_name(ScoringCondition c) noexcept {
  return c == ScoringCondition::kNoSpecification ? "no-spec" : "no-interp";
}

ScoringCondition parse_condition(std::string_view s) {
  std::string u = upper(s);
  std::replace(u.begin(), u.end(), '-', '_');
  if (u == "NO_SPEC" || u == "NO_SPECIFICATION") return ScoringCondition::kNoSpecification;
  if (u == "NO_INTERP" || u == "NO_INTERPRETABILITY") return ScoringCondition::kNoInterpretability;
  throw Error(ErrorCode::kConfig,
              "unknown condition '" + std::string(s) + "' (expected no-spec or no-interp)");
}

int condition_value(const Method& m, ScoringCondition c) noexcept {
  bool needs = c == ScoringCondition::kNoSpecification ? m.requires_specification
                                                       : m.requires_interpretability;
  return needs ? 0 : 1;
}

Rational score(std::span<const Method> methods, ScoringCondition c, Asil a) {
  std::int64_t num = 0;
  std::int64_t den = 0;
  for (const auto& m : methods) {
    int r = weight(m.at(a));
    num += condition_value(m, c) * r;
    den += r;
  }
  if (den == 0)
    throw Error(ErrorCode::kConfig, std::string("no recommended methods for ASIL ") + to_string(a));
  return Rational(num, den);
}

double population_std(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

const ImpactCell& ImpactTable::at(ScoringCondition c, MethodType t) const {
  for (const auto& cell : cells)
    if (cell.condition == c && cell.type == t) return cell;
  throw Error(ErrorCode::kConfig, std::string("impact table has no cell for ") + to_string(c) +
                                      " / " + to_string(t));
}

ImpactTable impact_table(std::span<const Method> catalog, std::vector<MethodType> types) {
  ImpactTable table;
  table.types = std::move(types);
  for (ScoringCondition c : {ScoringCondition::kNoSpecification, ScoringCondition::kNoInterpretability}) {
    for (MethodType t : table.types) {
      std::vector<Method> subset = filter_by_type(catalog, t);
      ImpactCell cell{c, t, {}, Rational(0, 1), 0.0};
      std::array<double, 4> values{};
      Rational sum(0, 1);
      for (Asil a : kAllAsils) {
        try {
          cell.per_asil[static_cast<std::size_t>(a)] = score(subset, c, a);
        } catch (const Error& e) {
          throw Error(ErrorCode::kConfig, std::string(to_string(t)) + ": " + e.what());
        }
        sum = sum + cell.per_asil[static_cast<std::size_t>(a)];
        values[static_cast<std::size_t>(a)] = cell.per_asil[static_cast<std::size_t>(a)].to_double();
      }
      cell.mean = sum / 4;
      cell.std_dev = population_std(values);
      table.cells.push_back(cell);
    }
  }
  return table;
}

}  // namespace specguard
