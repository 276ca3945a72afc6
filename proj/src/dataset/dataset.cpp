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

#include "specguard/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "specguard/error.hpp"

namespace specguard {

std::string record_id(const LabeledRecord& r, std::size_t index) {
  return r.input.id ? *r.input.id : "#" + std::to_string(index);
}

std::vector<std::string> validate(const Partitioning& p, const Schema* schema) {
  std::vector<std::string> issues;
  const std::string who = "partitioning '" + p.name + "'";
  if (p.name.empty()) issues.push_back("partitioning with empty name");
  if (p.partitions.empty()) issues.push_back(who + " has no partitions");
  std::set<std::string> names;
  for (const auto& part : p.partitions) {
    if (!names.insert(part.name).second)
      issues.push_back(who + " has duplicate partition '" + part.name + "'");
    if (part.risk_weight < 1 || part.risk_weight > 4)
      issues.push_back(who + " partition '" + part.name + "' risk_weight must be 1..4");
    if (references_output(part.predicate.expr))
      issues.push_back(who + " partition '" + part.name + "' predicate references output");
    if (schema) {
      TypeCheckResult tc = typecheck(part.predicate.expr, *schema, false);
      for (const auto& e : tc.errors)
        issues.push_back(who + " partition '" + part.name + "': " + e);
      if (tc.type && *tc.type != ValueType::kBoolean)
        issues.push_back(who + " partition '" + part.name + "' predicate is not boolean");
    }
  }
  return issues;
}

std::vector<std::string> validate(const DataSetRequirements& reqs, const Schema* schema) {
  std::vector<std::string> issues;
  std::set<std::string> names;
  for (const auto& p : reqs.partitionings) {
    if (!names.insert(p.name).second) issues.push_back("duplicate partitioning '" + p.name + "'");
    auto sub = validate(p, schema);
    issues.insert(issues.end(), sub.begin(), sub.end());
  }
  if (reqs.base_min_samples < 1) issues.push_back("base_min_samples must be >= 1");
  if (!(reqs.risk_multiplier >= 1.0) || !std::isfinite(reqs.risk_multiplier))
    issues.push_back("risk_multiplier must be a finite number >= 1");
  for (const auto& cell : reqs.infeasible_cells) {
    if (cell.size() != reqs.partitionings.size()) {
      issues.push_back("infeasible cell needs one partition per partitioning (" +
                       std::to_string(reqs.partitionings.size()) + ")");
      continue;
    }
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const auto& parts = reqs.partitionings[i].partitions;
      if (std::none_of(parts.begin(), parts.end(),
                       [&](const Partition& p) { return p.name == cell[i]; }))
        issues.push_back("infeasible cell names unknown partition '" + cell[i] +
                         "' of partitioning '" + reqs.partitionings[i].name + "'");
    }
  }
  return issues;
}

std::size_t required_samples(const DataSetRequirements& reqs, int risk) {
  double r = static_cast<double>(reqs.base_min_samples) *
             std::pow(reqs.risk_multiplier, static_cast<double>(risk - 1));
  // Products like 2 * 1.5^2 land a hair above the exact value.
  return static_cast<std::size_t>(std::ceil(r - 1e-9));
}

const char* to_string(CellStatus s) noexcept {
  switch (s) {
    case CellStatus::kMet: return "MET";
    case CellStatus::kUnderfilled: return "UNDERFILLED";
    case CellStatus::kUnwitnessed: return "UNWITNESSED";
  }
  return "UNKNOWN";
}

CoverageReport coverage_report(std::span<const LabeledRecord> data,
                               const DataSetRequirements& reqs) {
  auto issues = validate(reqs);
  if (!issues.empty())
    throw Error(ErrorCode::kConfig, "invalid data-set requirements", std::move(issues));

  CoverageReport report;
  report.records_total = data.size();
  const std::size_t k = reqs.partitionings.size();
  for (const auto& p : reqs.partitionings) {
    PartitioningReport pr;
    pr.name = p.name;
    for (const auto& part : p.partitions) pr.partition_counts[part.name] = 0;
    report.partitionings.push_back(std::move(pr));
  }

  // Cells in odometer order over partitionings; the last varies fastest.
  std::vector<std::size_t> radix(k);
  std::size_t cell_count = k == 0 ? 0 : 1;
  for (std::size_t i = 0; i < k; ++i) {
    radix[i] = reqs.partitionings[i].partitions.size();
    cell_count *= radix[i];
  }
  std::vector<std::size_t> counts(cell_count, 0);
  auto cell_index = [&](const std::vector<std::size_t>& digits) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) idx = idx * radix[i] + digits[i];
    return idx;
  };

  for (std::size_t r = 0; r < data.size(); ++r) {
    const std::string id = record_id(data[r], r);
    MembershipRow row{id, {}};
    std::vector<std::vector<std::size_t>> matched(k);
    bool failed = false;
    for (std::size_t i = 0; i < k && !failed; ++i) {
      const auto& parts = reqs.partitionings[i].partitions;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        try {
          if (holds(parts[j].predicate.expr, EvalContext{data[r].input, nullptr}))
            matched[i].push_back(j);
        } catch (const EvalError& e) {
          report.errors.push_back({id, "partitioning '" + reqs.partitionings[i].name +
                                           "' partition '" + parts[j].name + "': " + e.what()});
          failed = true;
          break;
        }
      }
    }
    if (failed) continue;  // excluded from every count
    bool covered = true;
    for (std::size_t i = 0; i < k; ++i) {
      auto& pr = report.partitionings[i];
      const auto& parts = reqs.partitionings[i].partitions;
      std::vector<std::string> names;
      for (std::size_t j : matched[i]) {
        names.push_back(parts[j].name);
        ++pr.partition_counts[parts[j].name];
      }
      if (matched[i].empty()) {
        pr.cover_failures.push_back(id);
        covered = false;
      } else if (matched[i].size() > 1) {
        pr.overlaps.emplace_back(id, names);
      }
      row.matches.push_back(std::move(names));
    }
    report.membership.push_back(std::move(row));
    if (!covered || k == 0) continue;
    ++report.records_counted;
    // A record lands in every cell of the product of its matches.
    std::size_t combos = 1;
    for (const auto& m : matched) combos *= m.size();
    std::vector<std::size_t> digits(k);
    for (std::size_t n = 0; n < combos; ++n) {
      std::size_t rest = n;
      for (std::size_t i = k; i-- > 0;) {
        digits[i] = matched[i][rest % matched[i].size()];
        rest /= matched[i].size();
      }
      ++counts[cell_index(digits)];
    }
  }

  std::set<std::vector<std::string>> infeasible(reqs.infeasible_cells.begin(),
                                                reqs.infeasible_cells.end());
  std::vector<std::size_t> digits(k, 0);
  for (std::size_t c = 0; c < cell_count; ++c) {
    std::size_t rest = c;
    for (std::size_t i = k; i-- > 0;) {
      digits[i] = rest % radix[i];
      rest /= radix[i];
    }
    CellReport cell;
    for (std::size_t i = 0; i < k; ++i) {
      const Partition& part = reqs.partitionings[i].partitions[digits[i]];
      cell.partitions.push_back(part.name);
      cell.risk = std::max(cell.risk, part.risk_weight);
    }
    cell.required = required_samples(reqs, cell.risk);
    cell.count = counts[c];
    cell.marked_infeasible = infeasible.count(cell.partitions) > 0;
    if (cell.marked_infeasible && cell.count == 0) {
      cell.status = CellStatus::kUnwitnessed;
    } else {
      if (cell.marked_infeasible) {
        std::string name;
        for (const auto& p : cell.partitions) name += (name.empty() ? "" : " x ") + p;
        report.notices.push_back("cell " + name + " is marked infeasible but has " +
                                 std::to_string(cell.count) + " samples");
      }
      cell.status = cell.count >= cell.required ? CellStatus::kMet : CellStatus::kUnderfilled;
    }
    report.cells.push_back(std::move(cell));
  }

  report.cells_total = report.cells.size();
  for (const auto& cell : report.cells) {
    if (cell.status != CellStatus::kUnwitnessed) ++report.cells_feasible;
    if (cell.status == CellStatus::kMet) ++report.cells_met;
  }
  report.cell_coverage = report.cells_feasible == 0
                             ? 1.0
                             : static_cast<double>(report.cells_met) /
                                   static_cast<double>(report.cells_feasible);
  bool cover_ok = std::all_of(report.partitionings.begin(), report.partitionings.end(),
                              [](const PartitioningReport& p) { return p.cover_failures.empty(); });
  report.pass = cover_ok && report.errors.empty() && report.cells_met == report.cells_feasible;
  return report;
}

namespace {

struct Comparison {
  std::string field;
  double threshold;
};

std::optional<double> literal_number(const Expression& e) {
  if (const auto* n = std::get_if<NumberLit>(&e.node().v)) return n->value;
  if (const auto* u = std::get_if<Unary>(&e.node().v))
    if (u->op == UnaryOp::kNeg)
      if (auto inner = literal_number(u->operand)) return -*inner;
  return std::nullopt;
}

std::optional<std::string> plain_field(const Expression& e) {
  if (const auto* p = std::get_if<InputPath>(&e.node().v))
    if (!p->cell) return p->field;
  return std::nullopt;
}

std::optional<Comparison> single_comparison(const Expression& e) {
  const auto* b = std::get_if<Binary>(&e.node().v);
  if (b == nullptr) return std::nullopt;
  switch (b->op) {
    case BinaryOp::kLt: case BinaryOp::kLe: case BinaryOp::kGt: case BinaryOp::kGe:
    case BinaryOp::kEq: case BinaryOp::kNe:
      break;
    default:
      return std::nullopt;
  }
  if (auto f = plain_field(b->lhs))
    if (auto k = literal_number(b->rhs)) return Comparison{*f, *k};
  if (auto f = plain_field(b->rhs))
    if (auto k = literal_number(b->lhs)) return Comparison{*f, *k};
  return std::nullopt;
}

}  // namespace

BoundaryReport boundary_cases(const Partitioning& partitioning,
                              std::span<const LabeledRecord> data, double epsilon) {
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::kConfig, "epsilon must be >= 0");
  BoundaryReport report;
  for (const auto& part : partitioning.partitions) {
    auto cmp = single_comparison(part.predicate.expr);
    if (!cmp) {
      report.skipped.push_back("partition '" + part.name + "' skipped: predicate '" +
                               part.predicate.text + "' is not a single comparison input.f <op> k");
      continue;
    }
    for (std::size_t r = 0; r < data.size(); ++r) {
      const FieldValue* v = data[r].input.find(cmp->field);
      const double* x = v ? std::get_if<double>(v) : nullptr;
      if (x == nullptr) {
        report.errors.push_back({record_id(data[r], r),
                                 v ? "field '" + cmp->field + "' is not numeric"
                                   : "missing field: input." + cmp->field});
        continue;
      }
      double d = std::abs(*x - cmp->threshold);
      if (d <= epsilon + 1e-12)
        report.cases.push_back({record_id(data[r], r), part.name, cmp->field, cmp->threshold, d});
    }
  }
  return report;
}

}  // namespace specguard
