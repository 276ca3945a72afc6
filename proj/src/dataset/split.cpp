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
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include "specguard/dataset.hpp"
#include "specguard/error.hpp"

namespace specguard {

void validate(const SplitSpec& spec) {
  double sum = 0.0;
  for (double r : spec.ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorCode::kConfig, "split ratios must lie in [0,1]");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::kConfig, "split ratios must sum to 1 (got " + format_number(sum) + ")");
  if (spec.stratify_by) {
    auto issues = validate(*spec.stratify_by);
    if (!issues.empty()) throw Error(ErrorCode::kConfig, "invalid stratification", issues);
  }
}

std::array<std::size_t, 3> apportion(std::size_t n, const std::array<double, 3>& ratios) {
  constexpr double kEps = 1e-9;
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    double quota = static_cast<double>(n) * ratios[i];
    double whole = std::floor(quota + kEps);
    counts[i] = static_cast<std::size_t>(whole);
    remainder[i] = std::max(0.0, quota - whole);
    assigned += counts[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  // Stable: equal remainders keep train, validation, test order.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b] + kEps;
  });
  for (std::size_t j = 0; assigned < n; j = (j + 1) % 3) {
    ++counts[order[j]];
    ++assigned;
  }
  // Quotas can exceed n only through rounding slack in the ratios.
  for (std::size_t i = 3; assigned > n && i-- > 0;) {
    while (assigned > n && counts[i] > 0) {
      --counts[i];
      --assigned;
    }
  }
  return counts;
}

namespace {

/// Uniform integer in [0, bound) by rejection, independent of the standard
/// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

SplitResult split(std::span<const LabeledRecord> data, const SplitSpec& spec) {
  validate(spec);
  SplitResult result;

  struct Item {
    std::string id;
    std::string key;
    std::size_t index;
  };
  std::vector<Item> items;
  items.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    items.push_back({record_id(data[i], i), canonical_key(data[i].input), i});
  std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    return std::tie(a.id, a.key, data[a.index].label, a.index) <
           std::tie(b.id, b.key, data[b.index].label, b.index);
  });

  // Strata keyed by name; std::map fixes their processing order.
  std::map<std::string, std::vector<std::size_t>> strata;
  if (!spec.stratify_by) {
    auto& all = strata["all"];
    for (const auto& it : items) all.push_back(it.index);
  } else {
    for (const auto& it : items) {
      std::string name;
      try {
        for (const auto& part : spec.stratify_by->partitions)
          if (holds(part.predicate.expr, EvalContext{data[it.index].input, nullptr})) {
            name = part.name;
            break;
          }
      } catch (const EvalError& e) {
        result.notices.push_back("record " + it.id + " could not be stratified: " + e.what());
      }
      if (name.empty()) name = "<unmatched>";
      strata[name].push_back(it.index);
    }
  }

  std::mt19937_64 rng(spec.seed);
  for (auto& [name, members] : strata) {
    fisher_yates(members, rng);
    StratumReport sr{name, members.size(), apportion(members.size(), spec.ratios)};
    std::size_t pos = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t c = 0; c < sr.counts[s]; ++c) result.parts[s].push_back(data[members[pos++]]);
      if (sr.counts[s] == 0 && spec.ratios[s] > 0.0)
        result.notices.push_back("stratum '" + name + "' contributes no records to the " +
                                 (s == 0 ? "train" : s == 1 ? "validation" : "test") + " split");
    }
    result.strata.push_back(std::move(sr));
  }
  return result;
}

}  // namespace specguard
