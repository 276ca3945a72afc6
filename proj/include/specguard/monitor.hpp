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

// Trace-level runtime verification with a monotone fail-safe state machine.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specguard/json_io.hpp"
#include "specguard/record.hpp"
#include "specguard/spec.hpp"

namespace specguard {

enum class ViolationKind { kPre, kPost, kSufficient, kNecessary, kProbabilistic, kEvalError };
inline constexpr std::size_t kViolationKindCount = 6;

const char* to_string(ViolationKind kind) noexcept;  // "PRE", "POST", ...

enum class Action { kMarkUntrusted, kDegrade, kFailsafe };
enum class MonitorState { kNominal, kDegraded, kFailsafe };

const char* to_string(Action action) noexcept;        // "MARK_UNTRUSTED", ...
const char* to_string(MonitorState state) noexcept;   // "NOMINAL", ...
Action parse_action(std::string_view text);           // throws Error(kConfig)

struct TraceRecord {
  std::string id;
  FeatureRecord input;
  Prediction output;
};

struct Violation {
  std::string record_id;
  ViolationKind kind = ViolationKind::kPre;
  std::string condition;                 // condition text or constraint summary
  std::optional<std::string> label;      // SUFFICIENT / NECESSARY
  std::optional<std::size_t> index;      // position within the label's list
  std::vector<std::pair<std::string, FieldValue>> values;  // referenced paths
  std::string detail;
  bool post_failsafe = false;
};

/// on_post_class_violation governs POST, SUFFICIENT, NECESSARY, PROBABILISTIC
/// and EVAL_ERROR findings; it may not be MARK_UNTRUSTED.
struct MonitorPolicy {
  Action on_pre_violation = Action::kMarkUntrusted;
  Action on_post_class_violation = Action::kDegrade;
  std::size_t probabilistic_window = 100;

  void validate() const;  // throws Error(kConfig)
};

MonitorPolicy policy_from_json(const Json& j);
Json to_json(const MonitorPolicy& policy);

struct Transition {
  std::string record_id;
  MonitorState from = MonitorState::kNominal;
  MonitorState to = MonitorState::kNominal;
  ViolationKind cause = ViolationKind::kPre;
};

struct MonitorReport {
  std::vector<Violation> violations;
  std::array<std::size_t, kViolationKindCount> counts{};
  MonitorState final_state = MonitorState::kNominal;
  std::size_t records_processed = 0;
  std::size_t post_failsafe_records = 0;
  std::size_t windows_evaluated = 0;
  std::vector<std::string> untrusted;  // ids whose precondition failed
  std::vector<Transition> transitions;

  std::size_t count(ViolationKind kind) const { return counts[static_cast<std::size_t>(kind)]; }
};

Json to_json(const MonitorReport& report, const MonitorPolicy& policy);
std::string render_text(const MonitorReport& report);

/// Per-sample checks. POST, SUFFICIENT and NECESSARY are evaluated only when
/// the precondition holds; evaluation failures and non-conforming records
/// become EVAL_ERROR violations.
std::vector<Violation> check_sample(const PartialSpec& spec, const TraceRecord& record);

/// Evaluates every probabilistic constraint over `inputs`. `batch_id` becomes
/// the record id of the resulting violations.
std::vector<Violation> check_batch_probabilistic(const PartialSpec& spec,
                                                 std::span<const FeatureRecord> inputs,
                                                 std::string_view batch_id = "batch");

/// Streaming monitor. The spec must outlive the monitor.
class Monitor {
 public:
  Monitor(const PartialSpec& spec, MonitorPolicy policy);

  /// Checks one record and returns the violations it produced, including any
  /// window-level findings completed by it.
  std::vector<Violation> observe(const TraceRecord& record);

  /// Accounts for a trace line that could not be decoded.
  std::vector<Violation> observe_malformed(std::string id, std::string error);

  MonitorState state() const noexcept { return report_.final_state; }
  const MonitorReport& report() const noexcept { return report_; }

 private:
  void record(std::vector<Violation>& found, const std::string& record_id);
  std::vector<Violation> flush_window();

  const PartialSpec& spec_;
  MonitorPolicy policy_;
  MonitorReport report_;
  std::vector<FeatureRecord> window_;
  std::size_t window_start_ = 0;
};

MonitorReport run_trace(const PartialSpec& spec, std::span<const TraceRecord> trace,
                        const MonitorPolicy& policy = {});

/// Reads a JSON Lines trace. Lines that do not decode become EVAL_ERROR
/// findings with record id "line:N"; an unreadable file throws Error(kIo).
MonitorReport run_trace_file(const PartialSpec& spec, const std::filesystem::path& path,
                             const MonitorPolicy& policy = {});
MonitorReport run_trace_text(const PartialSpec& spec, std::string_view jsonl,
                             const MonitorPolicy& policy = {});

TraceRecord trace_record_from_json(const Json& j, std::string_view where);
Json to_json(const TraceRecord& r);

}  // namespace specguard
