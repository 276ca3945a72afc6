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

#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "specguard/record.hpp"
#include "specguard/speclang.hpp"

namespace specguard {

/// Inference interface F : I -> O. Implementations throw
/// Error(ErrorCode::kClassifier) when no prediction can be produced.
class Classifier {
 public:
  explicit Classifier(std::string name) : name_(std::move(name)) {}
  virtual ~Classifier() = default;

  Classifier(const Classifier&) = delete;
  Classifier& operator=(const Classifier&) = delete;

  virtual Prediction classify(const FeatureRecord& input) const = 0;
  virtual std::string_view kind() const noexcept = 0;

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

using ClassifierPtr = std::shared_ptr<const Classifier>;

/// Lookup table keyed by canonical_key(); falls back to `fallback` when set.
class TableClassifier final : public Classifier {
 public:
  TableClassifier(std::string name,
                  const std::vector<std::pair<FeatureRecord, Prediction>>& entries,
                  std::optional<Prediction> fallback = std::nullopt);

  Prediction classify(const FeatureRecord& input) const override;
  std::string_view kind() const noexcept override { return "table"; }

  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::unordered_map<std::string, Prediction> table_;
  std::optional<Prediction> fallback_;
};

/// Ordered rules; the first rule whose condition holds decides the label.
class ExpressionClassifier final : public Classifier {
 public:
  struct Rule {
    Condition when;
    std::string label;
    std::optional<double> confidence;
  };

  ExpressionClassifier(std::string name, std::vector<Rule> rules, std::string default_label,
                       std::optional<double> default_confidence = std::nullopt);

  Prediction classify(const FeatureRecord& input) const override;
  std::string_view kind() const noexcept override { return "expression"; }

  const std::vector<Rule>& rules() const noexcept { return rules_; }

  /// Rules must typecheck input-only to boolean; labels must be in the
  /// alphabet.
  std::vector<std::string> validate(const Schema& schema) const;

 private:
  std::vector<Rule> rules_;
  std::string default_label_;
  std::optional<double> default_confidence_;
};

/// Wraps an in-process callable, e.g. a model bound from C or C++.
class CallbackClassifier final : public Classifier {
 public:
  using Fn = std::function<Prediction(const FeatureRecord&)>;

  CallbackClassifier(std::string name, Fn fn) : Classifier(std::move(name)), fn_(std::move(fn)) {}

  Prediction classify(const FeatureRecord& input) const override;
  std::string_view kind() const noexcept override { return "callback"; }

 private:
  Fn fn_;
};

/// Talks to an external model over JSON Lines on stdin/stdout:
///   request  {"input": {...}}
///   response {"label": "...", "confidence": 0.93}
/// The child is started lazily and restarted after a crash, timeout or
/// protocol error. Requests on one handle are serialized internally.
class SubprocessClassifier final : public Classifier {
 public:
  SubprocessClassifier(std::string name, std::vector<std::string> argv,
                       std::chrono::milliseconds timeout = std::chrono::milliseconds(5000));
  ~SubprocessClassifier() override;

  Prediction classify(const FeatureRecord& input) const override;
  std::string_view kind() const noexcept override { return "subprocess"; }

  const std::vector<std::string>& argv() const noexcept { return argv_; }
  std::chrono::milliseconds timeout() const noexcept { return timeout_; }

  struct Process;  // opaque child-process state

 private:

  std::vector<std::string> argv_;
  std::chrono::milliseconds timeout_;
  mutable std::mutex mu_;
  mutable std::unique_ptr<Process> proc_;
};

}  // namespace specguard
