// Copyright 2026 The alexglue Authors.
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

#ifndef ALEXGLUE_REPORT_HPP
#define ALEXGLUE_REPORT_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace alexglue {

enum class Status { kPass, kWarn, kFail };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kWarn: return "warn";
    case Status::kFail: return "fail";
  }
  return "fail";
}

/// One itemized finding inside a check.
struct Violation {
  std::string kind;
  std::string location;
  double measured = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct CheckResult {
  std::string name;
  Status status = Status::kPass;
  std::vector<Violation> items;
  // Scalar diagnostics (worst excess, sample counts, tolerances used...).
  std::map<std::string, double> metrics;

  void fail(Violation v) {
    status = Status::kFail;
    items.push_back(std::move(v));
  }
  void warn(Violation v) {
    if (status == Status::kPass) status = Status::kWarn;
    items.push_back(std::move(v));
  }
};

/// Ordered list of checks. A report passes when no check failed; warnings
/// do not change the verdict. References returned by add() stay valid.
struct VerificationReport {
  std::deque<CheckResult> checks;

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) {
      return c.status == Status::kFail;
    });
  }

  Status status() const {
    Status worst = Status::kPass;
    for (const auto& c : checks) worst = std::max(worst, c.status);
    return worst;
  }

  CheckResult& add(std::string name) {
    checks.push_back(CheckResult{std::move(name), Status::kPass, {}, {}});
    return checks.back();
  }

  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  void append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

}  // namespace alexglue

#endif  // ALEXGLUE_REPORT_HPP
