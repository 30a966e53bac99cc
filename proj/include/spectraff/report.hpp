// Copyright 2026 The spectraff Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once
// Report rows shared by every experiment: one CSV schema, mirrored in JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace spectraff {

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// Fixed column order; schema/columns.json documents each one.
inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{"family", "params",   "check",     "size",
                                             "observed", "expected", "bound",   "ratio",
                                             "satisfied", "hypothesis_met", "seed"};
  return cols;
}

struct ReportRow {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::string check;
  std::string size;
  double observed = 0.0;
  std::optional<double> expected;
  std::optional<double> bound;
  std::optional<double> ratio;
  /// Empty for report-only rows; false marks a hard failure.
  std::optional<bool> satisfied;
  std::optional<bool> hypothesis_met;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;

  void append(const ExperimentReport& other);
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }

  std::string to_csv() const;
  /// {"columns": [...], "rows": [...]}
  nlohmann::json to_json() const;
  /// Per-check counts of satisfied / failed / report-only rows.
  nlohmann::json summary() const;
};

/// Integers print exactly, other values with 10 significant digits.
std::string format_number(double v);

}  // namespace spectraff
