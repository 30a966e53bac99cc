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

#include "spectraff/report.hpp"

#include <cmath>
#include <cstdio>
#include <array>
#include <map>
#include <sstream>

namespace spectraff {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::floor(v) && std::abs(v) < 9007199254740992.0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

nlohmann::json number_json(double v) {
  if (!std::isfinite(v)) return format_number(v);
  if (v == std::floor(v) && std::abs(v) < 9007199254740992.0) return static_cast<std::int64_t>(v);
  return v;
}

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, double>) {
    return number_json(*v);
  } else {
    return *v;
  }
}

std::string opt_csv(const std::optional<double>& v) { return v ? format_number(*v) : ""; }
std::string opt_csv(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : ""; }

}  // namespace

nlohmann::json ReportRow::to_json() const {
  return nlohmann::json{{"family", family},
                        {"params", params},
                        {"check", check},
                        {"size", size},
                        {"observed", number_json(observed)},
                        {"expected", opt_json(expected)},
                        {"bound", opt_json(bound)},
                        {"ratio", opt_json(ratio)},
                        {"satisfied", opt_json(satisfied)},
                        {"hypothesis_met", opt_json(hypothesis_met)},
                        {"seed", seed}};
}

std::string ReportRow::to_csv() const {
  std::ostringstream out;
  out << csv_field(family) << ',' << csv_field(params.dump()) << ',' << csv_field(check) << ','
      << csv_field(size) << ',' << format_number(observed) << ',' << opt_csv(expected) << ','
      << opt_csv(bound) << ',' << opt_csv(ratio) << ',' << opt_csv(satisfied) << ','
      << opt_csv(hypothesis_met) << ',' << seed;
  return out.str();
}

void ExperimentReport::append(const ExperimentReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

std::size_t ExperimentReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.satisfied.has_value() && !*r.satisfied;
  return n;
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) out << r.to_csv() << '\n';
  return out.str();
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) rows_json.push_back(r.to_json());
  return nlohmann::json{{"columns", report_columns()}, {"rows", rows_json}};
}

nlohmann::json ExperimentReport::summary() const {
  std::map<std::string, std::array<std::size_t, 3>> by_check;
  for (const auto& r : rows) {
    auto& c = by_check[r.check];
    if (!r.satisfied) {
      ++c[2];
    } else if (*r.satisfied) {
      ++c[0];
    } else {
      ++c[1];
    }
  }
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& [name, c] : by_check) {
    checks[name] = {{"satisfied", c[0]}, {"failed", c[1]}, {"report_only", c[2]}};
  }
  return nlohmann::json{{"rows", rows.size()}, {"failures", failures()}, {"checks", checks}};
}

}  // namespace spectraff
