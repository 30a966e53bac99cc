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
// The thirteen acceptance checks, runnable one at a time or as a suite.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spectraff/caps.hpp"
#include "spectraff/graph.hpp"
#include "spectraff/report.hpp"
#include "spectraff/rng.hpp"

namespace spectraff {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0 means no time limit
};

struct AcceptanceOptions {
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  std::set<int> only;  // empty runs all
  /// Path of the command-line tool; when set, the falsifiability check
  /// also requires `certify` with a halved claim to exit nonzero.
  std::string cli_path;
  bool enforce_time = true;
};

/// Runs the selected criteria in order. Certified graphs from the spectral
/// criteria are reused by the mixing and double-counting criteria (which
/// then also run the spectral ones they depend on, untimed).
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, const Caps& caps = {},
                                            ExperimentReport* report = nullptr);

std::string format_result(const CriterionResult& r);

namespace oracle {

struct PatternCounts {
  std::uint64_t labeled = 0;
  std::uint64_t orbits = 0;
};

/// Realized K_t color patterns over all ordered injective t-tuples of the
/// whole vertex set; orbits by permuting the pattern matrix itself.
PatternCounts kt_patterns_by_ordered_tuples(const ColoredGraph& cg, std::uint32_t t);

}  // namespace oracle

}  // namespace spectraff
