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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spectraff {

/// Raised when a request exceeds one of the desk-scale size limits.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a hard (exact) assertion fails during a check or experiment.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size limits shared by all constructors and enumerations.
struct Caps {
  std::uint32_t max_field_size = 1u << 14;  // q^n and q^d for enumeration
  std::uint32_t max_vertices = 4096;        // dense graphs and eigensolves
  std::uint64_t tuple_budget = 100'000'000;  // tuple visits per count
  std::uint32_t max_tuple_len = 4;

  /// Defaults, shrunk by SPECTRAFF_MAX_VERTICES when that variable is set.
  static Caps from_env();

  /// Returns a copy with `max_vertices` lowered to `v`; larger values are
  /// ignored since caps only shrink.
  Caps with_max_vertices(std::uint32_t v) const;

  void require_vertices(std::uint64_t n, const std::string& what) const;
  void require_field(std::uint64_t size, const std::string& what) const;
  void require_tuples(std::uint64_t visits, const std::string& what) const;
};

}  // namespace spectraff
