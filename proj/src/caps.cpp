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

#include "spectraff/caps.hpp"

#include <cstdlib>
#include <string>

namespace spectraff {

Caps Caps::from_env() {
  Caps caps;
  if (const char* raw = std::getenv("SPECTRAFF_MAX_VERTICES")) {
    try {
      const auto v = std::stoull(raw);
      if (v > 0 && v < caps.max_vertices) {
        caps.max_vertices = static_cast<std::uint32_t>(v);
      }
    } catch (const std::exception&) {
      // unparsable override: keep defaults
    }
  }
  return caps;
}

Caps Caps::with_max_vertices(std::uint32_t v) const {
  Caps out = *this;
  if (v < out.max_vertices) out.max_vertices = v;
  return out;
}

void Caps::require_vertices(std::uint64_t n, const std::string& what) const {
  if (n > max_vertices) {
    throw CapExceeded(what + ": " + std::to_string(n) +
                      " vertices exceeds cap " + std::to_string(max_vertices));
  }
}

void Caps::require_field(std::uint64_t size, const std::string& what) const {
  if (size > max_field_size) {
    throw CapExceeded(what + ": " + std::to_string(size) +
                      " elements exceeds cap " +
                      std::to_string(max_field_size));
  }
}

void Caps::require_tuples(std::uint64_t visits, const std::string& what) const {
  if (visits > tuple_budget) {
    throw CapExceeded(what + ": " + std::to_string(visits) +
                      " tuple visits exceeds budget " +
                      std::to_string(tuple_budget));
  }
}

}  // namespace spectraff
