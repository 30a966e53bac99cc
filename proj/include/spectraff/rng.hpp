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
// Seeded generator and a deterministic index-partitioned parallel loop.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace spectraff {

inline constexpr std::uint64_t kDefaultSeed = 42;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream seed for trial `index` of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// mt19937_64 with portable bounded draws (the standard distributions are
/// implementation-defined, which would break byte-identical outputs).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// k distinct values from [0, universe), sorted (Floyd's algorithm).
  std::vector<std::uint32_t> sample(std::uint32_t universe, std::uint32_t k);

 private:
  std::mt19937_64 engine_;
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads (0 = hardware
/// concurrency). The first exception by index is rethrown.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace spectraff
