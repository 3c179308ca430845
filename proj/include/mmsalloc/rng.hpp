// Copyright 2026 The mmsalloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "mmsalloc/rational.hpp"

namespace mmsalloc {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of the independent stream for trial `index` under `master_seed`.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

// Deterministic random source. All draws are defined in terms of the raw
// mt19937_64 output, so a seed reproduces the same sequence everywhere.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Exact when p's denominator fits in 64 bits.
  bool bernoulli(const Rational& p);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = uniform_below(i);
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mmsalloc
