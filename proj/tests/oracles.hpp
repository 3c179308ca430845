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

// Slow, independent reference implementations. None of these share code
// with the library beyond the valuation oracle itself.

#include <cstddef>
#include <vector>

#include "mmsalloc/concentration.hpp"
#include "mmsalloc/rational.hpp"
#include "mmsalloc/valuation.hpp"

namespace oracle {

using mmsalloc::ItemSet;
using mmsalloc::Rational;
using mmsalloc::Valuation;

// max over all n^m item-to-bundle maps of the worst bundle value.
Rational naive_mms(const Valuation& v, std::size_t m, std::size_t n);

// max sum_{i=1..levels} i h_i s.t. sum h_i <= 1 - prA, sum 2^i h_i <= budget - prA,
// h >= 0, by enumerating every vertex (at most two nonzero coordinates).
Rational eh_lp(const Rational& prA, const Rational& budget, int levels = 10);

struct Distribution {
  std::vector<std::pair<Rational, Rational>> support;  // increasing value
  Rational expectation;
};

// Product over items of p or 1 - p for every one of the 2^m subsets,
// evaluated through Valuation::evaluate.
Distribution distribution(const Valuation& v, const std::vector<Rational>& probs);

// Every M with Pr[X <= M] >= 1/2 and Pr[X >= M] >= 1/2, among support values.
std::vector<Rational> medians(const Distribution& d);

// Talagrand distance by looping over tuples and coordinates (n <= 16).
int distance(unsigned x, const std::vector<std::vector<unsigned>>& families, unsigned n);

// C(s, k) p^k (1 - p)^(s - k) with exact rationals.
Rational binomial_pmf(unsigned s, unsigned k, const Rational& p);

}  // namespace oracle
