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
#include <vector>

#include "mmsalloc/item_set.hpp"
#include "mmsalloc/rational.hpp"
#include "mmsalloc/valuation.hpp"

namespace mmsalloc {

inline constexpr std::size_t kMaxMmsItems = 20;

struct MmsResult {
  Rational value;
  // Exactly n pairwise-disjoint bundles covering the universe; empty bundles
  // are allowed and listed last.
  std::vector<ItemSet> partition;
};

// Maximin share of v over m items split into n bundles, with a witnessing
// partition.
//
// Computed by the subset recursion
//   f(1, S) = v(S)
//   f(k, S) = max over B in S, lowest(S) in B, of min(v(B), f(k-1, S \ B))
// on the ranks of the 2^m subset values, so the inner loop never touches a
// rational. Among optimal partitions the bundles are fixed in order of their
// lowest item, each chosen as the optimal candidate that contains the earliest
// item on which candidates differ.
MmsResult exact_mms(const Valuation& v, std::size_t m, std::size_t n);

// scaled(v, 1 / MMS). Throws std::domain_error when the MMS is zero.
Valuation normalize_to_unit_mms(const Valuation& v, std::size_t m, std::size_t n);

}  // namespace mmsalloc
