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

#include "mmsalloc/mms.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mmsalloc {
namespace {

using Mask = std::uint32_t;
using Rank = std::uint32_t;

// True when candidate `a` should win the tie against `b`: at the lowest item
// where they differ, `a` holds it.
bool preferred(Mask a, Mask b) {
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

class MmsSolver {
 public:
  MmsSolver(const std::vector<Rational>& table, std::size_t n) : n_(n) {
    sorted_ = table;
    std::sort(sorted_.begin(), sorted_.end());
    sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
    rank_.resize(table.size());
    for (std::size_t mask = 0; mask < table.size(); ++mask) {
      rank_[mask] = static_cast<Rank>(
          std::lower_bound(sorted_.begin(), sorted_.end(), table[mask]) - sorted_.begin());
    }
    full_ = static_cast<Mask>(table.size() - 1);
  }

  MmsResult solve(std::size_t m) {
    // levels_[k - 1][S] = f(k, S) for k < n; f(n, full) is computed directly.
    levels_.push_back(rank_);
    for (std::size_t k = 2; k < n_; ++k) {
      const auto& prev = levels_.back();
      std::vector<Rank> next(rank_.size());
      for (Mask s = 0; s <= full_; ++s) next[s] = best(s, prev);
      levels_.push_back(std::move(next));
    }
    const Rank top = n_ == 1 ? rank_[full_] : best(full_, levels_.back());

    MmsResult out;
    out.value = sorted_[top];
    Mask remaining = full_;
    for (std::size_t k = n_; k >= 1; --k) {
      Mask bundle = remaining;
      if (k > 1 && remaining != 0) bundle = choose(remaining, top, levels_[k - 2]);
      out.partition.push_back(ItemSet::from_mask(bundle, m));
      remaining &= ~bundle;
    }
    return out;
  }

 private:
  // f(k, S) given f(k-1, .).
  Rank best(Mask s, const std::vector<Rank>& prev) const {
    if (s == 0) return rank_[0];
    const Mask low = s & (~s + 1);
    const Mask rest = s & ~low;
    Rank result = 0;
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      const Mask bundle = sub | low;
      const Rank value = std::min(rank_[bundle], prev[s & ~bundle]);
      if (value > result) result = value;
      if (sub == 0) break;
    }
    return result;
  }

  // Preferred bundle containing lowest(s) whose split still reaches `target`.
  Mask choose(Mask s, Rank target, const std::vector<Rank>& prev) const {
    const Mask low = s & (~s + 1);
    const Mask rest = s & ~low;
    bool found = false;
    Mask chosen = 0;
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      const Mask bundle = sub | low;
      if (std::min(rank_[bundle], prev[s & ~bundle]) >= target &&
          (!found || preferred(bundle, chosen))) {
        chosen = bundle;
        found = true;
      }
      if (sub == 0) break;
    }
    if (!found) throw std::logic_error("exact_mms: reconstruction lost the optimum");
    return chosen;
  }

  std::size_t n_;
  Mask full_ = 0;
  std::vector<Rational> sorted_;
  std::vector<Rank> rank_;
  std::vector<std::vector<Rank>> levels_;
};

}  // namespace

MmsResult exact_mms(const Valuation& v, std::size_t m, std::size_t n) {
  if (n < 1) throw std::invalid_argument("exact_mms: n must be at least 1");
  if (m != v.arity()) {
    throw std::invalid_argument("exact_mms: m = " + std::to_string(m) + " but valuation has " +
                                std::to_string(v.arity()) + " items");
  }
  if (m > kMaxMmsItems) {
    throw LimitExceeded("exact_mms: at most " + std::to_string(kMaxMmsItems) + " items");
  }
  if (n > m) {
    // Some bundle is empty, so the min is v(empty) = 0 and every partition
    // ties; the preferred one puts everything in the first bundle.
    MmsResult out{Rational(0), {ItemSet::full(m)}};
    while (out.partition.size() < n) out.partition.emplace_back(m);
    return out;
  }
  MmsSolver solver(v.value_table(), n);
  return solver.solve(m);
}

Valuation normalize_to_unit_mms(const Valuation& v, std::size_t m, std::size_t n) {
  const Rational mms = exact_mms(v, m, n).value;
  if (mms == 0) throw std::domain_error("normalize_to_unit_mms: MMS value is zero");
  return Valuation::scaled(v, Rational(1 / mms));
}

}  // namespace mmsalloc
