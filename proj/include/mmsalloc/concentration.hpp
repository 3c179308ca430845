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
#include <optional>
#include <utility>
#include <vector>

#include "mmsalloc/item_set.hpp"
#include "mmsalloc/rational.hpp"
#include "mmsalloc/rng.hpp"
#include "mmsalloc/valuation.hpp"

namespace mmsalloc {

// Independent inclusion probability per item.
struct SampleSpec {
  std::vector<Rational> probs;

  static SampleSpec uniform(std::size_t m, const Rational& p);
  std::size_t size() const { return probs.size(); }
  bool is_uniform() const;
  // Throws std::invalid_argument unless every probability is in [0, 1].
  void validate() const;
};

ItemSet sample_subset(const SampleSpec& spec, Rng& rng);

// Distribution of v(S') where S' includes each item independently.
struct DistributionSummary {
  Rational expectation;
  // Smallest M with Pr[v <= M] >= 1/2 and Pr[v >= M] >= 1/2.
  Rational median;
  // Largest single-item value.
  Rational max_item;
  // (value, probability) in increasing value order. Left empty for
  // size-symmetric inputs with more than kMaxStoredSupportItems items.
  std::vector<std::pair<Rational, Rational>> support;
};

inline constexpr std::size_t kMaxEnumeratedItems = 20;
inline constexpr std::size_t kMaxStoredSupportItems = 2000;

// Exact, by 2^m enumeration (m <= 20) or, when v depends only on |S| and the
// probabilities are uniform, by binomial weights for any m.
DistributionSummary exact_value_distribution(const Valuation& v, const SampleSpec& spec);

// Minimal median of a finite distribution given in increasing value order.
Rational minimal_median(const std::vector<std::pair<Rational, Rational>>& support);

// ---------------------------------------------------------------------------
// Product-space distance to q sets of points.

// Points of {0,1}^n, written as subsets of {0..n-1}.
using PointFamily = std::vector<ItemSet>;

inline constexpr std::uint64_t kMaxDistanceTuples = 1'000'000;
inline constexpr std::size_t kMaxCubeDimension = 12;

// min over (y^1..y^q) in A_1 x ... x A_q of |{i : x_i not in {y^1_i..y^q_i}}|,
// by enumerating tuples. Throws LimitExceeded beyond kMaxDistanceTuples.
int talagrand_distance(const ItemSet& x, const std::vector<PointFamily>& families);

// The same distance for every x in {0,1}^n at once, indexed by mask; no
// tuple enumeration. Entries are kUnreachableDistance when a family is empty.
inline constexpr int kUnreachableDistance = 1 << 20;
std::vector<int> talagrand_distance_table(std::size_t n, const std::vector<PointFamily>& families);

struct TalagrandInput {
  std::size_t n = 0;
  std::vector<Rational> probs;  // Pr[x_i = 1]
  std::vector<PointFamily> families;
};

struct TailRow {
  int k = 0;
  Rational probability;          // Pr[h > k]
  std::optional<Rational> bound;  // q^(-k-1) / prod Pr[A_i]; empty when infinite
  bool holds = false;
};

struct TalagrandReport {
  Rational sum_lhs;                 // sum_x q^h(x) Pr[x]
  std::optional<Rational> sum_rhs;  // 1 / prod Pr[A_i]
  std::vector<TailRow> tails;       // k = 0..n
  bool sum_holds = false;
  bool tails_hold = false;
  bool holds() const { return sum_holds && tails_hold; }
};

TalagrandReport check_talagrand_corollary(const TalagrandInput& in);

// q^(-k-1) / prod prob_at_most[i], with q = prob_at_most.size().
Rational schechtman_bound(int k, const std::vector<Rational>& prob_at_most);

struct SchechtmanReport {
  Rational level;             // sum c_i + k b
  Rational tail_probability;  // Pr[f > level]
  std::vector<Rational> prob_at_most;
  std::optional<Rational> bound;
  bool holds = false;
  // {f > level} is contained in {h(x; A_1..A_q) > k} for A_i = {f <= c_i}.
  bool covering_holds = false;
};

// Exhaustive over {0,1}^n, n = f.arity() <= 12. f must be monotone and
// subadditive with every single-item value at most b, and every c_i > 0.
SchechtmanReport check_schechtman_tail(const Valuation& f, const SampleSpec& measure,
                                       const std::vector<Rational>& c, int k, const Rational& b);

// ---------------------------------------------------------------------------
// Expected-distance maximization.

struct EhBound {
  Rational maximum;
  std::vector<std::pair<int, Rational>> witness;  // (level i, h_i), h_i > 0
};

// max sum_{i>=1} i h_i  s.t.  sum_{i>=1} h_i <= 1 - prA,
//                             sum_{i>=1} 2^i h_i <= budget - prA.
EhBound max_EH_bound(const Rational& prA, const Rational& budget);

// ---------------------------------------------------------------------------
// Expectation versus median.

struct UpperBoundReport {
  Rational expectation;
  Rational median;
  Rational max_item;
  Rational bound;  // (3/2) M + (11/8) b
  bool holds = false;
};

// E[v(S')] <= (3/2) M + (11/8) b, exactly.
UpperBoundReport check_upper_bound_prop(const Valuation& v, const SampleSpec& spec);

struct LowerBoundReport {
  Rational expectation;  // E[v(S')] at rate 1/t
  Rational bound;        // v(S) / t
  bool holds = false;
  // Random t-partitions: the value of a uniformly chosen part, averaged, and
  // the number of partitions whose part values summed below v(S).
  std::size_t demo_trials = 0;
  double demo_mean = 0.0;
  std::size_t demo_subadditivity_failures = 0;
};

LowerBoundReport check_lower_bound(const Valuation& v, int t, std::uint64_t seed = 0,
                                   std::size_t demo_trials = 1000);

struct RateReport {
  Rational p;
  Rational expectation;  // E[v(S')] at rate p
  Rational scaled_value;  // p v(S)
  bool meets_scaled_value = false;
};

// The rate-p analogue of the lower bound, which can fail for non-integer 1/p.
RateReport lower_bound_at_rate(const Valuation& v, const Rational& p);

struct TightnessResult {
  double expectation = 0.0;
  std::optional<Rational> exact_expectation;  // for s <= kTightnessExactLimit
  std::int64_t median = 0;
};

inline constexpr std::int64_t kTightnessExactLimit = 2000;

// E[v(S')] for the staircase valuation at p = 1/2.
TightnessResult tightness_expectation(std::int64_t plateau, std::int64_t ground_size);
// Log-space binomial sum with compensated accumulation.
double tightness_expectation_log_space(std::int64_t plateau, std::int64_t ground_size);

struct DiscussionResult {
  Rational probability;  // 1.678 / s
  Rational expectation;  // 1.678
  std::int64_t median = 0;
};

// Unit additive valuation on s items, each sampled with probability 1.678/s.
DiscussionResult discussion_example(std::size_t ground_size);

enum class EstimateMode { kAuto, kExact, kMonteCarlo };

struct LemmaReport {
  Rational level;  // 8/(23t) v(S)
  bool exact = false;
  std::optional<Rational> exact_probability;
  double probability = 0.0;  // Pr[v(S') >= level], exact or empirical
  std::size_t trials = 0;
  double floor = 0.5;  // 1/2, less three standard errors for Monte Carlo
  bool holds = false;
};

// Requires every p_e >= 1/t and every v({e}) <= 8/(23t) v(S).
LemmaReport check_concentration_lemma(const Valuation& v, int t, const SampleSpec& spec,
                                      std::size_t trials, std::uint64_t seed = 0,
                                      EstimateMode mode = EstimateMode::kAuto);

}  // namespace mmsalloc
