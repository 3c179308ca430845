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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmsalloc/binomial.hpp"
#include "mmsalloc/concentration.hpp"

namespace mmsalloc {

SampleSpec SampleSpec::uniform(std::size_t m, const Rational& p) {
  SampleSpec spec{std::vector<Rational>(m, p)};
  spec.validate();
  return spec;
}

bool SampleSpec::is_uniform() const {
  return std::adjacent_find(probs.begin(), probs.end(), std::not_equal_to<>()) == probs.end();
}

void SampleSpec::validate() const {
  for (std::size_t e = 0; e < probs.size(); ++e) {
    if (probs[e] < 0 || probs[e] > 1) {
      throw std::invalid_argument("sample spec: probability of item " + std::to_string(e) +
                                  " is outside [0, 1]");
    }
  }
}

ItemSet sample_subset(const SampleSpec& spec, Rng& rng) {
  ItemSet out(spec.size());
  for (std::size_t e = 0; e < spec.size(); ++e) {
    if (rng.bernoulli(spec.probs[e])) out.insert(e);
  }
  return out;
}

Rational minimal_median(const std::vector<std::pair<Rational, Rational>>& support) {
  // The first value whose CDF reaches 1/2 has upper tail 1 - F(prev) > 1/2.
  Rational cdf = 0;
  for (const auto& [value, prob] : support) {
    cdf += prob;
    if (2 * cdf >= 1) return value;
  }
  throw std::invalid_argument("minimal_median: probabilities sum below 1/2");
}

namespace {

void check_spec(const Valuation& v, const SampleSpec& spec) {
  if (spec.size() != v.arity()) {
    throw std::invalid_argument("sample spec has " + std::to_string(spec.size()) +
                                " items, valuation has " + std::to_string(v.arity()));
  }
  spec.validate();
}

bool symmetric_route(const Valuation& v, const SampleSpec& spec) {
  return v.size_symmetric() && spec.is_uniform();
}

std::vector<Rational> size_profile(const Valuation& v) {
  std::vector<Rational> out(v.arity() + 1);
  for (std::size_t k = 0; k <= v.arity(); ++k) out[k] = v.value_of_size(k);
  return out;
}

DistributionSummary symmetric_distribution(const Valuation& v, const Rational& p) {
  const std::size_t s = v.arity();
  const std::vector<Rational> values = size_profile(v);
  const bool nondecreasing = std::is_sorted(values.begin(), values.end());
  if (!nondecreasing && s > kMaxStoredSupportItems) {
    throw LimitExceeded("exact_value_distribution: non-monotone size profile over " +
                        std::to_string(s) + " items");
  }
  BigInt lcm_den = 1;
  for (const Rational& value : values) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), value.get_den_mpz_t());
  }

  const BinomialWeights weights(s, p);
  const BigInt& total = weights.denominator();
  BigInt weighted_sum = 0;
  BigInt cdf = 0;
  std::optional<Rational> median;
  std::map<Rational, BigInt> by_value;
  const bool store = s <= kMaxStoredSupportItems;

  weights.for_each([&](std::size_t k, const BigInt& numerator) {
    if (numerator == 0) return true;
    const BigInt scaled_value = values[k].get_num() * (lcm_den / values[k].get_den());
    weighted_sum += scaled_value * numerator;
    if (nondecreasing && !median) {
      cdf += numerator;
      if (2 * cdf >= total) median = values[k];
    }
    if (store) by_value[values[k]] += numerator;
    return true;
  });

  DistributionSummary out;
  out.expectation = Rational(weighted_sum, lcm_den * total);
  out.expectation.canonicalize();
  out.max_item = s >= 1 ? values[1] : Rational(0);
  for (const auto& [value, numerator] : by_value) {
    Rational prob(numerator, total);
    prob.canonicalize();
    out.support.emplace_back(value, prob);
  }
  out.median = median ? *median : minimal_median(out.support);
  return out;
}

void enumerate(const std::vector<Rational>& table, const std::vector<Rational>& probs,
               std::size_t item, std::uint64_t mask, const Rational& prob,
               std::map<Rational, Rational>& by_value) {
  if (prob == 0) return;
  if (item == probs.size()) {
    by_value[table[mask]] += prob;
    return;
  }
  enumerate(table, probs, item + 1, mask, Rational(prob * (1 - probs[item])), by_value);
  enumerate(table, probs, item + 1, mask | (std::uint64_t{1} << item),
            Rational(prob * probs[item]), by_value);
}

DistributionSummary enumerated_distribution(const Valuation& v, const SampleSpec& spec) {
  const std::vector<Rational> table = v.value_table();
  std::map<Rational, Rational> by_value;
  enumerate(table, spec.probs, 0, 0, Rational(1), by_value);

  DistributionSummary out;
  out.expectation = 0;
  for (const auto& [value, prob] : by_value) {
    out.expectation += value * prob;
    out.support.emplace_back(value, prob);
  }
  out.median = minimal_median(out.support);
  out.max_item = 0;
  for (std::size_t e = 0; e < v.arity(); ++e) {
    out.max_item = std::max(out.max_item, table[std::uint64_t{1} << e]);
  }
  return out;
}

}  // namespace

DistributionSummary exact_value_distribution(const Valuation& v, const SampleSpec& spec) {
  check_spec(v, spec);
  if (symmetric_route(v, spec)) {
    return symmetric_distribution(v, spec.probs.empty() ? Rational(0) : spec.probs.front());
  }
  if (v.arity() > kMaxEnumeratedItems) {
    throw LimitExceeded("exact_value_distribution: at most " +
                        std::to_string(kMaxEnumeratedItems) +
                        " items unless the valuation is size-symmetric with uniform probabilities");
  }
  return enumerated_distribution(v, spec);
}

LemmaReport check_concentration_lemma(const Valuation& v, int t, const SampleSpec& spec,
                                      std::size_t trials, std::uint64_t seed, EstimateMode mode) {
  check_spec(v, spec);
  if (t < 1) throw std::invalid_argument("concentration lemma: t must be positive");
  const Rational rate(1, t);
  for (std::size_t e = 0; e < spec.size(); ++e) {
    if (spec.probs[e] < rate) {
      throw std::invalid_argument("concentration lemma: item " + std::to_string(e) +
                                  " sampled with probability below 1/t");
    }
  }
  LemmaReport out;
  const Rational whole = v.evaluate(ItemSet::full(v.arity()));
  out.level = make_rational(8, 23L * t) * whole;
  for (std::size_t e = 0; e < v.arity(); ++e) {
    if (v.item_value(e) > out.level) {
      throw std::invalid_argument("concentration lemma: item " + std::to_string(e) +
                                  " is worth more than 8/(23t) v(S)");
    }
  }

  const bool exact_possible = symmetric_route(v, spec) || v.arity() <= kMaxEnumeratedItems;
  if (mode == EstimateMode::kExact && !exact_possible) {
    throw LimitExceeded("concentration lemma: exact evaluation not possible for this input");
  }
  out.exact = mode == EstimateMode::kExact || (mode == EstimateMode::kAuto && exact_possible);

  if (out.exact) {
    Rational tail = 0;
    if (symmetric_route(v, spec)) {
      const std::vector<Rational> values = size_profile(v);
      const BinomialWeights weights(v.arity(), spec.probs.empty() ? Rational(0) : spec.probs.front());
      BigInt numerator_sum = 0;
      weights.for_each([&](std::size_t k, const BigInt& numerator) {
        if (values[k] >= out.level) numerator_sum += numerator;
        return true;
      });
      tail = Rational(numerator_sum, weights.denominator());
      tail.canonicalize();
    } else {
      for (const auto& [value, prob] : enumerated_distribution(v, spec).support) {
        if (value >= out.level) tail += prob;
      }
    }
    out.exact_probability = tail;
    out.probability = tail.get_d();
    out.holds = 2 * tail >= 1;
    return out;
  }

  if (trials < 1) throw std::invalid_argument("concentration lemma: trials must be positive");
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    if (v.evaluate(sample_subset(spec, rng)) >= out.level) ++hits;
  }
  out.trials = trials;
  out.probability = static_cast<double>(hits) / static_cast<double>(trials);
  out.floor = 0.5 - 3.0 * std::sqrt(0.25 / static_cast<double>(trials));
  out.holds = out.probability >= out.floor;
  return out;
}

LowerBoundReport check_lower_bound(const Valuation& v, int t, std::uint64_t seed,
                                   std::size_t demo_trials) {
  if (t < 1) throw std::invalid_argument("lower bound: t must be positive");
  const std::size_t m = v.arity();
  LowerBoundReport out;
  const Rational whole = v.evaluate(ItemSet::full(m));
  out.expectation = exact_value_distribution(v, SampleSpec::uniform(m, Rational(1, t))).expectation;
  out.bound = whole / t;
  out.holds = out.expectation >= out.bound;

  // A uniform part of a uniformly random t-partition is distributed like S'.
  Rng rng(seed);
  double total = 0.0;
  for (std::size_t trial = 0; trial < demo_trials; ++trial) {
    std::vector<ItemSet> parts(static_cast<std::size_t>(t), ItemSet(m));
    for (std::size_t e = 0; e < m; ++e) parts[rng.uniform_below(static_cast<std::uint64_t>(t))].insert(e);
    Rational sum = 0;
    std::vector<Rational> values;
    for (const ItemSet& part : parts) {
      values.push_back(v.evaluate(part));
      sum += values.back();
    }
    if (sum < whole) ++out.demo_subadditivity_failures;
    total += values[rng.uniform_below(static_cast<std::uint64_t>(t))].get_d();
  }
  out.demo_trials = demo_trials;
  out.demo_mean = demo_trials == 0 ? 0.0 : total / static_cast<double>(demo_trials);
  return out;
}

RateReport lower_bound_at_rate(const Valuation& v, const Rational& p) {
  const std::size_t m = v.arity();
  RateReport out;
  out.p = p;
  out.expectation = exact_value_distribution(v, SampleSpec::uniform(m, p)).expectation;
  out.scaled_value = p * v.evaluate(ItemSet::full(m));
  out.meets_scaled_value = out.expectation >= out.scaled_value;
  return out;
}

TightnessResult tightness_expectation(std::int64_t plateau, std::int64_t ground_size) {
  const Valuation v = make_staircase(plateau, ground_size);
  TightnessResult out;
  if (ground_size <= kTightnessExactLimit) {
    const DistributionSummary dist =
        exact_value_distribution(v, SampleSpec::uniform(v.arity(), Rational(1, 2)));
    out.exact_expectation = dist.expectation;
    out.expectation = dist.expectation.get_d();
    out.median = dist.median.get_num().get_si();
    return out;
  }
  out.expectation = tightness_expectation_log_space(plateau, ground_size);
  // Pr[|S'| <= s/2] >= 1/2 by symmetry and Pr[|S'| < M] < 1/2 since M <= s/2.
  out.median = plateau;
  return out;
}

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  long double sum = 0.0L;
  long double compensation = 0.0L;
  void add(long double term) {
    const long double next = sum + term;
    if (fabsl(sum) >= fabsl(term)) {
      compensation += (sum - next) + term;
    } else {
      compensation += (term - next) + sum;
    }
    sum = next;
  }
  long double value() const { return sum + compensation; }
};

}  // namespace

double tightness_expectation_log_space(std::int64_t plateau, std::int64_t ground_size) {
  const Valuation v = make_staircase(plateau, ground_size);
  const std::int64_t s = ground_size;
  const std::int64_t mode = s / 2;
  // log C(s, k) - log C(s, mode), accumulated outward from the mode. Dividing by
  // the summed weights at the end cancels the normalising constant, so no
  // lgamma of a large argument enters the result.
  std::vector<long double> log_weight(static_cast<std::size_t>(s + 1), 0.0L);
  for (std::int64_t k = mode; k < s; ++k) {
    log_weight[k + 1] = log_weight[k] + logl(static_cast<long double>(s - k)) -
                        logl(static_cast<long double>(k + 1));
  }
  for (std::int64_t k = mode; k > 0; --k) {
    log_weight[k - 1] = log_weight[k] + logl(static_cast<long double>(k)) -
                        logl(static_cast<long double>(s - k + 1));
  }
  CompensatedSum mass;
  CompensatedSum weighted;
  for (std::int64_t k = 0; k <= s; ++k) {
    const long double w = expl(log_weight[k]);
    mass.add(w);
    weighted.add(static_cast<long double>(v.value_of_size(static_cast<std::size_t>(k)).get_d()) * w);
  }
  return static_cast<double>(weighted.value() / mass.value());
}

DiscussionResult discussion_example(std::size_t ground_size) {
  if (ground_size < 2) throw std::invalid_argument("discussion example: requires s >= 2");
  DiscussionResult out;
  out.expectation = Rational(839, 500);
  out.probability = Rational(out.expectation / static_cast<unsigned long>(ground_size));
  const BinomialWeights weights(ground_size, out.probability);
  BigInt cdf = 0;
  weights.for_each([&](std::size_t k, const BigInt& numerator) {
    cdf += numerator;
    if (2 * cdf >= weights.denominator()) {
      out.median = static_cast<std::int64_t>(k);
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace mmsalloc
