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
#include <stdexcept>
#include <string>

#include "mmsalloc/concentration.hpp"

namespace mmsalloc {

namespace {

void check_families(std::size_t n, const std::vector<PointFamily>& families) {
  if (families.empty()) throw std::invalid_argument("talagrand: need at least one set A_i");
  for (std::size_t i = 0; i < families.size(); ++i) {
    if (families[i].empty()) {
      throw std::invalid_argument("talagrand: set A_" + std::to_string(i + 1) + " is empty");
    }
    for (const ItemSet& y : families[i]) {
      if (y.universe_size() != n) {
        throw std::invalid_argument("talagrand: point of A_" + std::to_string(i + 1) +
                                    " has the wrong dimension");
      }
    }
  }
}

std::vector<std::uint64_t> powers_of_three(std::size_t n) {
  std::vector<std::uint64_t> out(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) out[i] = out[i - 1] * 3;
  return out;
}

// Pr[x] for every x in {0,1}^n, indexed by mask.
std::vector<Rational> point_probabilities(const std::vector<Rational>& probs) {
  std::vector<Rational> out{Rational(1)};
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const std::size_t half = out.size();
    out.resize(2 * half);
    for (std::size_t mask = 0; mask < half; ++mask) {
      out[mask + half] = out[mask] * probs[i];
      out[mask] *= 1 - probs[i];
    }
  }
  return out;
}

Rational family_probability(const PointFamily& family, const std::vector<Rational>& point_prob) {
  std::vector<std::uint64_t> masks;
  for (const ItemSet& y : family) masks.push_back(y.mask());
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  Rational out = 0;
  for (std::uint64_t mask : masks) out += point_prob[mask];
  return out;
}

Rational inverse_power(std::size_t q, int k) {
  BigInt denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(k + 1));
  return Rational(BigInt(1), denom);
}

}  // namespace

int talagrand_distance(const ItemSet& x, const std::vector<PointFamily>& families) {
  const std::size_t n = x.universe_size();
  check_families(n, families);
  std::uint64_t tuples = 1;
  for (const PointFamily& family : families) {
    if (tuples > kMaxDistanceTuples / family.size()) {
      throw LimitExceeded("talagrand_distance: more than " + std::to_string(kMaxDistanceTuples) +
                          " tuples");
    }
    tuples *= family.size();
  }

  // agree[i][j]: coordinates where x matches the j-th point of A_i.
  const ItemSet all = ItemSet::full(n);
  std::vector<std::vector<ItemSet>> agree(families.size());
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (const ItemSet& y : families[i]) agree[i].push_back(all - (x - y) - (y - x));
  }

  int best = static_cast<int>(n);
  std::vector<std::size_t> index(families.size(), 0);
  for (;;) {
    ItemSet covered(n);
    for (std::size_t i = 0; i < families.size(); ++i) covered |= agree[i][index[i]];
    best = std::min(best, static_cast<int>(n - covered.size()));
    if (best == 0) return 0;
    std::size_t pos = 0;
    while (pos < index.size() && ++index[pos] == families[pos].size()) index[pos++] = 0;
    if (pos == index.size()) break;
  }
  return best;
}

std::vector<int> talagrand_distance_table(std::size_t n,
                                          const std::vector<PointFamily>& families) {
  if (n > kMaxCubeDimension) {
    throw LimitExceeded("talagrand_distance_table: at most " + std::to_string(kMaxCubeDimension) +
                        " coordinates");
  }
  if (families.empty()) throw std::invalid_argument("talagrand: need at least one set A_i");
  const std::vector<std::uint64_t> pow3 = powers_of_three(n);
  const std::uint64_t cells = pow3[n];

  // A tuple (y^1..y^q) only matters through its per-coordinate pattern: every
  // y^i_c = 0 (digit 0), every y^i_c = 1 (digit 1), or mixed (digit 2). Digit
  // patterns combine by a join in which 0 and 1 lie below 2, so the patterns
  // reachable by tuples are a join-convolution of the families, computed by
  // zeta transform, pointwise product and Moebius inversion.
  auto indicator = [&](const PointFamily& family) {
    std::vector<std::uint64_t> out(cells, 0);
    for (const ItemSet& y : family) {
      if (y.universe_size() != n) throw std::invalid_argument("talagrand: wrong point dimension");
      std::uint64_t index = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (y.contains(c)) index += pow3[c];
      }
      out[index] = 1;
    }
    return out;
  };
  auto for_each_triple = [&](std::size_t c, auto&& body) {
    const std::uint64_t stride = pow3[c];
    for (std::uint64_t base = 0; base < cells; base += 3 * stride) {
      for (std::uint64_t low = 0; low < stride; ++low) {
        const std::uint64_t i0 = base + low;
        body(i0, i0 + stride, i0 + 2 * stride);
      }
    }
  };
  auto zeta = [&](std::vector<std::uint64_t>& f) {
    for (std::size_t c = 0; c < n; ++c) {
      for_each_triple(c, [&](std::uint64_t a, std::uint64_t b, std::uint64_t m) { f[m] += f[a] + f[b]; });
    }
  };
  auto moebius = [&](std::vector<std::uint64_t>& f) {
    for (std::size_t c = 0; c < n; ++c) {
      for_each_triple(c, [&](std::uint64_t a, std::uint64_t b, std::uint64_t m) { f[m] -= f[a] + f[b]; });
    }
  };

  std::vector<std::uint64_t> reach = indicator(families.front());
  bool any_empty = families.front().empty();
  for (std::size_t i = 1; i < families.size(); ++i) {
    any_empty = any_empty || families[i].empty();
    std::vector<std::uint64_t> next = indicator(families[i]);
    zeta(reach);
    zeta(next);
    for (std::uint64_t r = 0; r < cells; ++r) reach[r] *= next[r];
    moebius(reach);
    // Back to 0/1 so counts stay bounded by 3^n * 2^n.
    for (std::uint64_t& value : reach) value = value != 0 ? 1 : 0;
  }

  const std::size_t points = std::size_t{1} << n;
  if (any_empty) return std::vector<int>(points, kUnreachableDistance);

  // Min-plus transform, coordinate by coordinate, from pattern digits to x
  // digits; a mixed pattern digit covers both values of x_c.
  std::vector<int> dist(cells, kUnreachableDistance);
  for (std::uint64_t r = 0; r < cells; ++r) {
    if (reach[r] != 0) dist[r] = 0;
  }
  for (std::size_t c = 0; c < n; ++c) {
    for_each_triple(c, [&](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
      const int zero = std::min({dist[a], dist[b] + 1, dist[m]});
      const int one = std::min({dist[a] + 1, dist[b], dist[m]});
      dist[a] = zero;
      dist[b] = one;
    });
  }

  std::vector<int> out(points);
  for (std::size_t mask = 0; mask < points; ++mask) {
    std::uint64_t index = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if ((mask >> c) & 1U) index += pow3[c];
    }
    out[mask] = std::min(dist[index], kUnreachableDistance);
  }
  return out;
}

TalagrandReport check_talagrand_corollary(const TalagrandInput& in) {
  if (in.n > kMaxCubeDimension) {
    throw LimitExceeded("talagrand corollary: at most " + std::to_string(kMaxCubeDimension) +
                        " coordinates");
  }
  if (in.probs.size() != in.n) {
    throw std::invalid_argument("talagrand corollary: need one probability per coordinate");
  }
  SampleSpec{in.probs}.validate();
  check_families(in.n, in.families);

  const std::size_t q = in.families.size();
  const std::vector<Rational> point_prob = point_probabilities(in.probs);
  const std::vector<int> h = talagrand_distance_table(in.n, in.families);

  Rational product = 1;
  for (const PointFamily& family : in.families) product *= family_probability(family, point_prob);

  TalagrandReport out;
  out.sum_lhs = 0;
  std::vector<Rational> at_distance(in.n + 1, Rational(0));
  for (std::size_t mask = 0; mask < point_prob.size(); ++mask) {
    if (point_prob[mask] == 0) continue;
    const int d = h[mask];
    out.sum_lhs += pow(Rational(static_cast<unsigned long>(q)), static_cast<unsigned long>(d)) *
                   point_prob[mask];
    at_distance[static_cast<std::size_t>(d)] += point_prob[mask];
  }
  if (product > 0) out.sum_rhs = 1 / product;
  out.sum_holds = !out.sum_rhs || out.sum_lhs <= *out.sum_rhs;

  out.tails_hold = true;
  Rational above = 1;  // Pr[h > k]
  for (int k = 0; k <= static_cast<int>(in.n); ++k) {
    above -= at_distance[static_cast<std::size_t>(k)];
    TailRow row;
    row.k = k;
    row.probability = above;
    if (product > 0) row.bound = inverse_power(q, k) / product;
    row.holds = !row.bound || row.probability <= *row.bound;
    out.tails_hold = out.tails_hold && row.holds;
    out.tails.push_back(std::move(row));
  }
  return out;
}

Rational schechtman_bound(int k, const std::vector<Rational>& prob_at_most) {
  if (k < 0) throw std::invalid_argument("schechtman bound: k must be non-negative");
  if (prob_at_most.empty()) throw std::invalid_argument("schechtman bound: need q >= 1");
  Rational product = 1;
  for (const Rational& p : prob_at_most) {
    if (p <= 0 || p > 1) throw std::invalid_argument("schechtman bound: probabilities must be in (0, 1]");
    product *= p;
  }
  return inverse_power(prob_at_most.size(), k) / product;
}

SchechtmanReport check_schechtman_tail(const Valuation& f, const SampleSpec& measure,
                                       const std::vector<Rational>& c, int k, const Rational& b) {
  const std::size_t n = f.arity();
  if (n > kMaxCubeDimension) {
    throw LimitExceeded("schechtman tail: at most " + std::to_string(kMaxCubeDimension) + " items");
  }
  if (measure.size() != n) throw std::invalid_argument("schechtman tail: measure has the wrong size");
  measure.validate();
  if (c.empty()) throw std::invalid_argument("schechtman tail: need at least one c_i");
  if (k < 0) throw std::invalid_argument("schechtman tail: k must be non-negative");
  for (const Rational& ci : c) {
    if (ci <= 0) throw std::invalid_argument("schechtman tail: every c_i must be positive");
  }
  const ClassFlags flags = check_class(f, n);
  if (!flags.monotone || !flags.subadditive) {
    throw std::invalid_argument("schechtman tail: f must be monotone and subadditive");
  }
  const std::vector<Rational> table = f.value_table();
  if (table[0] != 0) throw std::invalid_argument("schechtman tail: f(empty) must be 0");
  for (std::size_t e = 0; e < n; ++e) {
    if (table[std::size_t{1} << e] > b) {
      throw std::invalid_argument("schechtman tail: item " + std::to_string(e) +
                                  " exceeds the Lipschitz bound b");
    }
  }

  const std::vector<Rational> point_prob = point_probabilities(measure.probs);
  SchechtmanReport out;
  out.level = k * b;
  for (const Rational& ci : c) out.level += ci;

  std::vector<PointFamily> families(c.size());
  out.prob_at_most.assign(c.size(), Rational(0));
  out.tail_probability = 0;
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (table[mask] <= c[i]) {
        families[i].push_back(ItemSet::from_mask(mask, n));
        out.prob_at_most[i] += point_prob[mask];
      }
    }
    if (table[mask] > out.level) out.tail_probability += point_prob[mask];
  }

  const bool all_positive = std::all_of(out.prob_at_most.begin(), out.prob_at_most.end(),
                                        [](const Rational& p) { return p > 0; });
  if (all_positive) out.bound = schechtman_bound(k, out.prob_at_most);
  out.holds = !out.bound || out.tail_probability <= *out.bound;

  const std::vector<int> h = talagrand_distance_table(n, families);
  out.covering_holds = true;
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    if (table[mask] > out.level && h[mask] <= k) out.covering_holds = false;
  }
  return out;
}

}  // namespace mmsalloc
