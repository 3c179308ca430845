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
#include <bit>
#include <stdexcept>
#include <string>

#include "mmsalloc/harness.hpp"
#include "mmsalloc/mms.hpp"

namespace mmsalloc {

std::string_view to_string(ValuationClass cls) {
  switch (cls) {
    case ValuationClass::kAdditive: return "additive";
    case ValuationClass::kXos: return "xos";
    case ValuationClass::kCoverage: return "coverage";
    case ValuationClass::kTable: return "table";
  }
  return "?";
}

ValuationClass parse_valuation_class(std::string_view name) {
  for (ValuationClass cls : {ValuationClass::kAdditive, ValuationClass::kXos,
                             ValuationClass::kCoverage, ValuationClass::kTable}) {
    if (to_string(cls) == name) return cls;
  }
  throw std::invalid_argument("unknown valuation class '" + std::string(name) + "'");
}

void CorpusSpec::validate() const {
  if (sizes.empty()) throw std::invalid_argument("corpus: no (n, m) sizes");
  for (const auto& [n, m] : sizes) {
    if (n < 1) throw std::invalid_argument("corpus: n must be at least 1");
    if (m < 1 || m > kMaxMmsItems) {
      throw std::invalid_argument("corpus: m must be in [1, " + std::to_string(kMaxMmsItems) + "]");
    }
  }
  if (classes.empty()) throw std::invalid_argument("corpus: no valuation classes");
  if (count_per_cell < 1) throw std::invalid_argument("corpus: count per cell must be positive");
}

CorpusSpec CorpusSpec::pinned(std::uint64_t seed) {
  CorpusSpec spec;
  spec.seed = seed;
  for (std::size_t n : {2, 3, 4, 8}) {
    for (std::size_t m = 8; m <= 12; ++m) spec.sizes.emplace_back(n, m);
  }
  spec.classes = {ValuationClass::kAdditive, ValuationClass::kXos, ValuationClass::kCoverage,
                  ValuationClass::kTable};
  return spec;
}

namespace {

Rational milli(Rng& rng) { return make_rational(static_cast<long>(rng.uniform_below(1001)), 1000); }

std::vector<Rational> random_weights(std::size_t m, Rng& rng) {
  std::vector<Rational> out(m);
  for (Rational& w : out) w = milli(rng);
  return out;
}

Valuation random_table(std::size_t m, Rng& rng) {
  std::vector<std::vector<Rational>> clauses;
  for (int c = 0; c < 3; ++c) clauses.push_back(random_weights(m, rng));
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<Rational> values(count);
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    values[mask] = 0;
    for (const auto& clause : clauses) {
      Rational sum = clause[low];
      for (std::uint64_t rest = mask & (mask - 1); rest != 0; rest &= rest - 1) {
        sum += clause[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      values[mask] = std::max(values[mask], sum);
    }
  }
  // A cap keeps the table off the XOS shape; min(f, c) stays subadditive.
  const Rational cap = values[count - 1] * make_rational(500 + static_cast<long>(rng.uniform_below(501)), 1000);
  for (Rational& value : values) value = std::min(value, cap);
  if (cap > 0) {
    for (Rational& value : values) value /= cap;
  }
  return Valuation::table(std::move(values),
                          m <= kMaxSubadditiveCheckItems ? TableCheck::kValidate : TableCheck::kSkip);
}

}  // namespace

Valuation random_valuation(ValuationClass cls, std::size_t m, Rng& rng) {
  switch (cls) {
    case ValuationClass::kAdditive:
      return Valuation::additive(random_weights(m, rng));
    case ValuationClass::kXos: {
      std::vector<std::vector<Rational>> clauses;
      for (int c = 0; c < 3; ++c) clauses.push_back(random_weights(m, rng));
      return Valuation::xos(std::move(clauses));
    }
    case ValuationClass::kCoverage: {
      const std::size_t ground = 2 * m;
      std::vector<Rational> element_weights(ground);
      for (Rational& w : element_weights) w = make_rational(1 + static_cast<long>(rng.uniform_below(100)), 100);
      std::vector<std::vector<std::size_t>> covers(m);
      for (auto& cover : covers) {
        for (std::size_t g = 0; g < ground; ++g) {
          if (rng.uniform_below(10) < 3) cover.push_back(g);
        }
        if (cover.empty()) cover.push_back(rng.uniform_below(ground));
      }
      return Valuation::coverage(std::move(element_weights), std::move(covers));
    }
    case ValuationClass::kTable:
      return random_table(m, rng);
  }
  throw std::logic_error("random_valuation: unknown class");
}

Valuation random_subadditive_table(std::size_t m, Rng& rng) {
  if (m > kMaxSubadditiveCheckItems) {
    throw LimitExceeded("random_subadditive_table: at most " +
                        std::to_string(kMaxSubadditiveCheckItems) + " items");
  }
  const std::uint64_t count = std::uint64_t{1} << m;
  std::vector<long> base(count, 0);
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    base[mask] = static_cast<long>(rng.uniform_below(4 * m + 1));
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      base[mask] = std::max(base[mask], base[mask & ~(rest & (~rest + 1))]);
    }
  }
  // Closure: cheapest split into parts, subsets before supersets.
  std::vector<long> closed(base);
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    for (std::uint64_t part = (mask - 1) & mask; part != 0; part = (part - 1) & mask) {
      closed[mask] = std::min(closed[mask], closed[part] + closed[mask & ~part]);
    }
  }
  std::vector<Rational> values(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) values[mask] = closed[mask];
  return Valuation::table(std::move(values));
}

SampleSpec random_sample_spec(std::size_t m, Rng& rng) {
  SampleSpec spec;
  for (std::size_t e = 0; e < m; ++e) spec.probs.emplace_back(static_cast<long>(rng.uniform_below(9)), 8);
  for (Rational& p : spec.probs) p.canonicalize();
  return spec;
}

TalagrandInput random_talagrand_input(std::size_t max_n, std::size_t q, Rng& rng) {
  if (max_n < 1 || max_n > kMaxCubeDimension || q < 1) {
    throw std::invalid_argument("random_talagrand_input: need 1 <= n <= 12 and q >= 1");
  }
  TalagrandInput in;
  in.n = 1 + rng.uniform_below(max_n);
  for (std::size_t c = 0; c < in.n; ++c) {
    in.probs.push_back(make_rational(1 + static_cast<long>(rng.uniform_below(7)), 8));
  }
  const std::uint64_t points = std::uint64_t{1} << in.n;
  for (std::size_t i = 0; i < q; ++i) {
    PointFamily family;
    if (rng.uniform_below(2) == 0) {
      // A few scattered points, so that large distances occur.
      const std::uint64_t size = 1 + rng.uniform_below(3);
      for (std::uint64_t j = 0; j < size; ++j) {
        family.push_back(ItemSet::from_mask(rng.uniform_below(points), in.n));
      }
    } else {
      const std::uint64_t inverse_density = std::uint64_t{2} << rng.uniform_below(in.n);
      for (std::uint64_t mask = 0; mask < points; ++mask) {
        if (rng.uniform_below(inverse_density) == 0) family.push_back(ItemSet::from_mask(mask, in.n));
      }
      if (family.empty()) family.push_back(ItemSet::from_mask(rng.uniform_below(points), in.n));
    }
    in.families.push_back(std::move(family));
  }
  return in;
}

std::vector<CorpusInstance> generate_corpus(const CorpusSpec& spec) {
  spec.validate();
  std::vector<CorpusInstance> out;
  std::uint64_t stream = 0;
  for (const auto& [n, m] : spec.sizes) {
    for (ValuationClass cls : spec.classes) {
      for (std::size_t k = 0; k < spec.count_per_cell; ++k, ++stream) {
        Rng rng(stream_seed(spec.seed, stream));
        CorpusInstance entry;
        entry.id = std::string(to_string(cls)) + "-n" + std::to_string(n) + "-m" +
                   std::to_string(m) + "-" + std::to_string(k);
        entry.cls = cls;
        entry.instance.m = m;
        for (std::size_t i = 0; i < n; ++i) {
          entry.instance.agents.push_back(
              Agent{"a" + std::to_string(i), random_valuation(cls, m, rng)});
        }
        out.push_back(std::move(entry));
      }
    }
  }
  return out;
}

}  // namespace mmsalloc
