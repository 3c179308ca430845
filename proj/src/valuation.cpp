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

#include "mmsalloc/valuation.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <variant>

namespace mmsalloc {

struct AdditivePayload {
  std::vector<Rational> weights;
};
struct XosPayload {
  std::vector<std::vector<Rational>> clauses;
};
struct CoveragePayload {
  std::vector<Rational> element_weights;
  std::vector<std::vector<std::size_t>> covers;
};
struct TablePayload {
  std::vector<Rational> values;
  std::size_t items;
};
struct StaircasePayload {
  std::int64_t plateau;
  std::int64_t ground_size;
};
struct NearTwoPayload {
  std::size_t ground_size;
};
struct ScaledPayload {
  Valuation inner;
  Rational factor;
};
struct RestrictedPayload {
  Valuation inner;
  std::vector<std::size_t> kept;
};

struct Valuation::Impl {
  std::variant<AdditivePayload, XosPayload, CoveragePayload, TablePayload, StaircasePayload,
               NearTwoPayload, ScaledPayload, RestrictedPayload>
      payload;
  std::size_t arity;
};

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_non_negative(const std::vector<Rational>& values, const char* what) {
  for (const Rational& w : values) {
    if (w < 0) throw std::invalid_argument(std::string(what) + ": negative weight " + to_string(w));
  }
}

Rational staircase_value(std::int64_t plateau, std::int64_t ground, std::int64_t size) {
  const std::int64_t half = ground / 2;
  if (size <= plateau) return Rational(size);
  if (size <= half) return Rational(plateau);
  if (size <= half + plateau) return Rational(plateau + size - half);
  return Rational(2 * plateau);
}

std::size_t table_items(std::size_t table_size) {
  if (table_size == 0 || !std::has_single_bit(table_size)) {
    throw std::invalid_argument("table valuation: size must be a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(table_size));
}

}  // namespace

std::string_view to_string(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kAdditive: return "additive";
    case ValuationKind::kXos: return "xos";
    case ValuationKind::kCoverage: return "coverage";
    case ValuationKind::kTable: return "table";
    case ValuationKind::kStaircase: return "staircase";
    case ValuationKind::kNearTwo: return "near_two";
    case ValuationKind::kScaled: return "scaled";
    case ValuationKind::kRestricted: return "restricted";
  }
  return "unknown";
}

Valuation Valuation::additive(std::vector<Rational> weights) {
  require_non_negative(weights, "additive valuation");
  const std::size_t m = weights.size();
  return Valuation(std::make_shared<const Impl>(Impl{AdditivePayload{std::move(weights)}, m}));
}

Valuation Valuation::xos(std::vector<std::vector<Rational>> clauses) {
  if (clauses.empty()) throw std::invalid_argument("xos valuation: needs at least one clause");
  const std::size_t m = clauses.front().size();
  for (const auto& clause : clauses) {
    if (clause.size() != m) throw std::invalid_argument("xos valuation: clauses differ in length");
    require_non_negative(clause, "xos valuation");
  }
  return Valuation(std::make_shared<const Impl>(Impl{XosPayload{std::move(clauses)}, m}));
}

Valuation Valuation::coverage(std::vector<Rational> element_weights,
                              std::vector<std::vector<std::size_t>> covers) {
  require_non_negative(element_weights, "coverage valuation");
  for (const auto& cover : covers) {
    for (std::size_t g : cover) {
      if (g >= element_weights.size()) {
        throw std::invalid_argument("coverage valuation: ground element " + std::to_string(g) +
                                    " out of range");
      }
    }
  }
  const std::size_t m = covers.size();
  return Valuation(std::make_shared<const Impl>(
      Impl{CoveragePayload{std::move(element_weights), std::move(covers)}, m}));
}

Valuation Valuation::table(std::vector<Rational> values, TableCheck check) {
  const std::size_t m = table_items(values.size());
  if (m > kMaxTableItems) {
    throw LimitExceeded("table valuation: at most " + std::to_string(kMaxTableItems) + " items");
  }
  if (values[0] != 0) throw std::invalid_argument("table valuation: v(empty) must be 0");
  require_non_negative(values, "table valuation");
  if (check == TableCheck::kValidate) {
    if (m > kMaxSubadditiveCheckItems) {
      throw LimitExceeded("table validation is limited to " +
                          std::to_string(kMaxSubadditiveCheckItems) +
                          " items; construct with TableCheck::kSkip");
    }
    if (!is_monotone(values)) throw std::invalid_argument("table valuation: not monotone");
    if (!is_subadditive(values)) throw std::invalid_argument("table valuation: not subadditive");
  }
  return Valuation(std::make_shared<const Impl>(Impl{TablePayload{std::move(values), m}, m}));
}

Valuation Valuation::staircase(std::int64_t plateau, std::int64_t ground_size) {
  if (plateau <= 0) throw std::invalid_argument("staircase valuation: M must be positive");
  if (ground_size % 2 != 0) throw std::invalid_argument("staircase valuation: s must be even");
  if (ground_size <= 2 * plateau) throw std::invalid_argument("staircase valuation: requires s > 2M");
  return Valuation(std::make_shared<const Impl>(
      Impl{StaircasePayload{plateau, ground_size}, static_cast<std::size_t>(ground_size)}));
}

Valuation Valuation::near_two(std::size_t ground_size) {
  if (ground_size < 2) throw std::invalid_argument("near-two valuation: requires s >= 2");
  return Valuation(std::make_shared<const Impl>(Impl{NearTwoPayload{ground_size}, ground_size}));
}

Valuation Valuation::scaled(Valuation inner, Rational factor) {
  if (factor <= 0) throw std::invalid_argument("scaled valuation: factor must be positive");
  const std::size_t m = inner.arity();
  return Valuation(
      std::make_shared<const Impl>(Impl{ScaledPayload{std::move(inner), std::move(factor)}, m}));
}

Valuation Valuation::restricted(Valuation inner, std::vector<std::size_t> kept_items) {
  ItemSet seen(inner.arity());
  for (std::size_t e : kept_items) {
    if (e >= inner.arity()) throw std::invalid_argument("restricted valuation: item out of range");
    if (seen.contains(e)) throw std::invalid_argument("restricted valuation: duplicate item");
    seen.insert(e);
  }
  const std::size_t m = kept_items.size();
  return Valuation(std::make_shared<const Impl>(
      Impl{RestrictedPayload{std::move(inner), std::move(kept_items)}, m}));
}

ValuationKind Valuation::kind() const {
  return std::visit(Overloaded{
                        [](const AdditivePayload&) { return ValuationKind::kAdditive; },
                        [](const XosPayload&) { return ValuationKind::kXos; },
                        [](const CoveragePayload&) { return ValuationKind::kCoverage; },
                        [](const TablePayload&) { return ValuationKind::kTable; },
                        [](const StaircasePayload&) { return ValuationKind::kStaircase; },
                        [](const NearTwoPayload&) { return ValuationKind::kNearTwo; },
                        [](const ScaledPayload&) { return ValuationKind::kScaled; },
                        [](const RestrictedPayload&) { return ValuationKind::kRestricted; },
                    },
                    impl_->payload);
}

std::size_t Valuation::arity() const { return impl_->arity; }

Rational Valuation::evaluate(const ItemSet& items) const {
  if (items.universe_size() != arity()) {
    throw std::invalid_argument("evaluate: item set over " + std::to_string(items.universe_size()) +
                                " items, valuation over " + std::to_string(arity()));
  }
  return std::visit(
      Overloaded{
          [&](const AdditivePayload& p) {
            Rational sum = 0;
            for (std::size_t e : items.items()) sum += p.weights[e];
            return sum;
          },
          [&](const XosPayload& p) {
            const auto members = items.items();
            Rational best = 0;
            for (const auto& clause : p.clauses) {
              Rational sum = 0;
              for (std::size_t e : members) sum += clause[e];
              if (sum > best) best = sum;
            }
            return best;
          },
          [&](const CoveragePayload& p) {
            std::vector<char> covered(p.element_weights.size(), 0);
            Rational sum = 0;
            for (std::size_t e : items.items()) {
              for (std::size_t g : p.covers[e]) {
                if (!covered[g]) {
                  covered[g] = 1;
                  sum += p.element_weights[g];
                }
              }
            }
            return sum;
          },
          [&](const TablePayload& p) { return p.values[items.mask()]; },
          [&](const StaircasePayload& p) {
            return staircase_value(p.plateau, p.ground_size,
                                   static_cast<std::int64_t>(items.size()));
          },
          [&](const NearTwoPayload& p) {
            const std::size_t k = items.size();
            return Rational(k == 0 ? 0 : (k == p.ground_size ? 2 : 1));
          },
          [&](const ScaledPayload& p) { return Rational(p.factor * p.inner.evaluate(items)); },
          [&](const RestrictedPayload& p) {
            ItemSet lifted(p.inner.arity());
            for (std::size_t e : items.items()) lifted.insert(p.kept[e]);
            return p.inner.evaluate(lifted);
          },
      },
      impl_->payload);
}

Rational Valuation::item_value(std::size_t item) const {
  ItemSet single(arity());
  single.insert(item);
  return evaluate(single);
}

bool Valuation::size_symmetric() const {
  return std::visit(
      Overloaded{
          [](const AdditivePayload& p) {
            return std::adjacent_find(p.weights.begin(), p.weights.end(),
                                      std::not_equal_to<>()) == p.weights.end();
          },
          [](const StaircasePayload&) { return true; },
          [](const NearTwoPayload&) { return true; },
          [](const ScaledPayload& p) { return p.inner.size_symmetric(); },
          [](const RestrictedPayload& p) { return p.inner.size_symmetric(); },
          [](const auto&) { return false; },
      },
      impl_->payload);
}

Rational Valuation::value_of_size(std::size_t size) const {
  if (size > arity()) throw std::out_of_range("value_of_size: size exceeds arity");
  return std::visit(
      Overloaded{
          [&](const AdditivePayload& p) -> Rational {
            if (p.weights.empty()) return Rational(0);
            return Rational(p.weights.front() * static_cast<long>(size));
          },
          [&](const StaircasePayload& p) -> Rational {
            return staircase_value(p.plateau, p.ground_size, static_cast<std::int64_t>(size));
          },
          [&](const NearTwoPayload& p) -> Rational {
            return Rational(size == 0 ? 0 : (size == p.ground_size ? 2 : 1));
          },
          [&](const ScaledPayload& p) -> Rational {
            return Rational(p.factor * p.inner.value_of_size(size));
          },
          [&](const RestrictedPayload& p) -> Rational { return p.inner.value_of_size(size); },
          [&](const auto&) -> Rational {
            throw std::logic_error("value_of_size: valuation is not size-symmetric");
          },
      },
      impl_->payload);
}

std::vector<Rational> Valuation::value_table() const {
  const std::size_t m = arity();
  if (m > kMaxTableItems) {
    throw LimitExceeded("value_table: at most " + std::to_string(kMaxTableItems) + " items");
  }
  const std::uint64_t count = std::uint64_t{1} << m;
  if (const auto* table = std::get_if<TablePayload>(&impl_->payload)) return table->values;

  std::vector<Rational> out(count);
  if (const auto* add = std::get_if<AdditivePayload>(&impl_->payload)) {
    for (std::uint64_t mask = 1; mask < count; ++mask) {
      const auto low = static_cast<std::size_t>(std::countr_zero(mask));
      out[mask] = out[mask & (mask - 1)] + add->weights[low];
    }
    return out;
  }
  if (size_symmetric()) {
    std::vector<Rational> by_size(m + 1);
    for (std::size_t k = 0; k <= m; ++k) by_size[k] = value_of_size(k);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      out[mask] = by_size[static_cast<std::size_t>(std::popcount(mask))];
    }
    return out;
  }
  for (std::uint64_t mask = 0; mask < count; ++mask) out[mask] = evaluate(ItemSet::from_mask(mask, m));
  return out;
}

namespace {

template <class Payload>
const Payload& payload_as(const Valuation::Impl& impl, const char* what) {
  if (const auto* p = std::get_if<Payload>(&impl.payload)) return *p;
  throw std::logic_error(std::string(what) + ": wrong valuation kind");
}

}  // namespace

const std::vector<Rational>& Valuation::additive_weights() const {
  return payload_as<AdditivePayload>(*impl_, "additive_weights").weights;
}
const std::vector<std::vector<Rational>>& Valuation::xos_clauses() const {
  return payload_as<XosPayload>(*impl_, "xos_clauses").clauses;
}
const std::vector<Rational>& Valuation::coverage_element_weights() const {
  return payload_as<CoveragePayload>(*impl_, "coverage_element_weights").element_weights;
}
const std::vector<std::vector<std::size_t>>& Valuation::coverage_covers() const {
  return payload_as<CoveragePayload>(*impl_, "coverage_covers").covers;
}
const std::vector<Rational>& Valuation::table_values() const {
  return payload_as<TablePayload>(*impl_, "table_values").values;
}
std::int64_t Valuation::staircase_plateau() const {
  return payload_as<StaircasePayload>(*impl_, "staircase_plateau").plateau;
}
const Valuation& Valuation::inner() const {
  if (const auto* p = std::get_if<ScaledPayload>(&impl_->payload)) return p->inner;
  return payload_as<RestrictedPayload>(*impl_, "inner").inner;
}
const Rational& Valuation::scale_factor() const {
  return payload_as<ScaledPayload>(*impl_, "scale_factor").factor;
}
const std::vector<std::size_t>& Valuation::kept_items() const {
  return payload_as<RestrictedPayload>(*impl_, "kept_items").kept;
}

Rational evaluate(const Valuation& v, const ItemSet& items) { return v.evaluate(items); }

Valuation make_staircase(std::int64_t plateau, std::int64_t ground_size) {
  return Valuation::staircase(plateau, ground_size);
}

Valuation make_near_two(std::size_t ground_size) { return Valuation::near_two(ground_size); }

bool is_monotone(const std::vector<Rational>& table) {
  const std::size_t m = table_items(table.size());
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    for (std::size_t e = 0; e < m; ++e) {
      const std::uint64_t bit = std::uint64_t{1} << e;
      if (!(mask & bit) && table[mask] > table[mask | bit]) return false;
    }
  }
  return true;
}

bool is_submodular(const std::vector<Rational>& table) {
  // Local form: v(S+j) - v(S) >= v(S+j+k) - v(S+k) for j != k outside S.
  const std::size_t m = table_items(table.size());
  Rational lhs, rhs;
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t bj = std::uint64_t{1} << j;
      if (mask & bj) continue;
      for (std::size_t k = j + 1; k < m; ++k) {
        const std::uint64_t bk = std::uint64_t{1} << k;
        if (mask & bk) continue;
        lhs = table[mask | bj] + table[mask | bk];
        rhs = table[mask] + table[mask | bj | bk];
        if (lhs < rhs) return false;
      }
    }
  }
  return true;
}

bool is_subadditive(const std::vector<Rational>& table) {
  const std::uint64_t full = table.size() - 1;
  Rational sum;
  if (is_monotone(table)) {
    // For monotone v, v(S u T) <= v(S u (T \ S)), so disjoint pairs suffice.
    for (std::uint64_t a = 0; a <= full; ++a) {
      const std::uint64_t rest = full & ~a;
      for (std::uint64_t b = rest;; b = (b - 1) & rest) {
        if (b >= a) {
          sum = table[a] + table[b];
          if (table[a | b] > sum) return false;
        }
        if (b == 0) break;
      }
    }
    return true;
  }
  for (std::uint64_t a = 0; a <= full; ++a) {
    for (std::uint64_t b = a; b <= full; ++b) {
      sum = table[a] + table[b];
      if (table[a | b] > sum) return false;
    }
  }
  return true;
}

ClassFlags check_class(const Valuation& v, std::size_t m) {
  if (m != v.arity()) {
    throw std::invalid_argument("check_class: m = " + std::to_string(m) + " but valuation has " +
                                std::to_string(v.arity()) + " items");
  }
  if (m > kMaxSubadditiveCheckItems) {
    throw LimitExceeded("check_class: at most " + std::to_string(kMaxSubadditiveCheckItems) +
                        " items");
  }
  const auto table = v.value_table();
  return ClassFlags{is_monotone(table), is_subadditive(table), is_submodular(table)};
}

}  // namespace mmsalloc
