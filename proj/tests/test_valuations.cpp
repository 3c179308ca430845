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

#include <doctest.h>

#include "mmsalloc/harness.hpp"
#include "mmsalloc/valuation.hpp"

using namespace mmsalloc;

namespace {

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("additive valuation sums weights") {
  const Valuation v = Valuation::additive(ints({1, 2, 3}));
  CHECK(v.arity() == 3);
  CHECK(v.evaluate(ItemSet(3, {0, 2})) == 4);
  CHECK(v.evaluate(ItemSet(3)) == 0);
  CHECK(v.item_value(1) == 2);
  CHECK_FALSE(v.size_symmetric());
  CHECK(Valuation::additive(ints({2, 2})).size_symmetric());
  CHECK_THROWS_AS(Valuation::additive(ints({1, -1})), std::invalid_argument);
  CHECK_THROWS_AS(v.evaluate(ItemSet(4)), std::invalid_argument);
}

TEST_CASE("xos valuation is the best clause") {
  const Valuation v = Valuation::xos({ints({1, 0, 1}), ints({0, 3, 0})});
  CHECK(v.evaluate(ItemSet(3, {0, 2})) == 2);
  CHECK(v.evaluate(ItemSet(3, {0, 1, 2})) == 3);
  CHECK_THROWS_AS(Valuation::xos({ints({1}), ints({1, 2})}), std::invalid_argument);
  CHECK_THROWS_AS(Valuation::xos({}), std::invalid_argument);
}

TEST_CASE("coverage valuation weighs the union") {
  const Valuation v = Valuation::coverage(ints({1, 2, 4}), {{0, 1}, {1, 2}, {}});
  CHECK(v.evaluate(ItemSet(3, {0})) == 3);
  CHECK(v.evaluate(ItemSet(3, {0, 1})) == 7);
  CHECK(v.evaluate(ItemSet(3, {2})) == 0);
  CHECK_THROWS_AS(Valuation::coverage(ints({1}), {{1}}), std::invalid_argument);
}

TEST_CASE("table valuation validation") {
  CHECK_NOTHROW(Valuation::table(ints({0, 1, 1, 2})));
  CHECK_THROWS_AS(Valuation::table(ints({1, 1, 1, 2})), std::invalid_argument);  // v(empty)
  CHECK_THROWS_AS(Valuation::table(ints({0, 2, 1, 1})), std::invalid_argument);  // not monotone
  CHECK_THROWS_AS(Valuation::table(ints({0, 1, 1, 3})), std::invalid_argument);  // not subadditive
  CHECK_THROWS_AS(Valuation::table(ints({0, 1, 1})), std::invalid_argument);     // not 2^m
  CHECK_NOTHROW(Valuation::table(ints({0, 1, 1, 3}), TableCheck::kSkip));
  CHECK_THROWS_AS(Valuation::table(std::vector<Rational>(std::size_t{1} << 13, Rational(0))),
                  LimitExceeded);
}

TEST_CASE("staircase follows its size profile") {
  // M = 2, s = 10: sizes 0..10.
  const Valuation v = make_staircase(2, 10);
  const std::vector<long> expected{0, 1, 2, 2, 2, 2, 3, 4, 4, 4, 4};
  for (std::size_t k = 0; k <= 10; ++k) CHECK(v.value_of_size(k) == expected[k]);
  CHECK(v.evaluate(ItemSet(10, {1, 3, 5, 7, 9, 0})) == 3);
  CHECK_THROWS_AS(make_staircase(3, 6), std::invalid_argument);
  CHECK_THROWS_AS(make_staircase(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_staircase(0, 6), std::invalid_argument);
}

TEST_CASE("staircase is monotone and subadditive") {
  for (std::int64_t M : {1, 2, 3}) {
    for (std::int64_t s = 2 * M + 2; s <= 12; s += 2) {
      const ClassFlags f = check_class(make_staircase(M, s), static_cast<std::size_t>(s));
      CHECK(f.monotone);
      CHECK(f.subadditive);
    }
  }
}

TEST_CASE("near-two valuation") {
  const Valuation v = make_near_two(4);
  CHECK(v.evaluate(ItemSet(4)) == 0);
  CHECK(v.evaluate(ItemSet(4, {1, 2, 3})) == 1);
  CHECK(v.evaluate(ItemSet::full(4)) == 2);
  const ClassFlags f = check_class(v, 4);
  CHECK(f.monotone);
  CHECK(f.subadditive);
  CHECK_FALSE(f.submodular);
  CHECK_THROWS_AS(make_near_two(1), std::invalid_argument);
}

TEST_CASE("scaled and restricted wrappers") {
  const Valuation base = Valuation::additive(ints({1, 2, 3, 4}));
  const Valuation half = Valuation::scaled(base, Rational(1, 2));
  CHECK(half.evaluate(ItemSet::full(4)) == 5);
  CHECK_THROWS_AS(Valuation::scaled(base, Rational(0)), std::invalid_argument);

  const Valuation r = Valuation::restricted(base, {3, 1});
  CHECK(r.arity() == 2);
  CHECK(r.evaluate(ItemSet(2, {0})) == 4);
  CHECK(r.evaluate(ItemSet::full(2)) == 6);
  CHECK_THROWS_AS(Valuation::restricted(base, {4}), std::invalid_argument);
  CHECK_THROWS_AS(Valuation::restricted(base, {1, 1}), std::invalid_argument);

  const Valuation rs = Valuation::restricted(make_staircase(1, 4), {0, 1, 2});
  CHECK(rs.size_symmetric());
  CHECK(rs.value_of_size(3) == 2);
}

TEST_CASE("value_table agrees with evaluate") {
  Rng rng(1);
  for (ValuationClass cls : {ValuationClass::kAdditive, ValuationClass::kXos,
                             ValuationClass::kCoverage, ValuationClass::kTable}) {
    const Valuation v = random_valuation(cls, 6, rng);
    const std::vector<Rational> table = v.value_table();
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      CHECK(table[mask] == v.evaluate(ItemSet::from_mask(mask, 6)));
    }
  }
  const Valuation s = make_staircase(1, 6);
  const std::vector<Rational> table = s.value_table();
  for (std::uint64_t mask = 0; mask < 64; ++mask) CHECK(table[mask] == s.evaluate(ItemSet::from_mask(mask, 6)));
}

TEST_CASE("class checks on small tables") {
  // Unit-demand max is submodular; v = |S|^2 capped is not subadditive.
  const Valuation unit_demand = Valuation::xos({ints({1, 0}), ints({0, 1})});
  CHECK(check_class(unit_demand, 2) == ClassFlags{true, true, true});
  CHECK(is_subadditive(ints({0, 1, 1, 2})));
  CHECK_FALSE(is_subadditive(ints({0, 1, 1, 3})));
  CHECK_FALSE(is_monotone(ints({0, 2, 1, 1})));
  // Non-monotone but subadditive over all pairs: v(a) = 2, v(b) = 1, v(ab) = 1.
  CHECK(is_subadditive(ints({0, 2, 1, 1})));
  CHECK_THROWS_AS(check_class(unit_demand, 3), std::invalid_argument);
}

TEST_CASE("property: generated valuations are monotone and subadditive") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const std::size_t m = 1 + rng.uniform_below(8);
    for (ValuationClass cls : {ValuationClass::kAdditive, ValuationClass::kXos,
                               ValuationClass::kCoverage, ValuationClass::kTable}) {
      const Valuation v = random_valuation(cls, m, rng);
      const ClassFlags f = check_class(v, m);
      CHECK(f.monotone);
      CHECK(f.subadditive);
      if (cls == ValuationClass::kAdditive || cls == ValuationClass::kCoverage) CHECK(f.submodular);
    }
    const Valuation closure = random_subadditive_table(m, rng);
    const ClassFlags f = check_class(closure, m);
    CHECK(f.monotone);
    CHECK(f.subadditive);
  }
}

TEST_CASE("property: submodular implies subadditive on random tables") {
  // Exhaustive over random tables on three items; the local submodularity
  // test must never accept a table that fails subadditivity.
  Rng rng(77);
  int submodular_seen = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Rational> table(8, Rational(0));
    for (std::size_t mask = 1; mask < 8; ++mask) table[mask] = static_cast<long>(rng.uniform_below(5));
    if (is_submodular(table) && is_monotone(table)) {
      ++submodular_seen;
      CHECK(is_subadditive(table));
    }
  }
  CHECK(submodular_seen > 0);
}
