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
#include "mmsalloc/mms.hpp"
#include "oracles.hpp"

using namespace mmsalloc;

namespace {

void check_partition(const MmsResult& r, std::size_t m, std::size_t n, const Valuation& v) {
  REQUIRE(r.partition.size() == n);
  ItemSet seen(m);
  Rational worst = -1;
  for (const ItemSet& b : r.partition) {
    CHECK_FALSE(b.intersects(seen));
    seen |= b;
    const Rational value = v.evaluate(b);
    if (worst < 0 || value < worst) worst = value;
  }
  CHECK(seen == ItemSet::full(m));
  CHECK(worst == r.value);
}

}  // namespace

TEST_CASE("MMS of unit items") {
  const Valuation v = Valuation::additive(std::vector<Rational>(8, Rational(1)));
  const MmsResult r = exact_mms(v, 8, 2);
  CHECK(r.value == 4);
  check_partition(r, 8, 2, v);
  CHECK(exact_mms(v, 8, 3).value == 2);
  CHECK(exact_mms(v, 8, 8).value == 1);
}

TEST_CASE("MMS with one agent is the whole universe") {
  const Valuation v = Valuation::additive({Rational(1), Rational(2)});
  const MmsResult r = exact_mms(v, 2, 1);
  CHECK(r.value == 3);
  CHECK(r.partition == std::vector<ItemSet>{ItemSet::full(2)});
}

TEST_CASE("MMS with more bundles than items is zero") {
  const Valuation v = Valuation::additive({Rational(1), Rational(2)});
  const MmsResult r = exact_mms(v, 2, 3);
  CHECK(r.value == 0);
  check_partition(r, 2, 3, v);
  CHECK(r.partition[0] == ItemSet::full(2));
}

TEST_CASE("MMS partition tie-break is deterministic") {
  // Items 0..3 with weights 1,1,1,1 and n = 2: every balanced split is
  // optimal. Bundles go in order of lowest item and the first bundle takes the
  // earliest item on which optimal candidates differ, so {0,1} wins.
  const Valuation v = Valuation::additive(std::vector<Rational>(4, Rational(1)));
  const MmsResult r = exact_mms(v, 4, 2);
  CHECK(r.partition[0] == ItemSet(4, {0, 1}));
  CHECK(r.partition[1] == ItemSet(4, {2, 3}));
}

TEST_CASE("MMS errors") {
  const Valuation v = Valuation::additive({Rational(1), Rational(2)});
  CHECK_THROWS_AS(exact_mms(v, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(exact_mms(v, 2, 0), std::invalid_argument);
  const Valuation big = Valuation::additive(std::vector<Rational>(21, Rational(1)));
  CHECK_THROWS_AS(exact_mms(big, 21, 2), LimitExceeded);
}

TEST_CASE("normalize_to_unit_mms") {
  const Valuation v = Valuation::additive(std::vector<Rational>(6, Rational(3)));
  const Valuation u = normalize_to_unit_mms(v, 6, 3);
  CHECK(exact_mms(u, 6, 3).value == 1);
  const Valuation zero = Valuation::additive(std::vector<Rational>(2, Rational(0)));
  CHECK_THROWS_AS(normalize_to_unit_mms(zero, 2, 2), std::domain_error);
}

TEST_CASE("MMS of non-additive valuations against the naive oracle") {
  const Valuation nt = make_near_two(5);
  CHECK(exact_mms(nt, 5, 2).value == oracle::naive_mms(nt, 5, 2));
  CHECK(exact_mms(nt, 5, 2).value == 1);
  const Valuation st = make_staircase(1, 4);
  CHECK(exact_mms(st, 4, 2).value == oracle::naive_mms(st, 4, 2));
}

TEST_CASE("property: subset DP equals n^m enumeration") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(stream_seed(1234, seed));
    const std::size_t m = 1 + rng.uniform_below(7);
    const std::size_t n = 1 + rng.uniform_below(3);
    const auto cls = static_cast<ValuationClass>(rng.uniform_below(4));
    const Valuation v = random_valuation(cls, m, rng);
    const MmsResult r = exact_mms(v, m, n);
    CHECK(r.value == oracle::naive_mms(v, m, n));
    check_partition(r, m, n, v);
  }
}
