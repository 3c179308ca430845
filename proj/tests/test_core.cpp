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

#include <set>

#include "mmsalloc/item_set.hpp"
#include "mmsalloc/rational.hpp"
#include "mmsalloc/rng.hpp"

using namespace mmsalloc;

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/8") == Rational(-3, 8));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-.5") == Rational(-1, 2));
  CHECK(parse_rational("010") == 10);
  CHECK(parse_rational("1.678") == Rational(839, 500));
  CHECK_THROWS_AS(parse_rational("1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("make_rational reduces") {
  const Rational q = make_rational(4, 92);
  CHECK(q.get_num() == 1);
  CHECK(q.get_den() == 23);
  CHECK(to_string(q) == "1/23");
  CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("pow on rationals") {
  CHECK(pow(Rational(3, 4), 3) == Rational(27, 64));
  CHECK(pow(Rational(2), 0) == 1);
}

TEST_CASE("ItemSet set algebra") {
  ItemSet a(70, {0, 2, 65});
  ItemSet b(70, {2, 3});
  CHECK((a | b).items() == std::vector<std::size_t>{0, 2, 3, 65});
  CHECK((a & b).items() == std::vector<std::size_t>{2});
  CHECK((a - b).items() == std::vector<std::size_t>{0, 65});
  CHECK(a.size() == 3);
  CHECK(a.contains(65));
  CHECK_FALSE(a.contains(64));
  CHECK(a.intersects(b));
  CHECK(ItemSet(70, {2}).is_subset_of(b));
  CHECK(ItemSet::full(70).size() == 70);
  CHECK(ItemSet(5).empty());
  CHECK(ItemSet(5, {0, 2}).to_string() == "{0,2}");
  CHECK(ItemSet::from_mask(0b101, 3) == ItemSet(3, {0, 2}));
  CHECK(ItemSet(3, {0, 2}).mask() == 0b101U);
  CHECK_THROWS(ItemSet(3, {3}));
  CHECK_THROWS(ItemSet(3) | ItemSet(4));
  ItemSet c(4, {1});
  c.erase(1);
  CHECK(c.empty());
}

TEST_CASE("Rng is reproducible and streams differ") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
}

TEST_CASE("uniform_below stays in range and hits every value") {
  Rng rng(11);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t x = rng.uniform_below(7);
    CHECK(x < 7);
    seen.insert(x);
  }
  CHECK(seen.size() == 7);
  CHECK_THROWS(rng.uniform_below(0));
}

TEST_CASE("bernoulli frequencies match exact probabilities") {
  Rng rng(3);
  CHECK_FALSE(rng.bernoulli(0));
  CHECK(rng.bernoulli(1));
  int hits = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) hits += rng.bernoulli(Rational(1, 3)) ? 1 : 0;
  // Three standard deviations of Binomial(20000, 1/3) is about 200.
  CHECK(std::abs(hits - n / 3) < 200);
}

TEST_CASE("shuffle is a permutation") {
  Rng rng(9);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}
