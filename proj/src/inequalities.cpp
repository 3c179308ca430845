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

#include <stdexcept>

#include "mmsalloc/concentration.hpp"

namespace mmsalloc {

EhBound max_EH_bound(const Rational& prA, const Rational& budget) {
  if (prA <= 0 || prA > 1) throw std::invalid_argument("max_EH_bound: requires 0 < Pr[A] <= 1");
  if (budget < prA) throw std::invalid_argument("max_EH_bound: infeasible, budget below Pr[A]");
  const Rational mass = 1 - prA;
  const Rational spend = budget - prA;
  EhBound out;
  out.maximum = 0;
  if (mass == 0 || spend == 0) return out;

  // Level i costs 2^i per unit of mass and pays i. The upper concave hull of
  // (2^i, i) through the origin has slope 1/2 up to 2^1, so a small budget
  // is spent entirely at level 1. Beyond that the mass sits on the two levels
  // whose costs bracket spend / mass.
  if (spend < 2 * mass) {
    out.maximum = spend / 2;
    out.witness.emplace_back(1, out.maximum);
    return out;
  }
  int j = 1;
  Rational cost = 2;  // 2^j
  while (2 * cost * mass <= spend) {
    cost *= 2;
    ++j;
  }
  const Rational upper = spend / cost - mass;  // h_{j+1}
  const Rational lower = 2 * mass - spend / cost;  // h_j
  if (lower > 0) out.witness.emplace_back(j, lower);
  if (upper > 0) out.witness.emplace_back(j + 1, upper);
  out.maximum = j * mass + upper;
  return out;
}

namespace {

// Structural monotone-and-subadditive test for arities too large to tabulate.
bool structurally_subadditive(const Valuation& v) {
  switch (v.kind()) {
    case ValuationKind::kAdditive:
    case ValuationKind::kXos:
    case ValuationKind::kCoverage:
    case ValuationKind::kStaircase:
    case ValuationKind::kNearTwo:
      return true;
    case ValuationKind::kScaled:
    case ValuationKind::kRestricted:
      return structurally_subadditive(v.inner());
    case ValuationKind::kTable:
      // Tables this large cannot have been validated on construction.
      return false;
  }
  return false;
}

}  // namespace

UpperBoundReport check_upper_bound_prop(const Valuation& v, const SampleSpec& spec) {
  bool in_class = false;
  if (v.arity() <= kMaxSubadditiveCheckItems) {
    const ClassFlags flags = check_class(v, v.arity());
    in_class = flags.monotone && flags.subadditive;
  } else {
    in_class = structurally_subadditive(v);
  }
  if (!in_class) {
    throw std::invalid_argument("upper bound: valuation must be monotone and subadditive");
  }
  const DistributionSummary dist = exact_value_distribution(v, spec);
  UpperBoundReport out;
  out.expectation = dist.expectation;
  out.median = dist.median;
  out.max_item = dist.max_item;
  out.bound = Rational(3, 2) * dist.median + Rational(11, 8) * dist.max_item;
  out.holds = out.expectation <= out.bound;
  return out;
}

}  // namespace mmsalloc
