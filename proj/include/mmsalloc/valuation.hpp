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
#include <memory>
#include <string_view>
#include <vector>

#include "mmsalloc/item_set.hpp"
#include "mmsalloc/rational.hpp"

namespace mmsalloc {

enum class ValuationKind {
  kAdditive,
  kXos,
  kCoverage,
  kTable,
  kStaircase,
  kNearTwo,
  kScaled,
  kRestricted,
};

std::string_view to_string(ValuationKind kind);

// Largest arity accepted by the explicit table class.
inline constexpr std::size_t kMaxTableItems = 20;

enum class TableCheck { kValidate, kSkip };

// An immutable oracle for a monotone set function with v(empty) = 0.
// Copies share the underlying payload.
class Valuation {
 public:
  static Valuation additive(std::vector<Rational> weights);
  // Pointwise max of the additive clauses; every clause has one weight per item.
  static Valuation xos(std::vector<std::vector<Rational>> clauses);
  // Item j covers ground elements covers[j]; value is the weight of the union.
  static Valuation coverage(std::vector<Rational> element_weights,
                            std::vector<std::vector<std::size_t>> covers);
  // values[mask] for every subset mask of m items (values.size() == 2^m).
  // Unless skipped, the table is checked for v(empty) = 0, non-negativity,
  // monotonicity and subadditivity.
  static Valuation table(std::vector<Rational> values, TableCheck check = TableCheck::kValidate);
  static Valuation staircase(std::int64_t plateau, std::int64_t ground_size);
  static Valuation near_two(std::size_t ground_size);
  static Valuation scaled(Valuation inner, Rational factor);
  // The valuation seen on a subset of inner's items; item i of the result
  // is item kept_items[i] of inner.
  static Valuation restricted(Valuation inner, std::vector<std::size_t> kept_items);

  ValuationKind kind() const;
  std::size_t arity() const;

  Rational evaluate(const ItemSet& items) const;
  Rational item_value(std::size_t item) const;

  // True when the value depends only on |S|.
  bool size_symmetric() const;
  // Value of any set of the given size. Requires size_symmetric().
  Rational value_of_size(std::size_t size) const;

  // Value of every subset, indexed by mask. Requires arity() <= kMaxTableItems.
  std::vector<Rational> value_table() const;

  // Class-level parameters, for serialization. Each accessor throws
  // std::logic_error when called on another kind.
  const std::vector<Rational>& additive_weights() const;
  const std::vector<std::vector<Rational>>& xos_clauses() const;
  const std::vector<Rational>& coverage_element_weights() const;
  const std::vector<std::vector<std::size_t>>& coverage_covers() const;
  const std::vector<Rational>& table_values() const;
  std::int64_t staircase_plateau() const;
  const Valuation& inner() const;
  const Rational& scale_factor() const;
  const std::vector<std::size_t>& kept_items() const;

  struct Impl;

 private:
  explicit Valuation(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

Rational evaluate(const Valuation& v, const ItemSet& items);

// Size-profile valuation: |S| up to M, flat at M until s/2, then rising
// one per item to 2M at s/2 + M, flat after. Requires s even and s > 2M.
Valuation make_staircase(std::int64_t plateau, std::int64_t ground_size);

// 0 on the empty set, 1 on proper nonempty subsets, 2 on the full set.
Valuation make_near_two(std::size_t ground_size);

struct ClassFlags {
  bool monotone = false;
  bool subadditive = false;
  bool submodular = false;
  bool operator==(const ClassFlags&) const = default;
};

inline constexpr std::size_t kMaxMonotoneCheckItems = 16;
inline constexpr std::size_t kMaxSubadditiveCheckItems = 12;

bool is_monotone(const std::vector<Rational>& table);
bool is_submodular(const std::vector<Rational>& table);
// Disjoint pairs when the table is monotone, all pairs otherwise.
bool is_subadditive(const std::vector<Rational>& table);

// Exhaustive lattice checks; m must equal v.arity() and be at most 12.
ClassFlags check_class(const Valuation& v, std::size_t m);

}  // namespace mmsalloc
