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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mmsalloc {

// A subset of the item universe {0, ..., universe_size - 1}.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(std::size_t universe_size);
  ItemSet(std::size_t universe_size, std::initializer_list<std::size_t> items);
  ItemSet(std::size_t universe_size, std::span<const std::size_t> items);

  static ItemSet full(std::size_t universe_size);
  // Bit i of `mask` selects item i. Requires universe_size <= 64.
  static ItemSet from_mask(std::uint64_t mask, std::size_t universe_size);

  std::size_t universe_size() const { return universe_size_; }
  std::size_t size() const;
  bool empty() const;
  bool contains(std::size_t item) const;
  void insert(std::size_t item);
  void erase(std::size_t item);

  // Requires universe_size <= 64.
  std::uint64_t mask() const;
  std::vector<std::size_t> items() const;

  bool is_subset_of(const ItemSet& other) const;
  bool intersects(const ItemSet& other) const;

  ItemSet& operator|=(const ItemSet& other);
  ItemSet& operator&=(const ItemSet& other);
  // Set difference.
  ItemSet& operator-=(const ItemSet& other);

  friend ItemSet operator|(ItemSet a, const ItemSet& b) { return a |= b; }
  friend ItemSet operator&(ItemSet a, const ItemSet& b) { return a &= b; }
  friend ItemSet operator-(ItemSet a, const ItemSet& b) { return a -= b; }

  bool operator==(const ItemSet&) const = default;
  std::strong_ordering operator<=>(const ItemSet&) const = default;

  // "{0,2,5}"
  std::string to_string() const;

 private:
  void check_item(std::size_t item) const;
  void check_same_universe(const ItemSet& other) const;

  std::size_t universe_size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mmsalloc
