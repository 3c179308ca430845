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

#include "mmsalloc/item_set.hpp"

#include <bit>
#include <stdexcept>

namespace mmsalloc {
namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

}  // namespace

ItemSet::ItemSet(std::size_t universe_size)
    : universe_size_(universe_size), words_(word_count(universe_size), 0) {}

ItemSet::ItemSet(std::size_t universe_size, std::initializer_list<std::size_t> items)
    : ItemSet(universe_size) {
  for (std::size_t e : items) insert(e);
}

ItemSet::ItemSet(std::size_t universe_size, std::span<const std::size_t> items)
    : ItemSet(universe_size) {
  for (std::size_t e : items) insert(e);
}

ItemSet ItemSet::full(std::size_t universe_size) {
  ItemSet s(universe_size);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
  if (std::size_t tail = universe_size % kWordBits; tail != 0) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

ItemSet ItemSet::from_mask(std::uint64_t mask, std::size_t universe_size) {
  if (universe_size > kWordBits) throw std::invalid_argument("from_mask: universe larger than 64");
  if (universe_size < kWordBits && (mask >> universe_size) != 0) {
    throw std::out_of_range("from_mask: bits outside the universe");
  }
  ItemSet s(universe_size);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

std::size_t ItemSet::size() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool ItemSet::empty() const {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool ItemSet::contains(std::size_t item) const {
  check_item(item);
  return (words_[item / kWordBits] >> (item % kWordBits)) & 1U;
}

void ItemSet::insert(std::size_t item) {
  check_item(item);
  words_[item / kWordBits] |= std::uint64_t{1} << (item % kWordBits);
}

void ItemSet::erase(std::size_t item) {
  check_item(item);
  words_[item / kWordBits] &= ~(std::uint64_t{1} << (item % kWordBits));
}

std::uint64_t ItemSet::mask() const {
  if (universe_size_ > kWordBits) throw std::invalid_argument("mask: universe larger than 64");
  return words_.empty() ? 0 : words_[0];
}

std::vector<std::size_t> ItemSet::items() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
    }
  }
  return out;
}

bool ItemSet::is_subset_of(const ItemSet& other) const {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool ItemSet::intersects(const ItemSet& other) const {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

ItemSet& ItemSet::operator|=(const ItemSet& other) {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

ItemSet& ItemSet::operator&=(const ItemSet& other) {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

ItemSet& ItemSet::operator-=(const ItemSet& other) {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

std::string ItemSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t e : items()) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

void ItemSet::check_item(std::size_t item) const {
  if (item >= universe_size_) {
    throw std::out_of_range("item " + std::to_string(item) + " outside universe of size " +
                            std::to_string(universe_size_));
  }
}

void ItemSet::check_same_universe(const ItemSet& other) const {
  if (universe_size_ != other.universe_size_) {
    throw std::invalid_argument("item sets over different universes");
  }
}

}  // namespace mmsalloc
