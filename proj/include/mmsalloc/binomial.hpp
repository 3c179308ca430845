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

#include "mmsalloc/rational.hpp"

namespace mmsalloc {

// Binomial(s, p) probabilities as integers over one shared denominator:
// Pr[K = k] = numerator(k) / denominator(). With p = a/d the numerators are
// C(s, k) a^k (d - a)^(s - k) and the denominator is d^s, generated by an
// exact integer recurrence so that no rational is normalized per term.
class BinomialWeights {
 public:
  BinomialWeights(std::size_t trials, const Rational& p);

  std::size_t trials() const { return trials_; }
  const BigInt& denominator() const { return denominator_; }

  // Calls visit(k, numerator) for k = 0..s in order; stops early when visit
  // returns false.
  template <class Visitor>
  void for_each(Visitor&& visit) const {
    if (p_num_ == 0) {
      visit(std::size_t{0}, denominator_);
      return;
    }
    if (p_num_ == p_den_) {
      for (std::size_t k = 0; k < trials_; ++k) {
        if (!visit(k, zero_)) return;
      }
      visit(trials_, denominator_);
      return;
    }
    BigInt term = first_;
    const BigInt q_num = p_den_ - p_num_;
    for (std::size_t k = 0;; ++k) {
      if (!visit(k, static_cast<const BigInt&>(term))) return;
      if (k == trials_) return;
      term *= static_cast<unsigned long>(trials_ - k);
      term *= p_num_;
      mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(k + 1));
      mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), q_num.get_mpz_t());
    }
  }

 private:
  std::size_t trials_;
  BigInt p_num_;
  BigInt p_den_;
  BigInt denominator_;
  BigInt first_;
  BigInt zero_ = 0;
};

}  // namespace mmsalloc
