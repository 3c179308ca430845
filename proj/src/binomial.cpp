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

#include "mmsalloc/binomial.hpp"

#include <stdexcept>

namespace mmsalloc {

BinomialWeights::BinomialWeights(std::size_t trials, const Rational& p) : trials_(trials) {
  if (p < 0 || p > 1) throw std::invalid_argument("binomial: probability outside [0, 1]");
  p_num_ = p.get_num();
  p_den_ = p.get_den();
  if (p_num_ == 0 || p_num_ == p_den_) {
    denominator_ = 1;
    return;
  }
  mpz_pow_ui(denominator_.get_mpz_t(), p_den_.get_mpz_t(), trials_);
  const BigInt q_num = p_den_ - p_num_;
  mpz_pow_ui(first_.get_mpz_t(), q_num.get_mpz_t(), trials_);
}

}  // namespace mmsalloc
