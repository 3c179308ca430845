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

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmsalloc {

// Exact arithmetic for every value that enters an inequality check.
using Rational = mpq_class;
using BigInt = mpz_class;

// Thrown when an input exceeds an exhaustive-enumeration or search limit.
class LimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// num / den in lowest terms. mpq_class(num, den) alone does not reduce, and
// GMP comparisons assume reduced operands.
inline Rational make_rational(long num, long den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

// Accepts "7", "-3/8", "0.125" and "-.5". Throws std::invalid_argument on
// anything else (exponents and floating-point text are rejected so that no
// value silently picks up binary rounding error).
Rational parse_rational(std::string_view text);

// Canonical "p" or "p/q" form.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& base, unsigned long exponent);

}  // namespace mmsalloc
