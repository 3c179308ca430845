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

#include "mmsalloc/rational.hpp"

#include <cctype>

namespace mmsalloc {
namespace {

bool all_digits(std::string_view s) {
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) bad(text);

  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (num.empty() || den.empty() || !all_digits(num) || !all_digits(den)) bad(text);
    BigInt d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(BigInt(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || !all_digits(whole) || !all_digits(frac)) bad(text);
    std::string digits = std::string(whole) + std::string(frac);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    out = Rational(BigInt(digits.empty() ? "0" : digits, 10), scale);
  } else {
    if (!all_digits(body)) bad(text);
    out = Rational(BigInt(std::string(body), 10));
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow(const Rational& base, unsigned long exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

}  // namespace mmsalloc
