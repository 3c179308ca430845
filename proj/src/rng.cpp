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

#include "mmsalloc/rng.hpp"

#include <stdexcept>

namespace mmsalloc {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Rejection on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

bool Rng::bernoulli(const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  if (mpz_fits_ulong_p(p.get_den_mpz_t())) {
    const std::uint64_t den = mpz_get_ui(p.get_den_mpz_t());
    const std::uint64_t num = mpz_get_ui(p.get_num_mpz_t());
    return uniform_below(den) < num;
  }
  return uniform01() < p.get_d();
}

}  // namespace mmsalloc
