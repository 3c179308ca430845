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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmsalloc/json_io.hpp"

namespace mmsalloc {

// Inputs shared by the `concentration` verbs. Unset fields take per-verb
// defaults, listed in verb_help().
struct VerbOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 500;
  std::optional<std::size_t> m;
  std::optional<std::size_t> q;
  std::optional<int> t;
  std::optional<Rational> pr_a;
  std::optional<Rational> budget;
};

struct VerbReport {
  Json json;
  std::string csv;  // header plus one row per checked case
  bool holds = true;
};

inline constexpr std::string_view kVerbNames[] = {
    "proposition", "talagrand", "schechtman", "eh-bound",
    "tightness",   "lower-bound", "lemma",    "discussion"};

std::string verb_help(std::string_view verb);

// Throws std::invalid_argument for an unknown verb or bad options.
VerbReport run_concentration_verb(std::string_view verb, const VerbOptions& opts);

}  // namespace mmsalloc
