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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mmsalloc/allocation.hpp"
#include "mmsalloc/mms.hpp"
#include "mmsalloc/valuation.hpp"

namespace mmsalloc {

using Json = nlohmann::json;

// Rationals are written as strings ("3/4"). On input, strings, integers and
// decimal numbers are accepted.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// {"type": "additive", "weights": [...]}, {"type": "xos", "clauses": [[...]]},
// {"type": "coverage", "element_weights": [...], "covers": [[...]]},
// {"type": "table", "values": [...], "validate": true},
// {"type": "staircase", "M": 3, "s": 40}, {"type": "near_two", "s": 20},
// {"type": "scaled", "inner": {...}, "factor": "1/2"},
// {"type": "restricted", "inner": {...}, "kept": [...]}.
Json valuation_to_json(const Valuation& v);
Valuation valuation_from_json(const Json& j);

// {"m": int, "agents": [{"id": str, "valuation": {...}}]}; validated.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);
Instance load_instance(const std::filesystem::path& path);
Json load_json(const std::filesystem::path& path);

Json solution_to_json(const FractionalSolution& sol);
FractionalSolution solution_from_json(const Json& j);

Json mms_to_json(const Instance& inst, const std::vector<MmsResult>& results);

Json allocation_to_json(const Instance& inst, const Allocation& alloc);
// agent,items,value,mms,ratio,preprocessed with items separated by ';'.
std::string allocation_to_csv(const Instance& inst, const Allocation& alloc);

}  // namespace mmsalloc
