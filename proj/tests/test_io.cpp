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

#include <doctest.h>

#include "mmsalloc/harness.hpp"
#include "mmsalloc/json_io.hpp"
#include "mmsalloc/verbs.hpp"

using namespace mmsalloc;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(MMSALLOC_TEST_DIR) / "data" / name; }

}  // namespace

TEST_CASE("rationals in json") {
  CHECK(rational_from_json(Json("3/4")) == Rational(3, 4));
  CHECK(rational_from_json(Json(2)) == 2);
  CHECK(rational_from_json(Json(0.25)) == Rational(1, 4));
  CHECK(rational_to_json(make_rational(6, 8)) == Json("3/4"));
  CHECK_THROWS_AS(rational_from_json(Json(true)), std::invalid_argument);
}

TEST_CASE("valuation json round trip") {
  Rng rng(4);
  std::vector<Valuation> vals{
      random_valuation(ValuationClass::kAdditive, 5, rng),
      random_valuation(ValuationClass::kXos, 5, rng),
      random_valuation(ValuationClass::kCoverage, 5, rng),
      random_valuation(ValuationClass::kTable, 5, rng),
      make_staircase(2, 8),
      make_near_two(5),
  };
  vals.push_back(Valuation::scaled(vals[1], Rational(2, 3)));
  vals.push_back(Valuation::restricted(vals[2], {4, 0, 2}));
  for (const Valuation& v : vals) {
    const Json j = valuation_to_json(v);
    const Valuation back = valuation_from_json(Json::parse(j.dump()));
    CHECK(back.kind() == v.kind());
    CHECK(back.arity() == v.arity());
    CHECK(back.value_table() == v.value_table());
  }
  CHECK_THROWS_AS(valuation_from_json(Json{{"type", "gross"}}), std::invalid_argument);
  CHECK_THROWS_AS(valuation_from_json(Json{{"type", "additive"}}), std::invalid_argument);
}

TEST_CASE("instance files") {
  const Instance unit = load_instance(data("unit_n2_m8.json"));
  CHECK(unit.m == 8);
  CHECK(unit.n() == 2);
  CHECK(unit.agents[0].id == "alice");
  const Instance mixed = load_instance(data("mixed_n3_m6.json"));
  CHECK(mixed.agents[1].valuation.kind() == ValuationKind::kCoverage);
  const Instance again = instance_from_json(Json::parse(instance_to_json(mixed).dump()));
  CHECK(again.agents[2].valuation.value_table() == mixed.agents[2].valuation.value_table());
  CHECK_THROWS(load_instance(data("missing.json")));
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"m": 3, "agents": [{"id": "a", "valuation": {"type": "additive", "weights": [1]}}]})")),
                  std::invalid_argument);
}

TEST_CASE("allocation and solution json") {
  const Instance inst = load_instance(data("mixed_n3_m6.json"));
  const Allocation a = allocate(inst, AlgoParams::for_agents(3, 3, 1));
  const Json j = allocation_to_json(inst, a);
  CHECK(j["t"] == 1);
  CHECK(j["threshold"] == "4/23");
  CHECK(j["agents"].size() == 3);
  CHECK(j["invariants_ok"] == true);
  const std::string csv = allocation_to_csv(inst, a);
  CHECK(csv.rfind("agent,items,value,mms,ratio,preprocessed\n", 0) == 0);

  const PreparedInstance prep = prepare_allocation(inst, AlgoParams::for_agents(3, 0, 1));
  const FractionalSolution back = solution_from_json(Json::parse(solution_to_json(prep.lp).dump()));
  CHECK(back.entries.size() == prep.lp.entries.size());
  CHECK(check_feasible(back).empty());

  std::vector<MmsResult> results;
  for (const Agent& ag : inst.agents) results.push_back(exact_mms(ag.valuation, inst.m, inst.n()));
  const Json mj = mms_to_json(inst, results);
  CHECK(mj[0]["agent"] == "a");
  CHECK(mj[0]["partition"].size() == 3);
}

TEST_CASE("concentration verbs") {
  VerbOptions o;
  o.trials = 20;
  for (std::string_view verb : kVerbNames) {
    CAPTURE(verb);
    const VerbReport r = run_concentration_verb(verb, o);
    CHECK(r.holds);
    CHECK(r.json["holds"] == true);
    CHECK_FALSE(r.csv.empty());
    CHECK_FALSE(verb_help(verb).empty());
  }
  CHECK_THROWS_AS(run_concentration_verb("nope", o), std::invalid_argument);
  o.pr_a = Rational(1, 2);
  o.budget = Rational(5, 2);
  CHECK(run_concentration_verb("eh-bound", o).json["maximum"] == "1");
}
