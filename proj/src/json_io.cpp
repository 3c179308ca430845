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

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmsalloc/json_io.hpp"

namespace mmsalloc {

namespace {

Json items_to_json(const ItemSet& s) { return Json(s.items()); }

ItemSet items_from_json(const Json& j, std::size_t universe) {
  ItemSet out(universe);
  for (const Json& e : j) out.insert(e.get<std::size_t>());
  return out;
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const Rational& q : values) out.push_back(rational_to_json(q));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  std::vector<Rational> out;
  for (const Json& e : j) out.push_back(rational_from_json(e));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

}  // namespace

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

Json valuation_to_json(const Valuation& v) {
  Json out;
  out["type"] = std::string(to_string(v.kind()));
  switch (v.kind()) {
    case ValuationKind::kAdditive:
      out["weights"] = rationals_to_json(v.additive_weights());
      break;
    case ValuationKind::kXos:
      out["clauses"] = Json::array();
      for (const auto& clause : v.xos_clauses()) out["clauses"].push_back(rationals_to_json(clause));
      break;
    case ValuationKind::kCoverage:
      out["element_weights"] = rationals_to_json(v.coverage_element_weights());
      out["covers"] = v.coverage_covers();
      break;
    case ValuationKind::kTable:
      out["values"] = rationals_to_json(v.table_values());
      out["validate"] = true;
      break;
    case ValuationKind::kStaircase:
      out["M"] = v.staircase_plateau();
      out["s"] = v.arity();
      break;
    case ValuationKind::kNearTwo:
      out["s"] = v.arity();
      break;
    case ValuationKind::kScaled:
      out["inner"] = valuation_to_json(v.inner());
      out["factor"] = rational_to_json(v.scale_factor());
      break;
    case ValuationKind::kRestricted:
      out["inner"] = valuation_to_json(v.inner());
      out["kept"] = v.kept_items();
      break;
  }
  return out;
}

Valuation valuation_from_json(const Json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "additive") return Valuation::additive(rationals_from_json(field(j, "weights")));
  if (type == "xos") {
    std::vector<std::vector<Rational>> clauses;
    for (const Json& clause : field(j, "clauses")) clauses.push_back(rationals_from_json(clause));
    return Valuation::xos(std::move(clauses));
  }
  if (type == "coverage") {
    return Valuation::coverage(rationals_from_json(field(j, "element_weights")),
                               field(j, "covers").get<std::vector<std::vector<std::size_t>>>());
  }
  if (type == "table") {
    const bool validate = j.value("validate", true);
    return Valuation::table(rationals_from_json(field(j, "values")),
                            validate ? TableCheck::kValidate : TableCheck::kSkip);
  }
  if (type == "staircase") {
    return Valuation::staircase(field(j, "M").get<std::int64_t>(), field(j, "s").get<std::int64_t>());
  }
  if (type == "near_two") return Valuation::near_two(field(j, "s").get<std::size_t>());
  if (type == "scaled") {
    return Valuation::scaled(valuation_from_json(field(j, "inner")),
                             rational_from_json(field(j, "factor")));
  }
  if (type == "restricted") {
    return Valuation::restricted(valuation_from_json(field(j, "inner")),
                                 field(j, "kept").get<std::vector<std::size_t>>());
  }
  throw std::invalid_argument("unknown valuation type \"" + type + "\"");
}

Json instance_to_json(const Instance& inst) {
  Json out;
  out["m"] = inst.m;
  out["agents"] = Json::array();
  for (const Agent& a : inst.agents) {
    out["agents"].push_back({{"id", a.id}, {"valuation", valuation_to_json(a.valuation)}});
  }
  return out;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.m = field(j, "m").get<std::size_t>();
  for (const Json& a : field(j, "agents")) {
    inst.agents.push_back(Agent{field(a, "id").get<std::string>(), valuation_from_json(field(a, "valuation"))});
  }
  inst.validate();
  return inst;
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(load_json(path));
  } catch (const Json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

Json solution_to_json(const FractionalSolution& sol) {
  Json out;
  out["num_agents"] = sol.num_agents;
  out["num_items"] = sol.num_items;
  out["entries"] = Json::array();
  for (const FractionalEntry& e : sol.entries) {
    out["entries"].push_back(
        {{"agent", e.agent}, {"bundle", items_to_json(e.bundle)}, {"weight", rational_to_json(e.weight)}});
  }
  return out;
}

FractionalSolution solution_from_json(const Json& j) {
  FractionalSolution sol;
  sol.num_agents = field(j, "num_agents").get<std::size_t>();
  sol.num_items = field(j, "num_items").get<std::size_t>();
  for (const Json& e : field(j, "entries")) {
    sol.entries.push_back(FractionalEntry{field(e, "agent").get<std::size_t>(),
                                          items_from_json(field(e, "bundle"), sol.num_items),
                                          rational_from_json(field(e, "weight"))});
  }
  return sol;
}

Json mms_to_json(const Instance& inst, const std::vector<MmsResult>& results) {
  Json out = Json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    Json partition = Json::array();
    for (const ItemSet& bundle : results[i].partition) partition.push_back(items_to_json(bundle));
    out.push_back({{"agent", inst.agents[i].id},
                   {"mms", rational_to_json(results[i].value)},
                   {"partition", partition}});
  }
  return out;
}

Json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  Json out;
  out["t"] = alloc.t;
  out["threshold"] = rational_to_json(alloc.threshold);
  out["agents"] = Json::array();
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const AgentOutcome& o = alloc.outcomes[i];
    Json agent{{"id", inst.agents[i].id},
               {"items", items_to_json(alloc.bundles[i])},
               {"value", rational_to_json(o.value)},
               {"mms", rational_to_json(o.mms)},
               {"ratio", o.ratio ? rational_to_json(*o.ratio) : Json(nullptr)},
               {"preprocessed", o.preprocessed}};
    if (o.copy1_half_mms) agent["copy1_half_mms"] = *o.copy1_half_mms;
    out["agents"].push_back(std::move(agent));
  }
  out["pool"] = items_to_json(alloc.pool);
  out["preprocessed"] = Json::array();
  for (const PreprocessAssignment& a : alloc.preprocessed) {
    out["preprocessed"].push_back({{"agent", inst.agents[a.agent].id}, {"item", a.item}});
  }
  const std::vector<std::string> problems = check_allocation_invariants(alloc, inst.m);
  out["invariants_ok"] = problems.empty();
  if (!problems.empty()) out["invariant_violations"] = problems;
  return out;
}

std::string allocation_to_csv(const Instance& inst, const Allocation& alloc) {
  std::ostringstream out;
  out << "agent,items,value,mms,ratio,preprocessed\n";
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const AgentOutcome& o = alloc.outcomes[i];
    out << inst.agents[i].id << ',';
    bool first = true;
    for (std::size_t e : alloc.bundles[i].items()) {
      out << (first ? "" : ";") << e;
      first = false;
    }
    out << ',' << to_string(o.value) << ',' << to_string(o.mms) << ','
        << (o.ratio ? to_string(*o.ratio) : std::string("NA")) << ','
        << (o.preprocessed ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace mmsalloc
