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

#include "mmsalloc/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmsalloc {

void Instance::validate() const {
  if (agents.empty()) throw std::invalid_argument("instance: needs at least one agent");
  for (const Agent& a : agents) {
    if (a.valuation.arity() != m) {
      throw std::invalid_argument("instance: agent '" + a.id + "' has a valuation over " +
                                  std::to_string(a.valuation.arity()) + " items, expected " +
                                  std::to_string(m));
    }
  }
}

std::string_view to_string(RoundingStrategy strategy) {
  switch (strategy) {
    case RoundingStrategy::kUniformRequester: return "uniform-requester";
    case RoundingStrategy::kRandomPriority: return "random-priority";
  }
  return "unknown";
}

RoundingStrategy parse_rounding_strategy(std::string_view name) {
  if (name == "uniform-requester") return RoundingStrategy::kUniformRequester;
  if (name == "random-priority") return RoundingStrategy::kRandomPriority;
  throw std::invalid_argument("unknown rounding strategy '" + std::string(name) + "'");
}

int compute_t(std::size_t n, double log_base) {
  if (n < 1) throw std::invalid_argument("compute_t: n must be at least 1");
  if (!(log_base > 1.0)) throw std::invalid_argument("compute_t: log base must exceed 1");
  if (n == 1) return 1;
  const double x = 56.0 / 23.0 * std::log(static_cast<double>(n)) / std::log(log_base);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(x));
}

Rational preprocessing_threshold(int t) {
  if (t < 1) throw std::invalid_argument("preprocessing_threshold: t must be positive");
  return make_rational(4, 23L * t);
}

double guarantee_ratio(std::size_t n, double log_base) {
  if (n < 1) throw std::invalid_argument("guarantee_ratio: n must be at least 1");
  if (n == 1) return 0.0;
  return 1.0 / (14.0 * std::log(static_cast<double>(n)) / std::log(log_base));
}

AlgoParams AlgoParams::for_agents(std::size_t n, std::uint64_t seed, std::optional<int> t_override,
                                  double log_base, RoundingStrategy strategy) {
  AlgoParams p;
  p.t = t_override ? *t_override : compute_t(n, log_base);
  p.threshold = preprocessing_threshold(p.t);
  p.log_base = log_base;
  p.seed = seed;
  p.strategy = strategy;
  p.validate();
  return p;
}

void AlgoParams::validate() const {
  if (t < 1) throw std::invalid_argument("params: t must be positive");
  if (threshold != preprocessing_threshold(t)) {
    throw std::invalid_argument("params: threshold must equal 4/(23t)");
  }
  if (!(log_base > 1.0)) throw std::invalid_argument("params: log base must exceed 1");
}

PreprocessResult preprocess(const Instance& inst, const Rational& threshold) {
  const std::size_t n = inst.n();
  const std::size_t m = inst.m;
  std::vector<std::vector<Rational>> single(n);
  for (std::size_t i = 0; i < n; ++i) {
    single[i].reserve(m);
    for (std::size_t e = 0; e < m; ++e) single[i].push_back(inst.agents[i].valuation.item_value(e));
  }

  PreprocessResult out;
  std::vector<char> agent_alive(n, 1), item_alive(m, 1);
  for (;;) {
    bool assigned = false;
    for (std::size_t i = 0; i < n && !assigned; ++i) {
      if (!agent_alive[i]) continue;
      std::size_t best = m;
      for (std::size_t e = 0; e < m; ++e) {
        if (item_alive[e] && single[i][e] > threshold && (best == m || single[i][e] > single[i][best])) {
          best = e;
        }
      }
      if (best != m) {
        out.assignments.push_back({i, best});
        agent_alive[i] = 0;
        item_alive[best] = 0;
        assigned = true;
      }
    }
    if (!assigned) break;
  }

  for (std::size_t e = 0; e < m; ++e) {
    if (item_alive[e]) out.item_map.push_back(e);
  }
  out.reduced.m = out.item_map.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!agent_alive[i]) continue;
    out.agent_map.push_back(i);
    out.reduced.agents.push_back(
        {inst.agents[i].id, Valuation::restricted(inst.agents[i].valuation, out.item_map)});
  }
  // Removing agents together with items never lowers the others' MMS; where
  // it rose above one, scale back down.
  const std::size_t reduced_n = out.reduced.agents.size();
  for (Agent& a : out.reduced.agents) {
    const Rational mms = exact_mms(a.valuation, out.reduced.m, reduced_n).value;
    if (mms > 1) a.valuation = Valuation::scaled(a.valuation, Rational(1 / mms));
  }
  return out;
}

FractionalSolution encode_mms_lp(const Instance& inst, const std::vector<MmsResult>& partitions) {
  const std::size_t n = inst.n();
  if (partitions.size() != n) {
    throw std::invalid_argument("encode_mms_lp: " + std::to_string(partitions.size()) +
                                " partitions for " + std::to_string(n) + " agents");
  }
  FractionalSolution sol;
  sol.num_agents = n;
  sol.num_items = inst.m;
  const Rational weight(1, static_cast<unsigned long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (partitions[i].partition.size() != n) {
      throw std::invalid_argument("encode_mms_lp: partition of agent " + std::to_string(i) +
                                  " does not have n bundles");
    }
    for (const ItemSet& bundle : partitions[i].partition) {
      if (bundle.universe_size() != inst.m) {
        throw std::invalid_argument("encode_mms_lp: bundle over the wrong universe");
      }
      sol.entries.push_back({i, bundle, weight});
    }
  }
  return sol;
}

std::string LpViolation::to_string() const {
  const std::string amount = mmsalloc::to_string(total);
  switch (kind) {
    case Kind::kNegativeWeight:
      return "entry " + std::to_string(index) + " has negative weight " + amount;
    case Kind::kAgentCapacity:
      return "agent " + std::to_string(index) + " weight sum " + amount + " exceeds 1";
    case Kind::kItemCapacity:
      return "item " + std::to_string(index) + " weight sum " + amount + " exceeds 1";
    case Kind::kBadIndex:
      return "entry " + std::to_string(index) + " refers to an unknown agent or item universe";
  }
  return "unknown violation";
}

std::vector<LpViolation> check_feasible(const FractionalSolution& sol) {
  std::vector<LpViolation> out;
  std::vector<Rational> agent_sum(sol.num_agents), item_sum(sol.num_items);
  for (std::size_t j = 0; j < sol.entries.size(); ++j) {
    const FractionalEntry& entry = sol.entries[j];
    if (entry.agent >= sol.num_agents || entry.bundle.universe_size() != sol.num_items) {
      out.push_back({LpViolation::Kind::kBadIndex, j, entry.weight});
      continue;
    }
    if (entry.weight < 0) out.push_back({LpViolation::Kind::kNegativeWeight, j, entry.weight});
    agent_sum[entry.agent] += entry.weight;
    for (std::size_t e : entry.bundle.items()) item_sum[e] += entry.weight;
  }
  for (std::size_t i = 0; i < sol.num_agents; ++i) {
    if (agent_sum[i] > 1) out.push_back({LpViolation::Kind::kAgentCapacity, i, agent_sum[i]});
  }
  for (std::size_t e = 0; e < sol.num_items; ++e) {
    if (item_sum[e] > 1) out.push_back({LpViolation::Kind::kItemCapacity, e, item_sum[e]});
  }
  return out;
}

std::vector<ItemSet> round_one_copy(const FractionalSolution& sol, Rng& rng,
                                    RoundingStrategy strategy) {
  std::vector<std::vector<const FractionalEntry*>> by_agent(sol.num_agents);
  for (const FractionalEntry& entry : sol.entries) by_agent.at(entry.agent).push_back(&entry);

  // Draw bundle j with probability w_j and nothing with the leftover mass.
  std::vector<ItemSet> drawn(sol.num_agents, ItemSet(sol.num_items));
  for (std::size_t i = 0; i < sol.num_agents; ++i) {
    Rational remaining = 1;
    for (const FractionalEntry* entry : by_agent[i]) {
      if (remaining <= 0) break;
      if (entry->weight <= 0) continue;
      if (rng.bernoulli(Rational(entry->weight / remaining))) {
        drawn[i] = entry->bundle;
        break;
      }
      remaining -= entry->weight;
    }
  }

  std::vector<std::size_t> order;
  if (strategy == RoundingStrategy::kRandomPriority) {
    order.resize(sol.num_agents);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(std::span<std::size_t>(order));
  }

  std::vector<ItemSet> out(sol.num_agents, ItemSet(sol.num_items));
  std::vector<std::size_t> requesters;
  for (std::size_t e = 0; e < sol.num_items; ++e) {
    requesters.clear();
    for (std::size_t i = 0; i < sol.num_agents; ++i) {
      if (drawn[i].contains(e)) requesters.push_back(i);
    }
    if (requesters.empty()) continue;
    std::size_t winner = requesters.front();
    if (requesters.size() > 1) {
      if (strategy == RoundingStrategy::kUniformRequester) {
        winner = requesters[rng.uniform_below(requesters.size())];
      } else {
        for (std::size_t i : order) {
          if (drawn[i].contains(e)) {
            winner = i;
            break;
          }
        }
      }
    }
    out[winner].insert(e);
  }
  return out;
}

std::vector<int> TentativeAllocation::multiplicity() const {
  std::vector<int> out(num_items, 0);
  for (const auto& copy : copies) {
    for (const ItemSet& bundle : copy) {
      for (std::size_t e : bundle.items()) ++out[e];
    }
  }
  return out;
}

int TentativeAllocation::prefix_occurrences(std::size_t agent, std::size_t k, std::size_t item) const {
  if (k > copies.size()) throw std::out_of_range("prefix_occurrences: k exceeds copy count");
  int count = 0;
  for (std::size_t j = 0; j < k; ++j) count += copies[j].at(agent).contains(item) ? 1 : 0;
  return count;
}

ItemSet TentativeAllocation::tentative_bundle(std::size_t agent) const {
  ItemSet out(num_items);
  for (const auto& copy : copies) out |= copy.at(agent);
  return out;
}

TentativeAllocation tentative_allocate(const FractionalSolution& sol, int t, Rng& rng,
                                       RoundingStrategy strategy) {
  if (t < 1) throw std::invalid_argument("tentative_allocate: t must be positive");
  TentativeAllocation tent;
  tent.num_agents = sol.num_agents;
  tent.num_items = sol.num_items;
  for (int k = 0; k < t; ++k) tent.copies.push_back(round_one_copy(sol, rng, strategy));
  return tent;
}

Allocation resolve_uniform(const TentativeAllocation& tent, Rng& rng) {
  Allocation out;
  out.t = static_cast<int>(tent.copies.size());
  out.bundles.assign(tent.num_agents, ItemSet(tent.num_items));
  out.pool = ItemSet(tent.num_items);
  std::vector<std::size_t> holders;
  for (std::size_t e = 0; e < tent.num_items; ++e) {
    holders.clear();
    for (const auto& copy : tent.copies) {
      for (std::size_t i = 0; i < copy.size(); ++i) {
        if (copy[i].contains(e)) holders.push_back(i);
      }
    }
    if (holders.empty()) {
      out.pool.insert(e);
      continue;
    }
    out.bundles[holders[rng.uniform_below(holders.size())]].insert(e);
  }
  return out;
}

std::vector<ItemSet> resolved_bundles(const TentativeAllocation& tent, const Allocation& alloc,
                                      std::size_t agent) {
  std::vector<ItemSet> out;
  for (const auto& copy : tent.copies) out.push_back(copy.at(agent) & alloc.bundles.at(agent));
  return out;
}

PreparedInstance prepare_allocation(const Instance& inst, const AlgoParams& params) {
  inst.validate();
  params.validate();
  PreparedInstance prep;
  prep.instance = inst;
  prep.params = params;
  const std::size_t n = inst.n();
  if (n == 1) {
    prep.mms.push_back(inst.agents[0].valuation.evaluate(ItemSet::full(inst.m)));
    return prep;
  }

  // Agents with MMS zero are satisfied by any bundle and sit out.
  Instance normalized;
  normalized.m = inst.m;
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < n; ++i) {
    prep.mms.push_back(exact_mms(inst.agents[i].valuation, inst.m, n).value);
    if (prep.mms.back() > 0) {
      positive.push_back(i);
      normalized.agents.push_back(
          {inst.agents[i].id, Valuation::scaled(inst.agents[i].valuation, Rational(1 / prep.mms.back()))});
    }
  }

  prep.pre = preprocess(normalized, params.threshold);
  for (auto& a : prep.pre.assignments) a.agent = positive[a.agent];
  for (auto& i : prep.pre.agent_map) i = positive[i];

  const Instance& reduced = prep.pre.reduced;
  std::vector<MmsResult> partitions;
  for (const Agent& a : reduced.agents) {
    partitions.push_back(exact_mms(a.valuation, reduced.m, reduced.n()));
    prep.reduced_mms.push_back(partitions.back().value);
  }
  if (!reduced.agents.empty()) prep.lp = encode_mms_lp(reduced, partitions);
  return prep;
}

Allocation sample_allocation(const PreparedInstance& prep, std::uint64_t seed) {
  const Instance& inst = prep.instance;
  const std::size_t n = inst.n();
  const std::size_t m = inst.m;
  Allocation out;
  out.t = prep.params.t;
  out.threshold = prep.params.threshold;
  out.bundles.assign(n, ItemSet(m));
  out.outcomes.resize(n);

  if (n == 1) {
    out.bundles[0] = ItemSet::full(m);
  } else {
    out.preprocessed = prep.pre.assignments;
    for (const auto& a : prep.pre.assignments) out.bundles[a.agent].insert(a.item);

    const Instance& reduced = prep.pre.reduced;
    if (!reduced.agents.empty()) {
      Rng rng(seed);
      const TentativeAllocation tent =
          tentative_allocate(prep.lp, prep.params.t, rng, prep.params.strategy);
      const Allocation resolved = resolve_uniform(tent, rng);
      for (std::size_t r = 0; r < reduced.n(); ++r) {
        const std::size_t agent = prep.pre.agent_map[r];
        for (std::size_t e : resolved.bundles[r].items()) out.bundles[agent].insert(prep.pre.item_map[e]);
        if (prep.reduced_mms[r] > 0) {
          const Rational copy1 = reduced.agents[r].valuation.evaluate(tent.copies[0][r]);
          out.outcomes[agent].copy1_half_mms = 2 * copy1 >= prep.reduced_mms[r];
        }
      }
    }
    for (const auto& a : prep.pre.assignments) out.outcomes[a.agent].preprocessed = true;
  }

  out.pool = ItemSet::full(m);
  for (const ItemSet& b : out.bundles) out.pool -= b;
  for (std::size_t i = 0; i < n; ++i) {
    AgentOutcome& o = out.outcomes[i];
    o.value = inst.agents[i].valuation.evaluate(out.bundles[i]);
    o.mms = prep.mms[i];
    if (o.mms > 0) o.ratio = Rational(o.value / o.mms);
  }
  return out;
}

Allocation allocate(const Instance& inst, const AlgoParams& params) {
  return sample_allocation(prepare_allocation(inst, params), params.seed);
}

std::vector<std::string> check_allocation_invariants(const Allocation& alloc, std::size_t m) {
  std::vector<std::string> out;
  ItemSet seen(m);
  for (std::size_t i = 0; i < alloc.bundles.size(); ++i) {
    const ItemSet& b = alloc.bundles[i];
    if (b.universe_size() != m) {
      out.push_back("bundle " + std::to_string(i) + " is over the wrong universe");
      continue;
    }
    if (b.intersects(seen)) out.push_back("bundle " + std::to_string(i) + " overlaps an earlier bundle");
    seen |= b;
  }
  if (alloc.pool.universe_size() != m) {
    out.push_back("pool is over the wrong universe");
    return out;
  }
  if (alloc.pool.intersects(seen)) out.push_back("pool overlaps an allocated bundle");
  if ((seen | alloc.pool) != ItemSet::full(m)) out.push_back("bundles and pool do not cover the universe");
  return out;
}

}  // namespace mmsalloc
