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

#include "mmsalloc/item_set.hpp"
#include "mmsalloc/mms.hpp"
#include "mmsalloc/rational.hpp"
#include "mmsalloc/rng.hpp"
#include "mmsalloc/valuation.hpp"

namespace mmsalloc {

struct Agent {
  std::string id;
  Valuation valuation;
};

struct Instance {
  std::size_t m = 0;
  std::vector<Agent> agents;

  std::size_t n() const { return agents.size(); }
  // Throws std::invalid_argument unless n >= 1 and every valuation has arity m.
  void validate() const;
};

// How one copy of the configuration LP is rounded to disjoint bundles.
enum class RoundingStrategy {
  // Each agent draws one bundle by weight; a contested item goes to a
  // uniformly random requester, independently per item.
  kUniformRequester,
  // Each agent draws one bundle by weight; a uniformly random agent order is
  // drawn and a contested item goes to its earliest requester.
  kRandomPriority,
};

std::string_view to_string(RoundingStrategy strategy);
RoundingStrategy parse_rounding_strategy(std::string_view name);

// Number of copies: ceil((56/23) log_b n) for n >= 2, and 1 for n = 1.
int compute_t(std::size_t n, double log_base = 2.0);

// 4 / (23 t).
Rational preprocessing_threshold(int t);

// 1 / (14 log_b n); 0 for n = 1, where the guarantee is vacuous.
double guarantee_ratio(std::size_t n, double log_base = 2.0);

struct AlgoParams {
  int t = 1;
  Rational threshold = Rational(4, 23);
  double log_base = 2.0;
  std::uint64_t seed = 0;
  RoundingStrategy strategy = RoundingStrategy::kUniformRequester;

  // t from compute_t(n) unless overridden; threshold always 4/(23t).
  static AlgoParams for_agents(std::size_t n, std::uint64_t seed = 0,
                               std::optional<int> t_override = std::nullopt,
                               double log_base = 2.0,
                               RoundingStrategy strategy = RoundingStrategy::kUniformRequester);
  void validate() const;
};

struct PreprocessAssignment {
  std::size_t agent;
  std::size_t item;
  bool operator==(const PreprocessAssignment&) const = default;
};

struct PreprocessResult {
  // In original agent and item indices.
  std::vector<PreprocessAssignment> assignments;
  // Remaining agents over remaining items, with every agent whose MMS in the
  // reduced instance exceeds one rescaled back to one.
  Instance reduced;
  std::vector<std::size_t> agent_map;  // reduced agent -> original agent
  std::vector<std::size_t> item_map;   // reduced item -> original item
};

// While some remaining agent values some remaining item strictly above the
// threshold, give that item to that agent and drop both. Ties: lowest agent
// index, then highest value, then lowest item index.
PreprocessResult preprocess(const Instance& inst, const Rational& threshold);

struct FractionalEntry {
  std::size_t agent;
  ItemSet bundle;
  Rational weight;
};

// Sparse solution of the configuration LP: x[agent, bundle] = weight.
struct FractionalSolution {
  std::size_t num_agents = 0;
  std::size_t num_items = 0;
  std::vector<FractionalEntry> entries;
};

// x[i, S] = 1/n for every bundle S of agent i's MMS partition.
FractionalSolution encode_mms_lp(const Instance& inst, const std::vector<MmsResult>& partitions);

struct LpViolation {
  enum class Kind { kNegativeWeight, kAgentCapacity, kItemCapacity, kBadIndex };
  Kind kind;
  std::size_t index;  // entry, agent or item, depending on kind
  Rational total;
  std::string to_string() const;
};

// Empty iff weights are non-negative and every agent and item constraint
// sums to at most one.
std::vector<LpViolation> check_feasible(const FractionalSolution& sol);

// One rounded copy: bundles[agent], pairwise disjoint; empty when the agent
// drew no bundle.
std::vector<ItemSet> round_one_copy(const FractionalSolution& sol, Rng& rng,
                                    RoundingStrategy strategy);

struct TentativeAllocation {
  std::size_t num_agents = 0;
  std::size_t num_items = 0;
  // copies[k][agent]: the agent's bundle in copy k.
  std::vector<std::vector<ItemSet>> copies;

  // m(e): number of copies in which some agent holds e.
  std::vector<int> multiplicity() const;
  // m_i^k(e): occurrences of e among agent i's first k bundles.
  int prefix_occurrences(std::size_t agent, std::size_t k, std::size_t item) const;
  // Union of the agent's bundles over all copies.
  ItemSet tentative_bundle(std::size_t agent) const;
};

TentativeAllocation tentative_allocate(const FractionalSolution& sol, int t, Rng& rng,
                                       RoundingStrategy strategy);

struct AgentOutcome {
  Rational value;                 // in the agent's original valuation
  Rational mms;                   // original MMS
  std::optional<Rational> ratio;  // value / mms; empty when mms == 0
  bool preprocessed = false;
  // Whether the agent's copy-1 bundle was worth at least half her (reduced,
  // rescaled) MMS; empty for agents that never reached rounding.
  std::optional<bool> copy1_half_mms;
};

struct Allocation {
  std::vector<ItemSet> bundles;  // per agent
  ItemSet pool;                  // unallocated items
  std::vector<PreprocessAssignment> preprocessed;
  std::vector<AgentOutcome> outcomes;
  int t = 0;
  Rational threshold;
};

// For each item held in m(e) >= 1 copies, pick one copy uniformly and give
// the item to its holder; items with m(e) = 0 go to the pool. Fills bundles
// and pool only.
Allocation resolve_uniform(const TentativeAllocation& tent, Rng& rng);

// tentative bundle of copy k intersected with the agent's final bundle.
std::vector<ItemSet> resolved_bundles(const TentativeAllocation& tent, const Allocation& alloc,
                                      std::size_t agent);

// The seed-independent part of the pipeline: normalization, preprocessing,
// MMS partitions of the reduced instance and their LP encoding.
struct PreparedInstance {
  Instance instance;
  AlgoParams params;
  std::vector<Rational> mms;  // original MMS per agent
  PreprocessResult pre;
  std::vector<Rational> reduced_mms;  // per reduced agent, after rescaling
  FractionalSolution lp;
};

PreparedInstance prepare_allocation(const Instance& inst, const AlgoParams& params);

// Rounds t copies, resolves contention and fills the diagnostics.
Allocation sample_allocation(const PreparedInstance& prepared, std::uint64_t seed);

// prepare_allocation + sample_allocation with params.seed.
Allocation allocate(const Instance& inst, const AlgoParams& params);

// Empty iff bundles are pairwise disjoint, disjoint from the pool, and
// bundles plus pool cover the universe.
std::vector<std::string> check_allocation_invariants(const Allocation& alloc, std::size_t m);

}  // namespace mmsalloc
