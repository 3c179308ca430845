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

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

#include "mmsalloc/harness.hpp"

namespace mmsalloc {

void TrialStats::merge(const TrialStats& other) {
  if (n != other.n || m != other.m || t != other.t || threshold != other.threshold) {
    throw std::invalid_argument("TrialStats::merge: statistics of different runs");
  }
  trials += other.trials;
  for (std::size_t i = 0; i < n; ++i) {
    success_threshold[i] += other.success_threshold[i];
    success_guarantee[i] += other.success_guarantee[i];
    success_half[i] += other.success_half[i];
    lemma1_hits[i] += other.lemma1_hits[i];
    lemma1_totals[i] += other.lemma1_totals[i];
  }
  full_success += other.full_success;
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    min_ratio_histogram[b] += other.min_ratio_histogram[b];
  }
  invariant_violations += other.invariant_violations;
}

double TrialStats::per_agent_fail_rate() const {
  std::size_t rated_agents = 0;
  std::size_t successes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rated[i]) continue;
    ++rated_agents;
    successes += success_threshold[i];
  }
  if (rated_agents == 0 || trials == 0) return 0.0;
  const double total = static_cast<double>(rated_agents * trials);
  return (total - static_cast<double>(successes)) / total;
}

double TrialStats::full_success_rate() const {
  return trials == 0 ? 0.0 : static_cast<double>(full_success) / static_cast<double>(trials);
}

std::optional<double> TrialStats::lemma1_monitor() const {
  std::size_t hits = 0;
  std::size_t totals = 0;
  for (std::size_t i = 0; i < n; ++i) {
    hits += lemma1_hits[i];
    totals += lemma1_totals[i];
  }
  if (totals == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(totals);
}

namespace {

TrialStats empty_stats(const PreparedInstance& prep, std::string id) {
  TrialStats s;
  s.instance_id = std::move(id);
  s.n = prep.instance.n();
  s.m = prep.instance.m;
  s.t = prep.params.t;
  s.threshold = prep.params.threshold;
  s.guarantee = guarantee_ratio(s.n, prep.params.log_base);
  s.rated.resize(s.n);
  for (std::size_t i = 0; i < s.n; ++i) s.rated[i] = prep.mms[i] > 0;
  s.success_threshold.assign(s.n, 0);
  s.success_guarantee.assign(s.n, 0);
  s.success_half.assign(s.n, 0);
  s.lemma1_hits.assign(s.n, 0);
  s.lemma1_totals.assign(s.n, 0);
  return s;
}

void record(TrialStats& s, const Allocation& alloc) {
  ++s.trials;
  if (!check_allocation_invariants(alloc, s.m).empty()) ++s.invariant_violations;
  bool all_reach_guarantee = true;
  std::optional<Rational> min_ratio;
  for (std::size_t i = 0; i < s.n; ++i) {
    const AgentOutcome& o = alloc.outcomes[i];
    if (!o.ratio) {
      ++s.success_threshold[i];
      ++s.success_guarantee[i];
      ++s.success_half[i];
    } else {
      const Rational& r = *o.ratio;
      if (r >= s.threshold) ++s.success_threshold[i];
      if (r.get_d() >= s.guarantee) {
        ++s.success_guarantee[i];
      } else {
        all_reach_guarantee = false;
      }
      if (2 * r >= 1) ++s.success_half[i];
      if (!min_ratio || r < *min_ratio) min_ratio = r;
    }
    if (o.copy1_half_mms) {
      ++s.lemma1_totals[i];
      if (*o.copy1_half_mms) ++s.lemma1_hits[i];
    }
  }
  if (all_reach_guarantee) ++s.full_success;
  std::size_t bin = kHistogramBins - 1;
  if (min_ratio && *min_ratio < 1) {
    bin = static_cast<std::size_t>(mpz_class(*min_ratio * 10).get_ui());
  }
  ++s.min_ratio_histogram[bin];
}

}  // namespace

TrialStats run_trials(const Instance& inst, const AlgoParams& params, std::size_t trials,
                      std::size_t shards, std::string instance_id) {
  if (trials < 1) throw std::invalid_argument("run_trials: trials must be at least 1");
  if (shards < 1) throw std::invalid_argument("run_trials: shards must be at least 1");
  const PreparedInstance prep = prepare_allocation(inst, params);
  shards = std::min(shards, trials);

  std::vector<TrialStats> parts(shards, empty_stats(prep, instance_id));
  std::vector<std::exception_ptr> errors(shards);
  auto run_range = [&](std::size_t shard) {
    const std::size_t begin = trials * shard / shards;
    const std::size_t end = trials * (shard + 1) / shards;
    try {
      for (std::size_t i = begin; i < end; ++i) {
        record(parts[shard], sample_allocation(prep, stream_seed(params.seed, i)));
      }
    } catch (...) {
      errors[shard] = std::current_exception();
    }
  };
  if (shards == 1) {
    run_range(0);
  } else {
    std::vector<std::thread> workers;
    for (std::size_t shard = 0; shard < shards; ++shard) workers.emplace_back(run_range, shard);
    for (std::thread& w : workers) w.join();
  }
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  TrialStats out = empty_stats(prep, std::move(instance_id));
  for (const TrialStats& part : parts) out.merge(part);
  return out;
}

}  // namespace mmsalloc
