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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmsalloc/allocation.hpp"
#include "mmsalloc/concentration.hpp"
#include "mmsalloc/rational.hpp"
#include "mmsalloc/rng.hpp"
#include "mmsalloc/valuation.hpp"

namespace mmsalloc {

enum class ValuationClass { kAdditive, kXos, kCoverage, kTable };

std::string_view to_string(ValuationClass cls);
ValuationClass parse_valuation_class(std::string_view name);

struct CorpusSpec {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (n, m)
  std::vector<ValuationClass> classes;
  std::size_t count_per_cell = 1;

  // n >= 1, 1 <= m <= kMaxMmsItems, at least one class, count >= 1.
  void validate() const;
  // n in {2, 3, 4, 8}, m in {8..12}, all four classes, one instance per cell.
  static CorpusSpec pinned(std::uint64_t seed = 0);
};

struct CorpusInstance {
  std::string id;
  ValuationClass cls;
  Instance instance;
};

// Deterministic in the spec: cell c, copy k draws from stream_seed(seed, .).
std::vector<CorpusInstance> generate_corpus(const CorpusSpec& spec);

// One valuation of the class over m items. Weights are multiples of 1/1000
// in [0, 1]; xos takes three clauses; coverage uses 2m ground elements;
// table is a capped max of three additive clauses, scaled so v(S) = 1.
Valuation random_valuation(ValuationClass cls, std::size_t m, Rng& rng);

// Subadditive closure of a random monotone integer table (m <= 12):
// v(S) = min over partitions of S of the summed base values. Monotone and
// subadditive, and generally not XOS.
Valuation random_subadditive_table(std::size_t m, Rng& rng);

// Per-item probabilities k/8, k uniform in 0..8.
SampleSpec random_sample_spec(std::size_t m, Rng& rng);

// n uniform in 1..max_n, coordinate probabilities k/8 with k in 1..7, and q
// families. Each family is either one to three uniform points (possibly
// repeated) or holds every point with probability 2^-j, j uniform in 1..n,
// and at least one point.
TalagrandInput random_talagrand_input(std::size_t max_n, std::size_t q, Rng& rng);

inline constexpr std::size_t kHistogramBins = 11;

struct TrialStats {
  std::string instance_id;
  std::size_t n = 0;
  std::size_t m = 0;
  int t = 0;
  Rational threshold;       // 4 / (23 t)
  double guarantee = 0.0;   // 1 / (14 log n)
  std::size_t trials = 0;

  // Per agent. An agent with MMS 0 counts as a success everywhere.
  std::vector<bool> rated;  // MMS > 0
  std::vector<std::size_t> success_threshold;
  std::vector<std::size_t> success_guarantee;
  std::vector<std::size_t> success_half;
  // Trials where every agent reached the guarantee ratio.
  std::size_t full_success = 0;
  // Minimum ratio over rated agents: bin floor(10 r) for r < 1, bin 10 for
  // r >= 1 or no rated agent.
  std::array<std::size_t, kHistogramBins> min_ratio_histogram{};
  // Per agent: trials that reached rounding, and those whose copy-1 bundle
  // was worth half the MMS.
  std::vector<std::size_t> lemma1_hits;
  std::vector<std::size_t> lemma1_totals;
  std::size_t invariant_violations = 0;

  // Adds counts; both sides must describe the same instance and parameters.
  void merge(const TrialStats& other);
  bool operator==(const TrialStats&) const = default;

  // Failures at 4/(23t) over rated agents and trials; 0 with no rated agent.
  double per_agent_fail_rate() const;
  double full_success_rate() const;
  // Empty when no agent ever reached rounding.
  std::optional<double> lemma1_monitor() const;
};

// Runs `trials` allocations with seeds stream_seed(params.seed, i), split
// over `shards` threads. The result does not depend on `shards`.
TrialStats run_trials(const Instance& inst, const AlgoParams& params, std::size_t trials,
                      std::size_t shards = 1, std::string instance_id = {});

inline constexpr std::string_view kReportHeader =
    "instance_id,n,m,t,threshold,per_agent_fail_rate,bound_34_pow_t,full_success_rate,"
    "lemma1_monitor";

std::string report_csv(const std::vector<TrialStats>& stats);
// Success rate at 4/(23t) against t, with the (3/4)^t reference curve.
std::string report_svg(const std::vector<TrialStats>& stats);

// Writes report.csv (and success_vs_t.svg) into out_dir, creating it.
// Throws std::runtime_error when a file cannot be written.
void emit_report(const std::vector<TrialStats>& stats, const std::filesystem::path& out_dir,
                 bool with_svg = false);

}  // namespace mmsalloc
