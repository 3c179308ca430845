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
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "mmsalloc/concentration.hpp"
#include "mmsalloc/harness.hpp"
#include "mmsalloc/verbs.hpp"

namespace mmsalloc {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string items_csv(const std::vector<std::pair<int, Rational>>& witness) {
  std::string out;
  for (const auto& [level, mass] : witness) {
    if (!out.empty()) out += ';';
    out += "h" + std::to_string(level) + "=" + to_string(mass);
  }
  return out;
}

VerbReport proposition(const VerbOptions& o) {
  const std::size_t max_m = o.m.value_or(10);
  if (max_m < 1 || max_m > 10) throw std::invalid_argument("proposition: --m must be in [1, 10]");
  VerbReport r;
  std::ostringstream csv;
  csv << "case,m,expectation,median,max_item,bound,holds\n";
  r.json["cases"] = Json::array();
  for (std::size_t i = 0; i < o.trials; ++i) {
    Rng rng(stream_seed(o.seed, i));
    const std::size_t m = 1 + rng.uniform_below(max_m);
    const Valuation v = random_subadditive_table(m, rng);
    const UpperBoundReport rep = check_upper_bound_prop(v, random_sample_spec(m, rng));
    r.holds = r.holds && rep.holds;
    csv << i << ',' << m << ',' << to_string(rep.expectation) << ',' << to_string(rep.median) << ','
        << to_string(rep.max_item) << ',' << to_string(rep.bound) << ',' << yes_no(rep.holds) << '\n';
    r.json["cases"].push_back({{"m", m},
                               {"expectation", to_string(rep.expectation)},
                               {"median", to_string(rep.median)},
                               {"max_item", to_string(rep.max_item)},
                               {"bound", to_string(rep.bound)},
                               {"holds", rep.holds}});
  }
  r.csv = csv.str();
  return r;
}

VerbReport talagrand(const VerbOptions& o) {
  const std::size_t max_n = o.m.value_or(10);
  if (max_n < 1 || max_n > kMaxCubeDimension) {
    throw std::invalid_argument("talagrand: --m must be in [1, 12]");
  }
  VerbReport r;
  std::ostringstream csv;
  csv << "case,n,q,sum_lhs,sum_rhs,sum_holds,tails_hold\n";
  r.json["cases"] = Json::array();
  for (std::size_t i = 0; i < o.trials; ++i) {
    Rng rng(stream_seed(o.seed, i));
    const std::size_t q = o.q.value_or(1 + i % 3);
    const TalagrandInput in = random_talagrand_input(max_n, q, rng);
    const TalagrandReport rep = check_talagrand_corollary(in);
    r.holds = r.holds && rep.holds();
    const std::string rhs = rep.sum_rhs ? to_string(*rep.sum_rhs) : "inf";
    csv << i << ',' << in.n << ',' << q << ',' << to_string(rep.sum_lhs) << ',' << rhs << ','
        << yes_no(rep.sum_holds) << ',' << yes_no(rep.tails_hold) << '\n';
    r.json["cases"].push_back({{"n", in.n},
                               {"q", q},
                               {"sum_lhs", to_string(rep.sum_lhs)},
                               {"sum_rhs", rhs},
                               {"sum_holds", rep.sum_holds},
                               {"tails_hold", rep.tails_hold}});
  }
  r.csv = csv.str();
  return r;
}

VerbReport schechtman(const VerbOptions& o) {
  const std::size_t n = o.m.value_or(6);
  const std::size_t q = o.q.value_or(2);
  if (n < 1 || n > kMaxCubeDimension) throw std::invalid_argument("schechtman: --m must be in [1, 12]");
  if (q < 1) throw std::invalid_argument("schechtman: --q must be positive");
  const Valuation f = Valuation::additive(std::vector<Rational>(n, Rational(1)));
  const SampleSpec measure = SampleSpec::uniform(n, Rational(1, 2));
  const Rational median = exact_value_distribution(f, measure).median;
  // c_i must be positive; a zero median (n = 1) is lifted to 1.
  const std::vector<Rational> c(q, median > 0 ? median : Rational(1));

  VerbReport r;
  std::ostringstream csv;
  csv << "case,k,level,tail_probability,bound,holds,covering_holds\n";
  r.json["cases"] = Json::array();
  for (int k = 0; k <= 2; ++k) {
    const SchechtmanReport rep = check_schechtman_tail(f, measure, c, k, Rational(1));
    const bool ok = rep.holds && rep.covering_holds;
    r.holds = r.holds && ok;
    const std::string bound = rep.bound ? to_string(*rep.bound) : "inf";
    csv << "unit-additive," << k << ',' << to_string(rep.level) << ','
        << to_string(rep.tail_probability) << ',' << bound << ',' << yes_no(rep.holds) << ','
        << yes_no(rep.covering_holds) << '\n';
    r.json["cases"].push_back({{"k", k},
                               {"level", to_string(rep.level)},
                               {"tail_probability", to_string(rep.tail_probability)},
                               {"bound", bound},
                               {"holds", rep.holds},
                               {"covering_holds", rep.covering_holds}});
  }
  // Pr[f <= M] = 1/2 and Pr[f <= 2M] = 2/3, bounded two ways at k = 1.
  const Rational two_sets = schechtman_bound(1, {Rational(1, 2), Rational(2, 3)});
  const Rational three_sets = schechtman_bound(1, {Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  const bool remark = two_sets == Rational(3, 4) && three_sets == Rational(8, 9);
  r.holds = r.holds && remark;
  csv << "c=(M;2M),1,,," << to_string(two_sets) << ',' << yes_no(two_sets == Rational(3, 4)) << ",\n";
  csv << "c=(M;M;M),1,,," << to_string(three_sets) << ',' << yes_no(three_sets == Rational(8, 9))
      << ",\n";
  r.json["remark"] = {{"two_sets", to_string(two_sets)}, {"three_sets", to_string(three_sets)}};
  r.csv = csv.str();
  return r;
}

VerbReport eh_bound(const VerbOptions& o) {
  const Rational pr_a = o.pr_a.value_or(Rational(1, 2));
  const Rational budget = o.budget.value_or(Rational(4));
  const EhBound bound = max_EH_bound(pr_a, budget);
  VerbReport r;
  r.csv = "pr_a,budget,maximum,witness\n" + to_string(pr_a) + ',' + to_string(budget) + ',' +
          to_string(bound.maximum) + ',' + items_csv(bound.witness) + '\n';
  Json witness = Json::object();
  for (const auto& [level, mass] : bound.witness) witness["h" + std::to_string(level)] = to_string(mass);
  r.json = {{"pr_a", to_string(pr_a)},
            {"budget", to_string(budget)},
            {"maximum", to_string(bound.maximum)},
            {"witness", witness}};
  return r;
}

VerbReport tightness(const VerbOptions& o) {
  const auto plateau = static_cast<std::int64_t>(o.m.value_or(3));
  VerbReport r;
  std::ostringstream csv;
  csv << "M,s,expectation,median,gap\n";
  r.json["cases"] = Json::array();
  double previous_gap = INFINITY;
  for (std::int64_t s : {400, 1600, 6400, 40000}) {
    if (s <= 2 * plateau) continue;
    const TightnessResult res = tightness_expectation(plateau, s);
    const double gap = 1.5 * static_cast<double>(plateau) - res.expectation;
    if (s != 40000) {
      r.holds = r.holds && gap < previous_gap;
      previous_gap = gap;
    }
    r.holds = r.holds && res.median == plateau;
    csv << plateau << ',' << s << ',' << num(res.expectation) << ',' << res.median << ',' << num(gap)
        << '\n';
    r.json["cases"].push_back(
        {{"M", plateau}, {"s", s}, {"expectation", res.expectation}, {"median", res.median}, {"gap", gap}});
  }
  r.csv = csv.str();
  return r;
}

VerbReport lower_bound(const VerbOptions& o) {
  VerbReport r;
  std::ostringstream csv;
  csv << "case,t,expectation,bound,holds,demo_mean\n";
  r.json["cases"] = Json::array();
  const std::size_t cases = std::min<std::size_t>(o.trials, 50);
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng(stream_seed(o.seed, i));
    const std::size_t m = 1 + rng.uniform_below(10);
    const Valuation v = random_subadditive_table(m, rng);
    for (int t = 1; t <= 3; ++t) {
      const LowerBoundReport rep = check_lower_bound(v, t, stream_seed(o.seed, i * 4 + t), 200);
      r.holds = r.holds && rep.holds;
      csv << i << ',' << t << ',' << to_string(rep.expectation) << ',' << to_string(rep.bound) << ','
          << yes_no(rep.holds) << ',' << num(rep.demo_mean) << '\n';
      r.json["cases"].push_back({{"m", m},
                                 {"t", t},
                                 {"expectation", to_string(rep.expectation)},
                                 {"bound", to_string(rep.bound)},
                                 {"holds", rep.holds},
                                 {"demo_mean", rep.demo_mean}});
    }
  }
  // At rate 3/4 the same statement fails for the near-two valuation.
  const std::size_t s = o.m.value_or(20);
  const RateReport rate = lower_bound_at_rate(make_near_two(s), Rational(3, 4));
  csv << "near-two-" << s << ",4/3," << to_string(rate.expectation) << ','
      << to_string(rate.scaled_value) << ',' << yes_no(rate.meets_scaled_value) << ",\n";
  r.json["counterexample"] = {{"s", s},
                              {"p", "3/4"},
                              {"expectation", to_string(rate.expectation)},
                              {"expectation_approx", rate.expectation.get_d()},
                              {"scaled_value", to_string(rate.scaled_value)},
                              {"fails_as_expected", !rate.meets_scaled_value}};
  r.holds = r.holds && !rate.meets_scaled_value;
  r.csv = csv.str();
  return r;
}

VerbReport lemma(const VerbOptions& o) {
  const int t = o.t.value_or(3);
  const std::size_t m = o.m.value_or(69);
  if (t < 1) throw std::invalid_argument("lemma: --t must be positive");
  const Valuation v = Valuation::additive(std::vector<Rational>(m, Rational(1)));
  const SampleSpec spec = SampleSpec::uniform(m, Rational(1, t));
  VerbReport r;
  std::ostringstream csv;
  csv << "mode,t,m,level,probability,floor,holds\n";
  r.json["cases"] = Json::array();
  for (EstimateMode mode : {EstimateMode::kExact, EstimateMode::kMonteCarlo}) {
    const LemmaReport rep = check_concentration_lemma(v, t, spec, o.trials, o.seed, mode);
    r.holds = r.holds && rep.holds;
    const char* name = rep.exact ? "exact" : "monte-carlo";
    csv << name << ',' << t << ',' << m << ',' << to_string(rep.level) << ',' << num(rep.probability)
        << ',' << num(rep.floor) << ',' << yes_no(rep.holds) << '\n';
    r.json["cases"].push_back({{"mode", name},
                               {"level", to_string(rep.level)},
                               {"probability", rep.probability},
                               {"floor", rep.floor},
                               {"holds", rep.holds}});
  }
  r.csv = csv.str();
  return r;
}

VerbReport discussion(const VerbOptions& o) {
  const std::size_t s = o.m.value_or(10000);
  const DiscussionResult res = discussion_example(s);
  VerbReport r;
  r.holds = res.median > 0 && res.expectation / res.median < Rational(23, 8);
  r.csv = "s,p,expectation,median\n" + std::to_string(s) + ',' + to_string(res.probability) + ',' +
          to_string(res.expectation) + ',' + std::to_string(res.median) + '\n';
  r.json = {{"s", s},
            {"p", to_string(res.probability)},
            {"expectation", to_string(res.expectation)},
            {"median", res.median}};
  return r;
}

}  // namespace

std::string verb_help(std::string_view verb) {
  if (verb == "proposition") return "E <= 3/2 M + 11/8 b on --trials random subadditive tables, m <= --m (10)";
  if (verb == "talagrand") return "sum and tail forms on --trials random inputs, n <= --m (10), q = --q or 1..3";
  if (verb == "schechtman") return "tail bound for unit additive f on {0,1}^--m (6), --q (2) sets, k = 0..2";
  if (verb == "eh-bound") return "max sum i h_i for --pr-a (1/2) and --budget (4)";
  if (verb == "tightness") return "staircase expectation at p = 1/2, M = --m (3), s up to 40000";
  if (verb == "lower-bound") return "E >= v(S)/t for t = 1..3, plus the near-two failure at p = 3/4, s = --m (20)";
  if (verb == "lemma") return "Pr[v(S') >= 8/(23t) v(S)] for --m (69) unit items, t = --t (3)";
  if (verb == "discussion") return "unit additive, s = --m (10000), p = 1.678/s";
  return {};
}

VerbReport run_concentration_verb(std::string_view verb, const VerbOptions& opts) {
  VerbReport r;
  if (verb == "proposition") r = proposition(opts);
  else if (verb == "talagrand") r = talagrand(opts);
  else if (verb == "schechtman") r = schechtman(opts);
  else if (verb == "eh-bound") r = eh_bound(opts);
  else if (verb == "tightness") r = tightness(opts);
  else if (verb == "lower-bound") r = lower_bound(opts);
  else if (verb == "lemma") r = lemma(opts);
  else if (verb == "discussion") r = discussion(opts);
  else throw std::invalid_argument("unknown concentration verb '" + std::string(verb) + "'");
  r.json["verb"] = std::string(verb);
  r.json["holds"] = r.holds;
  return r;
}

}  // namespace mmsalloc
