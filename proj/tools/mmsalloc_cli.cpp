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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "mmsalloc/allocation.hpp"
#include "mmsalloc/harness.hpp"
#include "mmsalloc/json_io.hpp"
#include "mmsalloc/mms.hpp"
#include "mmsalloc/verbs.hpp"

namespace {

using namespace mmsalloc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::size_t trials = 500;
  std::string out_dir;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

int cmd_allocate(const Globals& g, const std::string& instance_path, std::optional<int> t_override,
                 double log_base, const std::string& strategy, const std::string& format) {
  const Instance inst = load_instance(instance_path);
  const AlgoParams params = AlgoParams::for_agents(inst.n(), g.seed, t_override, log_base,
                                                   parse_rounding_strategy(strategy));
  const Allocation alloc = allocate(inst, params);
  if (format == "csv") {
    std::cout << allocation_to_csv(inst, alloc);
  } else {
    std::cout << allocation_to_json(inst, alloc).dump(2) << '\n';
  }
  return check_allocation_invariants(alloc, inst.m).empty() ? kExitPass : kExitFail;
}

int cmd_mms(const std::string& instance_path) {
  const Instance inst = load_instance(instance_path);
  std::vector<MmsResult> results;
  for (const Agent& a : inst.agents) results.push_back(exact_mms(a.valuation, inst.m, inst.n()));
  std::cout << mms_to_json(inst, results).dump(2) << '\n';
  return kExitPass;
}

int cmd_check_lp(const Globals& g, const std::string& instance_path, const std::string& solution_path) {
  const Instance inst = load_instance(instance_path);
  FractionalSolution sol;
  if (solution_path.empty()) {
    // The MMS encoding of the reduced instance the algorithm actually rounds.
    const PreparedInstance prep =
        prepare_allocation(inst, AlgoParams::for_agents(inst.n(), g.seed));
    sol = prep.lp;
  } else {
    sol = solution_from_json(load_json(solution_path));
  }
  const std::vector<LpViolation> violations = check_feasible(sol);
  Json out{{"feasible", violations.empty()}, {"entries", sol.entries.size()}};
  out["violations"] = Json::array();
  for (const LpViolation& v : violations) out["violations"].push_back(v.to_string());
  std::cout << out.dump(2) << '\n';
  return violations.empty() ? kExitPass : kExitFail;
}

int cmd_concentration(const Globals& g, const std::string& verb, VerbOptions opts,
                      const std::string& json_out) {
  opts.seed = g.seed;
  opts.trials = g.trials;
  const VerbReport report = run_concentration_verb(verb, opts);
  std::cout << report.csv;
  if (!json_out.empty()) write_text(json_out, report.json.dump(2) + "\n");
  if (!g.out_dir.empty()) {
    std::filesystem::create_directories(g.out_dir);
    write_text((std::filesystem::path(g.out_dir) / (verb + ".csv")).string(), report.csv);
    write_text((std::filesystem::path(g.out_dir) / (verb + ".json")).string(), report.json.dump(2) + "\n");
  }
  return report.holds ? kExitPass : kExitFail;
}

int cmd_bench(const Globals& g, const std::vector<std::string>& classes, std::size_t shards, bool svg) {
  CorpusSpec spec = CorpusSpec::pinned(g.seed);
  if (!classes.empty()) {
    spec.classes.clear();
    for (const std::string& name : classes) spec.classes.push_back(parse_valuation_class(name));
  }
  std::vector<TrialStats> all;
  std::size_t bad = 0;
  for (const CorpusInstance& entry : generate_corpus(spec)) {
    const AlgoParams params = AlgoParams::for_agents(entry.instance.n(), g.seed);
    TrialStats stats = run_trials(entry.instance, params, g.trials, shards, entry.id);
    if (stats.invariant_violations > 0 || stats.full_success == 0) ++bad;
    const std::optional<double> monitor = stats.lemma1_monitor();
    if (monitor && *monitor < 0.5) {
      std::cerr << "flag: " << entry.id << " copy-1 half-MMS frequency " << *monitor << " < 1/2\n";
    }
    all.push_back(std::move(stats));
  }
  const std::string dir = g.out_dir.empty() ? "." : g.out_dir;
  emit_report(all, dir, svg);
  std::cout << report_csv(all);
  return bad == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized MMS allocation for subadditive agents, with exact concentration checks"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Trials or random cases")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "Directory for report files");

  std::string instance_path;
  std::optional<int> t_override;
  double log_base = 2.0;
  std::string strategy = "uniform-requester";
  std::string format = "json";
  auto* allocate_cmd = app.add_subcommand("allocate", "Allocate the items of an instance");
  allocate_cmd->add_option("--instance", instance_path, "Instance JSON")->required()->check(CLI::ExistingFile);
  allocate_cmd->add_option("--t-override", t_override, "Number of LP copies");
  allocate_cmd->add_option("--log-base", log_base, "Logarithm base for t")->capture_default_str();
  allocate_cmd->add_option("--strategy", strategy, "Rounding strategy")
      ->check(CLI::IsMember({"uniform-requester", "random-priority"}))
      ->capture_default_str();
  allocate_cmd->add_option("--output", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  auto* mms_cmd = app.add_subcommand("mms", "Exact MMS value and partition per agent");
  mms_cmd->add_option("--instance", instance_path, "Instance JSON")->required()->check(CLI::ExistingFile);

  std::string solution_path;
  auto* lp_cmd = app.add_subcommand("check-lp", "Check a configuration-LP solution for feasibility");
  lp_cmd->add_option("--instance", instance_path, "Instance JSON")->required()->check(CLI::ExistingFile);
  lp_cmd->add_option("--solution", solution_path,
                     "Solution JSON; defaults to the MMS encoding of the instance")
      ->check(CLI::ExistingFile);

  VerbOptions verb_opts;
  std::string json_out;
  std::string verb;
  std::string pr_a;
  std::string budget;
  auto* conc_cmd = app.add_subcommand("concentration", "Exact and sampled concentration checks");
  std::string verb_list;
  for (std::string_view name : kVerbNames) {
    verb_list += "\n  " + std::string(name) + ": " + verb_help(name);
  }
  conc_cmd->add_option("verb", verb, "One of:" + verb_list)
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(std::begin(kVerbNames), std::end(kVerbNames))));
  conc_cmd->add_option("--m", verb_opts.m, "Size parameter (per-verb meaning)");
  conc_cmd->add_option("--q", verb_opts.q, "Number of sets");
  conc_cmd->add_option("--t", verb_opts.t, "Number of copies (lemma)");
  conc_cmd->add_option("--pr-a", pr_a, "Pr[A] (eh-bound)");
  conc_cmd->add_option("--budget", budget, "Budget (eh-bound)");
  conc_cmd->add_option("--json-out", json_out, "Write the JSON report here");

  std::vector<std::string> classes;
  std::size_t shards = std::max(1U, std::thread::hardware_concurrency());
  bool svg = false;
  auto* bench_cmd = app.add_subcommand("bench", "Run the pinned corpus and write report.csv");
  bench_cmd->add_option("--classes", classes, "Valuation classes (default: all four)")
      ->check(CLI::IsMember({"additive", "xos", "coverage", "table"}));
  bench_cmd->add_option("--shards", shards, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--svg", svg, "Also write success_vs_t.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*allocate_cmd) return cmd_allocate(g, instance_path, t_override, log_base, strategy, format);
    if (*mms_cmd) return cmd_mms(instance_path);
    if (*lp_cmd) return cmd_check_lp(g, instance_path, solution_path);
    if (*conc_cmd) {
      if (!pr_a.empty()) verb_opts.pr_a = parse_rational(pr_a);
      if (!budget.empty()) verb_opts.budget = parse_rational(budget);
      return cmd_concentration(g, verb, verb_opts, json_out);
    }
    if (*bench_cmd) return cmd_bench(g, classes, shards, svg);
  } catch (const std::exception& e) {
    // Bad instance files, out-of-range parameters and size limits.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
