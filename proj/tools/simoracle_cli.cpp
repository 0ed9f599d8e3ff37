// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// simoracle: command-line front end.
//
// Exit codes: 0 success, 1 a bench check failed or an internal error,
// 2 invalid input or usage, 3 budget exceeded.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "simoracle/bench.hpp"
#include "simoracle/error.hpp"
#include "simoracle/exact.hpp"
#include "simoracle/families.hpp"
#include "simoracle/maximize.hpp"
#include "simoracle/model_io.hpp"
#include "simoracle/oracle.hpp"
#include "simoracle/parallel.hpp"
#include "simoracle/reach.hpp"
#include "simoracle/rng.hpp"
#include "simoracle/rrs.hpp"
#include "simoracle/sketch.hpp"

#ifndef SIMORACLE_VERSION
#define SIMORACLE_VERSION "0.0.0"
#endif

namespace {

using nlohmann::ordered_json;
using namespace simoracle;

constexpr std::uint64_t kSketchRankTag = 0x5e7c;
constexpr std::uint64_t kRrsFullTag = 0x4f01;
constexpr std::uint64_t kRrsMarginalTag = 0x4f02;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::size_t threads = 0;
};

struct Output {
  ordered_json report;
  std::optional<std::string> csv;
  int exit_code = 0;
};

ordered_json versions() {
  ordered_json v;
  v["simoracle"] = SIMORACLE_VERSION;
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  v["cli11"] = CLI11_VERSION;
  return v;
}

// Parameters as given on the command line, defaults filled in, in
// declaration order.
ordered_json parameters(const CLI::App& sub) {
  ordered_json p = ordered_json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt == sub.get_help_ptr() || opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (opt->get_expected_max() == 0) {
      p[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      p[name] = opt->as<std::string>();
    } else if (!opt->get_default_str().empty()) {
      p[name] = opt->get_default_str();
    } else {
      p[name] = nullptr;
    }
  }
  return p;
}

ordered_json header(const CLI::App& sub, const Globals& g) {
  ordered_json r;
  r["command"] = sub.get_name();
  r["parameters"] = parameters(sub);
  r["master_seed"] = g.seed;
  r["versions"] = versions();
  return r;
}

std::int32_t resolve_tau(const DiffusionModel& model, std::int32_t tau) {
  if (tau < 0) return static_cast<std::int32_t>(model.num_nodes()) - 1;
  return tau;
}

ordered_json config_json(const OracleConfig& c) {
  ordered_json j;
  j["pools"] = c.pools;
  j["pool_size"] = c.pool_size;
  j["tau"] = c.tau;
  j["total_simulations"] = c.total_simulations();
  return j;
}

ordered_json maximizer_json(const MaximizerResult& r) {
  ordered_json j;
  j["seeds"] = r.seeds.ids();
  j["oracle_value"] = r.oracle_value;
  j["simulations_used"] = r.simulations_used;
  j["method"] = r.method;
  auto trace = ordered_json::array();
  for (const GreedyStep& step : r.trace) {
    trace.push_back({{"node", step.node}, {"gain", step.gain},
                     {"value", step.value}});
  }
  j["trace"] = trace;
  j["optimization_simulations"] = r.optimization_simulations;
  j["validation_simulations"] = r.validation_simulations;
  j["worst_case_budget"] = r.worst_case_budget;
  j["rounds"] = r.rounds;
  j["accepted"] = r.accepted;
  return j;
}

std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

void require_out(const Globals& g, const std::string& what) {
  if (g.out.empty()) throw InvalidInput("--out is required for " + what);
}

// ---- subcommands ----------------------------------------------------------

struct GenArgs {
  std::string family;
  std::int32_t depth = 3;
  std::size_t leaves = 20;
  bool dependent = false;
  std::size_t n = 0;
  std::size_t m = 20;
  std::string kind = "ic";
  std::size_t b = 2;
  double p_lo = 0.1, p_hi = 0.5;
  double w_lo = 1.0, w_hi = 1.0;
};

Output run_gen(const CLI::App& sub, const GenArgs& a, const Globals& g) {
  require_out(g, "gen");
  DiffusionModel model = [&] {
    if (a.family == "tree") return gen_tree(a.depth);
    if (a.family == "star") return gen_star(a.leaves, a.dependent);
    if (a.family == "polysimu") return gen_polysimu(a.n ? a.n : 1000);
    if (a.family == "mixture") return gen_two_world_mixture();
    if (a.family == "max-cover") return gen_max_cover();
    const std::size_t n = a.n ? a.n : 10;
    if (a.kind == "ic") {
      return gen_random_ic(n, a.m, {a.p_lo, a.p_hi}, {a.w_lo, a.w_hi}, g.seed);
    }
    if (a.kind == "lt") return gen_random_lt(n, a.m, g.seed);
    if (a.kind == "bdep") return gen_random_bdep(n, a.m, a.b, g.seed);
    if (a.kind == "mixture") return gen_random_mixture(n, a.m, g.seed);
    throw InvalidInput("unknown random kind '" + a.kind + "'");
  }();
  save_model(g.out, model);
  Output o;
  o.report = header(sub, g);
  o.report["model"] = {{"path", g.out},
                       {"kind", to_string(model.kind())},
                       {"nodes", model.num_nodes()},
                       {"edges", model.graph().num_edges()}};
  return o;
}

struct QueryArgs {
  std::string model;
  std::string seeds;
  std::int32_t tau = -1;
};

void add_query_options(CLI::App* sub, QueryArgs& q, bool need_seeds = true) {
  sub->add_option("--model", q.model, "Model file")->required();
  if (need_seeds) {
    sub->add_option("--seeds", q.seeds, "Comma-separated seed nodes")
        ->required();
  }
  sub->add_option("--tau", q.tau, "Step limit (default n-1)")
      ->capture_default_str();
}

struct Loaded {
  DiffusionModel model;
  SeedSet seeds;
  std::int32_t tau;
};

Loaded load(const QueryArgs& q) {
  DiffusionModel model = load_model(q.model);
  SeedSet seeds;
  if (!q.seeds.empty()) {
    seeds = SeedSet::parse(q.seeds);
    seeds.validate(model.num_nodes());
  }
  const std::int32_t tau = resolve_tau(model, q.tau);
  if (tau < 0) throw InvalidInput("tau must be nonnegative");
  return {std::move(model), std::move(seeds), tau};
}

Output run_simulate(const CLI::App& sub, const QueryArgs& q,
                    std::uint64_t count, const Globals& g) {
  if (count < 2) throw InvalidInput("--simulations must be at least 2");
  const Loaded in = load(q);
  std::vector<double> values(count);
  parallel_chunks(count, [&](std::size_t, std::size_t begin, std::size_t end) {
    ReachScratch scratch;
    Simulation sim;
    for (std::size_t i = begin; i < end; ++i) {
      sample_simulation_into(in.model, g.seed, i, sim);
      values[i] = reach_value(in.model.graph(), sim, in.seeds, in.tau, scratch);
    }
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(count);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(count - 1);
  Output o;
  o.report = header(sub, g);
  o.report["result"] = {{"tau", in.tau},
                        {"simulations", count},
                        {"mean", mean},
                        {"variance", var},
                        {"std_error", std::sqrt(var / count)}};
  return o;
}

Output run_exact(const CLI::App& sub, const QueryArgs& q, const Globals& g) {
  const Loaded in = load(q);
  const ExactReport r = exact_report(in.model, in.seeds, in.tau);
  Output o;
  o.report = header(sub, g);
  ordered_json j;
  j["tau"] = r.tau;
  j["influence"] = r.influence;
  j["variance"] = r.variance;
  j["opt1"] = r.opt1;
  j["enumeration_size"] = r.enumeration_size;
  j["step_probs"] = r.step_probs;
  o.report["result"] = j;
  if (g.format == "csv") {
    std::ostringstream csv;
    csv << "node";
    for (std::int32_t d = 0; d <= r.tau; ++d) csv << ",p" << d;
    csv << '\n';
    for (std::size_t v = 0; v < r.step_probs.size(); ++v) {
      csv << v;
      for (double p : r.step_probs[v]) csv << ',' << fmt(p);
      csv << '\n';
    }
    o.csv = csv.str();
  }
  return o;
}

struct EstimateArgs {
  double eps = 0.0, delta = 0.0, c = 0.0;
  std::string mode = "moa";
  std::uint64_t pools = 0, pool_size = 0;
};

Output run_estimate(const CLI::App& sub, const QueryArgs& q,
                    const EstimateArgs& a, const Globals& g) {
  const Loaded in = load(q);
  OracleConfig cfg;
  if (a.pool_size > 0) {
    cfg.pools = a.pools ? a.pools : 1;
    cfg.pool_size = a.pool_size;
  } else {
    if (a.eps <= 0.0 || a.delta <= 0.0) {
      throw InvalidInput("give --eps and --delta, or --pool-size");
    }
    const double c = a.c > 0.0 ? a.c : c_value(in.model, std::max(in.tau, 1));
    cfg = size_for_guarantee(a.eps, a.delta, c, parse_oracle_mode(a.mode));
  }
  cfg.tau = in.tau;
  cfg.master_seed = g.seed;
  const Oracle oracle = Oracle::build(in.model, cfg);
  Output o;
  o.report = header(sub, g);
  o.report["result"] = {{"estimate", oracle.query(in.seeds)},
                        {"config", config_json(cfg)},
                        {"pool_averages", oracle.pool_averages(in.seeds)}};
  return o;
}

Output run_sketch_build(const CLI::App& sub, const QueryArgs& q,
                        std::size_t k, std::uint64_t pool_size,
                        const Globals& g) {
  require_out(g, "sketch-build");
  const Loaded in = load(q);
  OracleConfig cfg;
  cfg.pool_size = pool_size;
  cfg.tau = in.tau;
  cfg.master_seed = g.seed;
  const Oracle oracle = Oracle::build(in.model, cfg);
  const SketchSet s = build_sketches(in.model, oracle.simulations(), in.tau, k,
                                     derive_seed(g.seed, kSketchRankTag, 0));
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + g.out + "'");
  write_sketches(out, s);
  std::size_t entries = 0;
  for (const NodeSketch& n : s.sketches) entries += n.entries.size();
  Output o;
  o.report = header(sub, g);
  o.report["result"] = {{"path", g.out},
                        {"k", s.k},
                        {"rank_seed", s.rank_seed},
                        {"tau", s.tau},
                        {"pool_size", s.pool_size},
                        {"entries", entries}};
  return o;
}

Output run_sketch_query(const CLI::App& sub, const std::string& path,
                        const std::string& seeds_text, const Globals& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open sketch file '" + path + "'");
  const SketchSet s = read_sketches(in);
  const SeedSet seeds = SeedSet::parse(seeds_text);
  seeds.validate(s.sketches.size());
  Output o;
  o.report = header(sub, g);
  o.report["result"] = {
      {"estimate", sketch_query(s, seeds, s.pool_size)},
      {"merged_entries", merged_sketch(s, seeds).size()},
      {"k", s.k},
      {"pool_size", s.pool_size}};
  return o;
}

struct MaximizeArgs {
  std::size_t s = 1;
  double eps = 0.25, delta = 0.1;
  std::string method = "adaptive";
  std::string base = "greedy";
  std::size_t k = 64;
};

Output run_maximize(const CLI::App& sub, const QueryArgs& q,
                    const MaximizeArgs& a, const Globals& g) {
  const Loaded in = load(q);
  if (a.s == 0) throw InvalidInput("--s must be positive");
  MaximizerResult r;
  if (a.method == "adaptive") {
    r = adaptive_maximize(in.model, a.s, in.tau, a.eps, a.delta,
                          parse_base_algorithm(a.base), g.seed);
  } else {
    OracleConfig cfg = im_oracle_config(in.model.num_nodes(), a.s, a.eps,
                                        a.delta, c_value(in.model, in.tau));
    cfg.tau = in.tau;
    cfg.master_seed = g.seed;
    Oracle oracle = Oracle::build(in.model, cfg);
    if (a.method == "brute") {
      r = brute_force_max(oracle, a.s);
    } else if (a.method == "greedy") {
      r = greedy_max(oracle, a.s);
    } else if (a.method == "sketched") {
      const SketchedOracle so = SketchedOracle::build(
          oracle, a.k, derive_seed(g.seed, kSketchRankTag, 1));
      r = greedy_max(so, a.s);
    } else {
      throw InvalidInput("unknown method '" + a.method + "'");
    }
    r.optimization_simulations = r.simulations_used;
    r.worst_case_budget = cfg.total_simulations();
  }
  Output o;
  o.report = header(sub, g);
  o.report["result"] = maximizer_json(r);
  return o;
}

Output run_audit(const CLI::App& sub, const QueryArgs& q, double c_in,
                 const Globals& g) {
  const Loaded in = load(q);
  const double c = c_in > 0.0 ? c_in : c_value(in.model, in.tau);
  const VarianceAudit a = audit_variance_bound(in.model, in.seeds, in.tau, c);
  Output o;
  o.report = header(sub, g);
  o.report["result"] = {{"tau", in.tau},        {"c", c},
                        {"variance", a.lhs},    {"bound", a.rhs},
                        {"holds", a.holds},     {"influence", a.influence},
                        {"opt1", a.opt1}};
  return o;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(
      std::max_element(v.begin(), v.end()) - v.begin());
}

Output run_rrs_compare(const CLI::App& sub, const QueryArgs& q,
                       std::uint64_t searches, const Globals& g) {
  const Loaded in = load(q);
  const std::size_t n = in.model.num_nodes();
  const RrsEstimate full =
      rrs_estimate(in.model, RrsMode::kFullSimulation, searches, in.tau,
                   derive_seed(g.seed, kRrsFullTag, 0));
  const RrsEstimate marginal =
      rrs_estimate(in.model, RrsMode::kMarginal, searches, in.tau,
                   derive_seed(g.seed, kRrsMarginalTag, 0));
  std::optional<std::vector<double>> exact;
  try {
    std::vector<double> e(n);
    for (NodeId v = 0; v < n; ++v) {
      e[v] = exact_influence(in.model, SeedSet{v}, in.tau);
    }
    exact = std::move(e);
  } catch (const BudgetExceeded&) {
  }

  auto nodes = ordered_json::array();
  std::ostringstream csv;
  csv << "node,full,full_std_error,marginal,exact\n";
  for (NodeId v = 0; v < n; ++v) {
    const double p = static_cast<double>(full.hits[v]) / searches;
    const double se = full.total_weight * std::sqrt(p * (1 - p) / searches);
    ordered_json row;
    row["node"] = v;
    row["full"] = full.estimate[v];
    row["full_std_error"] = se;
    row["marginal"] = marginal.estimate[v];
    row["exact"] = exact ? ordered_json((*exact)[v]) : ordered_json(nullptr);
    nodes.push_back(row);
    csv << v << ',' << fmt(full.estimate[v]) << ',' << fmt(se) << ','
        << fmt(marginal.estimate[v]) << ','
        << (exact ? fmt((*exact)[v]) : std::string()) << '\n';
  }
  Output o;
  o.report = header(sub, g);
  ordered_json r;
  r["tau"] = in.tau;
  r["searches"] = searches;
  r["argmax_full"] = argmax(full.estimate);
  r["argmax_marginal"] = argmax(marginal.estimate);
  r["argmax_exact"] =
      exact ? ordered_json(argmax(*exact)) : ordered_json(nullptr);
  r["nodes"] = nodes;
  o.report["result"] = r;
  o.csv = csv.str();
  return o;
}

Output run_bench_cmd(const CLI::App& sub, const std::string& checks,
                     std::size_t compare_threads, const Globals& g) {
  std::vector<CheckResult> results;
  if (checks.empty()) {
    results = run_bench(g.seed, worker_count(), compare_threads);
  } else {
    std::vector<int> ids;
    std::stringstream ss(checks);
    for (std::string tok; std::getline(ss, tok, ',');) {
      int id = 0;
      try {
        id = std::stoi(tok);
      } catch (const std::exception&) {
        throw InvalidInput("bad check id '" + tok + "'");
      }
      const auto known = bench_check_ids();
      if (std::find(known.begin(), known.end(), id) == known.end()) {
        throw InvalidInput("unknown check id " + tok);
      }
      ids.push_back(id);
    }
    results = run_checks(ids, g.seed);
  }
  Output o;
  o.report = header(sub, g);
  auto arr = ordered_json::array();
  std::ostringstream csv;
  csv << "id,name,passed,seconds\n";
  std::size_t failed = 0;
  for (const CheckResult& r : results) {
    arr.push_back(to_json(r));
    failed += r.passed ? 0 : 1;
    csv << r.id << ",\"" << r.name << "\"," << (r.passed ? "pass" : "fail")
        << ',' << fmt(r.seconds) << '\n';
  }
  o.report["result"] = {{"checks", arr},
                        {"passed", results.size() - failed},
                        {"failed", failed}};
  o.csv = csv.str();
  o.exit_code = failed == 0 ? 0 : 1;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence estimation and maximization with simulation oracles",
               "simoracle"};
  app.set_version_flag("--version", SIMORACLE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--out", g.out, "Output path");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a model file");
  gen_cmd->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember(
          {"tree", "star", "polysimu", "mixture", "max-cover", "random"}));
  gen_cmd->add_option("--depth,--tau", gen.depth, "Tree edge levels")
      ->capture_default_str();
  gen_cmd->add_option("--leaves", gen.leaves)->capture_default_str();
  gen_cmd->add_flag("--dependent", gen.dependent, "Star edges share one group");
  gen_cmd->add_option("--n", gen.n, "Node count");
  gen_cmd->add_option("--m", gen.m, "Edge count (random)")
      ->capture_default_str();
  gen_cmd->add_option("--kind", gen.kind, "ic|lt|bdep|mixture (random)")
      ->capture_default_str();
  gen_cmd->add_option("--b", gen.b)->capture_default_str();
  gen_cmd->add_option("--p-lo", gen.p_lo)->capture_default_str();
  gen_cmd->add_option("--p-hi", gen.p_hi)->capture_default_str();
  gen_cmd->add_option("--w-lo", gen.w_lo)->capture_default_str();
  gen_cmd->add_option("--w-hi", gen.w_hi)->capture_default_str();

  QueryArgs sim_q;
  std::uint64_t sim_count = 10000;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte-Carlo reachability statistics");
  add_query_options(sim_cmd, sim_q);
  sim_cmd->add_option("--simulations", sim_count)->capture_default_str();

  QueryArgs exact_q;
  auto* exact_cmd = app.add_subcommand("exact", "Exact influence by enumeration");
  add_query_options(exact_cmd, exact_q);

  QueryArgs est_q;
  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Oracle influence estimate");
  add_query_options(est_cmd, est_q);
  est_cmd->add_option("--eps", est.eps);
  est_cmd->add_option("--delta", est.delta);
  est_cmd->add_option("--c", est.c, "Variance factor (default from model)");
  est_cmd->add_option("--mode", est.mode)
      ->check(CLI::IsMember({"avg", "moa"}))
      ->capture_default_str();
  est_cmd->add_option("--pools", est.pools);
  est_cmd->add_option("--pool-size", est.pool_size);

  QueryArgs sb_q;
  std::size_t sb_k = 64;
  std::uint64_t sb_pool = 100;
  auto* sb_cmd = app.add_subcommand("sketch-build", "Build reachability sketches");
  add_query_options(sb_cmd, sb_q, false);
  sb_cmd->add_option("--k", sb_k)->capture_default_str();
  sb_cmd->add_option("--pool-size", sb_pool)->capture_default_str();

  std::string sq_path, sq_seeds;
  auto* sq_cmd = app.add_subcommand("sketch-query", "Query a sketch file");
  sq_cmd->add_option("--sketch", sq_path)->required();
  sq_cmd->add_option("--seeds", sq_seeds)->required();

  QueryArgs max_q;
  MaximizeArgs mx;
  auto* max_cmd = app.add_subcommand("maximize", "Influence maximization");
  add_query_options(max_cmd, max_q, false);
  max_cmd->add_option("--s", mx.s, "Seed set size")->required();
  max_cmd->add_option("--eps", mx.eps)->capture_default_str();
  max_cmd->add_option("--delta", mx.delta)->capture_default_str();
  max_cmd->add_option("--method", mx.method)
      ->check(CLI::IsMember({"brute", "greedy", "sketched", "adaptive"}))
      ->capture_default_str();
  max_cmd->add_option("--base", mx.base, "Adaptive base algorithm")
      ->check(CLI::IsMember({"brute", "greedy"}))
      ->capture_default_str();
  max_cmd->add_option("--k", mx.k, "Sketch size (sketched)")
      ->capture_default_str();

  QueryArgs audit_q;
  double audit_c = 0.0;
  auto* audit_cmd =
      app.add_subcommand("audit-variance", "Check the variance bound exactly");
  add_query_options(audit_cmd, audit_q);
  audit_cmd->add_option("--c", audit_c, "Variance factor (default from model)");

  QueryArgs rrs_q;
  std::uint64_t rrs_searches = 100000;
  auto* rrs_cmd =
      app.add_subcommand("rrs-compare", "Full vs marginal reverse searches");
  add_query_options(rrs_cmd, rrs_q, false);
  rrs_cmd->add_option("--searches", rrs_searches)->capture_default_str();

  std::string bench_checks;
  std::size_t bench_threads = 4;
  auto* bench_cmd = app.add_subcommand("bench", "Run the acceptance checks");
  bench_cmd->add_option("--checks", bench_checks, "Comma-separated check ids");
  bench_cmd->add_option("--compare-threads", bench_threads,
                        "Worker count of the determinism rerun")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_worker_count(g.threads ? g.threads
                               : std::max(1u, std::thread::hardware_concurrency()));
    Output out;
    bool artifact = false;
    if (gen_cmd->parsed()) {
      out = run_gen(*gen_cmd, gen, g);
      artifact = true;
    } else if (sim_cmd->parsed()) {
      out = run_simulate(*sim_cmd, sim_q, sim_count, g);
    } else if (exact_cmd->parsed()) {
      out = run_exact(*exact_cmd, exact_q, g);
    } else if (est_cmd->parsed()) {
      out = run_estimate(*est_cmd, est_q, est, g);
    } else if (sb_cmd->parsed()) {
      out = run_sketch_build(*sb_cmd, sb_q, sb_k, sb_pool, g);
      artifact = true;
    } else if (sq_cmd->parsed()) {
      out = run_sketch_query(*sq_cmd, sq_path, sq_seeds, g);
    } else if (max_cmd->parsed()) {
      out = run_maximize(*max_cmd, max_q, mx, g);
    } else if (audit_cmd->parsed()) {
      out = run_audit(*audit_cmd, audit_q, audit_c, g);
    } else if (rrs_cmd->parsed()) {
      out = run_rrs_compare(*rrs_cmd, rrs_q, rrs_searches, g);
    } else {
      out = run_bench_cmd(*bench_cmd, bench_checks, bench_threads, g);
    }
    const std::string dest = artifact ? std::string() : g.out;
    if (g.format == "csv") {
      if (!out.csv) throw InvalidInput("csv output is only for tabular reports");
      write_text(dest, *out.csv);
    } else {
      write_text(dest, out.report.dump(2) + "\n");
    }
    return out.exit_code;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
