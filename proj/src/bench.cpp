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

#include "simoracle/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "simoracle/error.hpp"
#include "simoracle/exact.hpp"
#include "simoracle/families.hpp"
#include "simoracle/maximize.hpp"
#include "simoracle/oracle.hpp"
#include "simoracle/parallel.hpp"
#include "simoracle/reach.hpp"
#include "simoracle/rng.hpp"
#include "simoracle/rrs.hpp"
#include "simoracle/sketch.hpp"

namespace simoracle {

namespace {

using nlohmann::ordered_json;

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
};

Moments sample_moments(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= static_cast<double>(xs.size() - 1);
  return m;
}

// Reachability value of `seeds` in simulations 0..count-1 of `seed`.
std::vector<double> reach_samples(const DiffusionModel& model,
                                  const SeedSet& seeds, std::int32_t tau,
                                  std::uint64_t seed, std::size_t count) {
  std::vector<double> out(count);
  parallel_chunks(count, [&](std::size_t, std::size_t b, std::size_t e) {
    ReachScratch scratch;
    Simulation sim;
    for (std::size_t i = b; i < e; ++i) {
      sample_simulation_into(model, seed, i, sim);
      out[i] = reach_value(model.graph(), sim, seeds, tau, scratch);
    }
  });
  return out;
}

// Enumerable random instance of the given family index.
DiffusionModel family_instance(int family, std::size_t n, std::size_t m,
                               std::uint64_t seed) {
  switch (family) {
    case 0:
      return gen_random_ic(n, m, {0.1, 0.9}, {1.0, 1.0}, seed);
    case 1:
      return gen_random_lt(n, m, seed);
    case 2:
      return gen_random_bdep(n, m, 2, seed);
    case 3:
      return gen_random_bdep(n, m, 3, seed);
    default:
      return gen_random_mixture(n, m, seed);
  }
}

const char* family_name(int family) {
  static const char* names[] = {"ic", "lt", "bdep2", "bdep3", "mixture"};
  return names[family];
}

double exact_optimum(const ExactInfluence& f, std::size_t s) {
  return brute_force_max([&](const SeedSet& x) { return f(x); },
                         f.num_nodes(), s)
      .oracle_value;
}

CheckResult check_tree_variance(std::uint64_t master_seed) {
  CheckResult r;
  r.name = "tree variance family";
  constexpr std::size_t kSims = 100000;
  bool ok = true;
  auto rows = ordered_json::array();
  for (std::int32_t tau = 2; tau <= 5; ++tau) {
    // The closed forms count tau node levels: the tree has tau - 1 edge
    // levels and diffusion runs tau - 1 steps.
    const std::int32_t depth = tau - 1;
    const DiffusionModel tree = gen_tree(depth);
    const SeedSet root{0};
    const ExactMoments exact = exact_moments(tree, root, depth);
    const double formula_influence = tau;
    const double formula_variance = tau * (tau - 1.0) * (2.0 * tau - 1.0) / 12;
    const bool match =
        std::abs(exact.influence - formula_influence) <= 1e-9 * tau &&
        std::abs(exact.variance() - formula_variance) <=
            1e-9 * std::max(1.0, formula_variance);
    const Moments mc = sample_moments(reach_samples(
        tree, root, depth, derive_seed(master_seed, 1, tau), kSims));
    const double rel = std::abs(mc.variance - exact.variance()) /
                       exact.variance();
    ok = ok && match && rel <= 0.05;
    rows.push_back({{"tau", tau},
                    {"edge_levels", depth},
                    {"exact_influence", exact.influence},
                    {"exact_variance", exact.variance()},
                    {"formula_influence", formula_influence},
                    {"formula_variance", formula_variance},
                    {"formula_match", match},
                    {"outcomes", exact.outcomes},
                    {"mc_variance", mc.variance},
                    {"mc_relative_error", rel}});
  }
  r.metrics["convention"] = "tau counts node levels including the root";
  r.metrics["simulations"] = kSims;
  r.metrics["rows"] = std::move(rows);
  r.passed = ok;
  return r;
}

CheckResult check_variance_audit(std::uint64_t master_seed) {
  CheckResult r;
  r.name = "variance bound audit";
  constexpr int kInstances = 60;
  std::uint64_t audits = 0;
  std::uint64_t violations = 0;
  double worst_ratio = 0.0;
  std::map<std::string, int> per_family;
  auto failures = ordered_json::array();
  for (int i = 0; i < kInstances; ++i) {
    const int family = i % 5;
    const std::size_t n = 6 + i % 3;
    const std::size_t m = 9 + i % 4;
    const DiffusionModel model =
        family_instance(family, n, m, derive_seed(master_seed, 2, i));
    ++per_family[family_name(family)];
    for (std::int32_t tau = 1; tau <= 3; ++tau) {
      const double c = c_value(model, tau);
      std::vector<SeedSet> sets;
      for (NodeId v = 0; v < n; ++v) sets.push_back(SeedSet{v});
      sets.push_back(SeedSet{0, static_cast<NodeId>(n / 2),
                             static_cast<NodeId>(n - 1)});
      std::vector<ExactMoments> moments(sets.size());
      parallel_for(sets.size(), [&](std::size_t k) {
        moments[k] = exact_moments(model, sets[k], tau);
      });
      double opt1 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        opt1 = std::max(opt1, moments[k].influence);
      }
      for (std::size_t k = 0; k < sets.size(); ++k) {
        const double inf = moments[k].influence;
        const double lhs = moments[k].variance();
        const double rhs = c * inf * std::max(inf, opt1);
        ++audits;
        if (rhs > 0.0) worst_ratio = std::max(worst_ratio, lhs / rhs);
        if (!(lhs <= rhs * (1.0 + 1e-9))) {
          ++violations;
          failures.push_back({{"instance", i},
                              {"family", family_name(family)},
                              {"tau", tau},
                              {"seeds", sets[k].to_string()},
                              {"lhs", lhs},
                              {"rhs", rhs}});
        }
      }
    }
  }
  r.metrics["instances"] = kInstances;
  r.metrics["families"] = per_family;
  r.metrics["audits"] = audits;
  r.metrics["violations"] = violations;
  r.metrics["max_lhs_over_rhs"] = worst_ratio;
  r.metrics["failures"] = std::move(failures);
  r.passed = violations == 0 && kInstances >= 50;
  return r;
}

struct FailureCount {
  std::uint64_t failures = 0;
  std::uint64_t trials = 0;
  double rate() const {
    return static_cast<double>(failures) / static_cast<double>(trials);
  }
};

FailureCount rebuild_failures(const DiffusionModel& model, const SeedSet& seeds,
                              OracleConfig cfg, std::size_t trials,
                              double truth, double opt1, double epsilon,
                              std::uint64_t seed) {
  std::vector<char> failed(trials);
  parallel_for(trials, [&](std::size_t t) {
    OracleConfig c = cfg;
    c.master_seed = derive_seed(seed, 0, t);
    const Oracle oracle = Oracle::build(model, c);
    failed[t] = !check_eps_approx(oracle.query(seeds), truth, opt1, epsilon);
  });
  FailureCount out;
  out.trials = trials;
  for (char f : failed) out.failures += f;
  return out;
}

ordered_json failure_json(const FailureCount& f) {
  return {{"failures", f.failures},
          {"trials", f.trials},
          {"rate", f.rate()},
          {"wilson_upper_99", wilson_upper(f.failures, f.trials)}};
}

CheckResult check_lemma_averaging(std::uint64_t master_seed,
                                  OracleMode mode) {
  CheckResult r;
  constexpr double kEps = 0.5, kDelta = 0.1, kC = 3.0;
  constexpr std::int32_t kTau = 3;
  const DiffusionModel tree = gen_tree(kTau);
  const SeedSet root{0};
  const double truth = exact_influence(tree, root, kTau);
  const double opt1 = exact_opt1(tree, kTau);
  OracleConfig cfg = size_for_guarantee(kEps, kDelta, kC, mode);
  cfg.tau = kTau;
  const FailureCount f =
      rebuild_failures(tree, root, cfg, 1000, truth, opt1, kEps,
                       derive_seed(master_seed, 3, static_cast<int>(mode)));
  r.metrics["pools"] = cfg.pools;
  r.metrics["pool_size"] = cfg.pool_size;
  r.metrics["truth"] = truth;
  r.metrics["opt1"] = opt1;
  r.metrics["tree"] = failure_json(f);
  r.passed = wilson_upper(f.failures, f.trials) <= kDelta;
  return r;
}

CheckResult check_lemma_moa(std::uint64_t master_seed) {
  CheckResult r = check_lemma_averaging(master_seed,
                                        OracleMode::kMedianOfAverages);
  r.name = "median-of-averages oracle";

  // High-variance comparison at equal total simulations.
  constexpr std::size_t kNodes = 500;
  constexpr std::int32_t kTau = 2;
  constexpr double kEps = 0.5, kDelta = 0.1;
  constexpr std::size_t kTrials = 300;
  const DiffusionModel poly = gen_polysimu(kNodes);
  const SeedSet source{kPolysimuSource};
  const ExactMoments exact = exact_moments(poly, source, kTau);
  const double opt1 = exact_opt1(poly, kTau);
  OracleConfig moa = size_for_guarantee(kEps, kDelta, c_value(poly, kTau),
                                        OracleMode::kMedianOfAverages);
  moa.tau = kTau;
  OracleConfig avg;
  avg.pools = 1;
  avg.pool_size = moa.total_simulations();
  avg.tau = kTau;
  ordered_json cmp;
  cmp["nodes"] = kNodes;
  cmp["influence"] = exact.influence;
  cmp["variance"] = exact.variance();
  cmp["opt1"] = opt1;
  cmp["total_simulations"] = avg.pool_size;
  cmp["moa_pools"] = moa.pools;
  cmp["moa_pool_size"] = moa.pool_size;
  bool ok = true;
  auto rows = ordered_json::array();
  for (double eps : {kEps, 0.02}) {
    const FailureCount fm =
        rebuild_failures(poly, source, moa, kTrials, exact.influence, opt1,
                         eps, derive_seed(master_seed, 4, 0));
    const FailureCount fa =
        rebuild_failures(poly, source, avg, kTrials, exact.influence, opt1,
                         eps, derive_seed(master_seed, 4, 1));
    rows.push_back({{"epsilon", eps},
                    {"median_of_averages", failure_json(fm)},
                    {"averaging", failure_json(fa)}});
    if (eps == kEps) ok = fm.failures <= fa.failures;
  }
  cmp["rows"] = std::move(rows);
  r.metrics["polysimu"] = std::move(cmp);
  r.passed = r.passed && ok;
  return r;
}

CheckResult check_im_end_to_end(std::uint64_t master_seed) {
  CheckResult r;
  r.name = "end-to-end maximization";
  constexpr std::size_t kS = 2;
  constexpr std::int32_t kTau = 2;
  constexpr double kEps = 0.25, kDelta = 0.1;
  constexpr int kTrials = 100;
  const DiffusionModel model = gen_random_ic(
      12, 20, {0.1, 0.6}, {1.0, 1.0}, derive_seed(master_seed, 5, 0));
  const ExactInfluence exact(model, kTau);
  const double opt = exact_optimum(exact, kS);
  int good = 0;
  double worst = 1.0;
  std::uint64_t sims = 0;
  for (int t = 0; t < kTrials; ++t) {
    const MaximizerResult res = maximize_im(
        model, kS, kTau, kEps, kDelta, derive_seed(master_seed, 5, t + 1));
    sims = res.simulations_used;
    const double value = exact(res.seeds);
    worst = std::min(worst, value / opt);
    if (value >= (1.0 - 2.0 * kEps) * opt) ++good;
  }
  r.metrics["nodes"] = model.num_nodes();
  r.metrics["edges"] = model.graph().num_edges();
  r.metrics["opt"] = opt;
  r.metrics["simulations_per_trial"] = sims;
  r.metrics["trials"] = kTrials;
  r.metrics["successes"] = good;
  r.metrics["worst_ratio"] = worst;
  r.passed = good >= 95;
  return r;
}

CheckResult check_greedy_perturbed(std::uint64_t master_seed) {
  CheckResult r;
  r.name = "greedy under uniform perturbation";
  constexpr double kEps = 0.3;
  constexpr int kInstances = 100;
  constexpr std::int32_t kTau = 2;
  int violations = 0;
  double worst = 1e300;
  for (int i = 0; i < kInstances; ++i) {
    const std::size_t s = 2 + i % 2;
    const std::size_t n = 8 + i % 3;
    const std::uint64_t seed = derive_seed(master_seed, 6, i);
    const DiffusionModel model =
        gen_random_ic(n, 12 + i % 3, {0.1, 0.9}, {1.0, 1.0}, seed);
    const ExactInfluence f(model, kTau);
    const MaximizerResult best =
        brute_force_max([&](const SeedSet& x) { return f(x); }, n, s);
    double opt1 = 0.0;
    for (NodeId v = 0; v < n; ++v) opt1 = std::max(opt1, f(SeedSet{v}));
    const double eps_a = kEps * (1.0 - kEps) / (14.0 * s);
    const double bound = (1.0 - std::pow(1.0 - 1.0 / s, s)) * (1.0 - kEps);

    // Two adversaries: one pushes greedy away from the optimal nodes, the
    // other flips signs pseudo-randomly per set.
    std::vector<std::function<double(const SeedSet&)>> signs = {
        [&](const SeedSet& x) {
          for (NodeId v : x.ids()) {
            if (best.seeds.contains(v)) return -1.0;
          }
          return 1.0;
        },
        [&](const SeedSet& x) {
          std::uint64_t h = seed;
          for (NodeId v : x.ids()) h = mix64(h ^ (v + 1));
          return (h & 1) ? 1.0 : -1.0;
        }};
    for (const auto& sign : signs) {
      const MaximizerResult g = greedy_max(
          [&](const SeedSet& x) {
            const double v = f(x);
            return v + sign(x) * eps_a * std::max(v, opt1);
          },
          n, s);
      const double ratio = f(g.seeds) / best.oracle_value;
      worst = std::min(worst, ratio / bound);
      if (f(g.seeds) < bound * best.oracle_value) ++violations;
    }
  }
  r.metrics["instances"] = kInstances;
  r.metrics["epsilon"] = kEps;
  r.metrics["violations"] = violations;
  r.metrics["worst_ratio_over_bound"] = worst;
  r.passed = violations == 0;
  return r;
}

CheckResult check_sketch_cv(std::uint64_t master_seed) {
  CheckResult r;
  r.name = "sketch coefficient of variation";
  constexpr std::size_t kK = 102;
  constexpr int kRedraws = 1000;

  // Measured CV of the estimate for node 0 over pool pairs.
  auto measure = [&](std::size_t leaves, std::size_t pool_size,
                     std::uint64_t tag) {
    std::vector<Edge> edges;
    for (NodeId v = 1; v < leaves; ++v) edges.push_back({0, v, 1.0});
    const DiffusionModel star =
        DiffusionModel::independent_cascade(Graph(leaves, edges));
    std::vector<Simulation> pool;
    for (std::size_t i = 0; i < pool_size; ++i) {
      pool.push_back(sample_simulation(star, master_seed, i));
    }
    std::vector<double> est(kRedraws);
    parallel_for(kRedraws, [&](std::size_t t) {
      const SketchSet sk = build_sketches(star, pool, 1, kK,
                                          derive_seed(master_seed, tag, t));
      est[t] = sketch_query(sk, SeedSet{0}, pool_size) *
               static_cast<double>(pool_size);
    });
    const Moments m = sample_moments(est);
    const double pairs = static_cast<double>(leaves * pool_size);
    const double cv = std::sqrt(m.variance) / m.mean;
    const double finite_cv =
        std::sqrt((1.0 - (kK - 1.0) / pairs) / (kK - 2.0));
    return ordered_json{
        {"pairs", leaves * pool_size},
        {"mean", m.mean},
        {"mean_z", (m.mean - pairs) / std::sqrt(m.variance / kRedraws)},
        {"cv", cv},
        {"cv_finite_population", finite_cv},
        {"cv_asymptotic", 1.0 / std::sqrt(kK - 2.0)}};
  };
  const ordered_json main = measure(200, 1, 7);
  const ordered_json large = measure(200, 100, 8);

  // Lossless regime against the averaging oracle.
  const DiffusionModel model = gen_random_ic(
      10, 20, {0.2, 0.8}, {0.5, 2.0}, derive_seed(master_seed, 7, 1));
  OracleConfig cfg;
  cfg.pools = 3;
  cfg.pool_size = 50;
  cfg.tau = 2;
  cfg.master_seed = derive_seed(master_seed, 7, 2);
  const Oracle oracle = Oracle::build(model, cfg);
  const SketchedOracle sketched = SketchedOracle::build(
      oracle, model.num_nodes() * cfg.pool_size + 1,
      derive_seed(master_seed, 7, 3));
  int compared = 0, mismatches = 0;
  for (NodeId a = 0; a < model.num_nodes(); ++a) {
    for (NodeId b = a; b < model.num_nodes(); ++b) {
      const SeedSet seeds{a, b};
      ++compared;
      if (sketched.query(seeds) != oracle.query(seeds)) ++mismatches;
    }
  }
  const double cv = main["cv"].get<double>();
  r.metrics["k"] = kK;
  r.metrics["redraws"] = kRedraws;
  r.metrics["fixed_200_pairs"] = main;
  r.metrics["pool_20000_pairs"] = large;
  r.metrics["lossless_sets_compared"] = compared;
  r.metrics["lossless_mismatches"] = mismatches;
  r.passed = cv >= 0.08 && cv <= 0.12 && mismatches == 0;
  if (!(cv >= 0.08 && cv <= 0.12)) {
    r.detail =
        "with 200 pairs and k=102 the estimator's CV is "
        "sqrt((1-(k-1)/200)/(k-2)) = 0.070; the 1/sqrt(k-2) figure is the "
        "large-population limit, which the 20000-pair pool reproduces";
  }
  return r;
}

CheckResult check_rrs_bias(std::uint64_t master_seed) {
  CheckResult r;
  r.name = "RR search bias under dependence";
  constexpr std::uint64_t kSearches = 100000;
  const DiffusionModel model = gen_two_world_mixture();
  const DiffusionModel marginal = marginal_ic(model);
  const std::int32_t tau = kTwoWorldTau;
  const std::size_t n = model.num_nodes();
  std::vector<double> truth(n), marginal_mean(n);
  for (NodeId v = 0; v < n; ++v) {
    truth[v] = exact_influence(model, SeedSet{v}, tau);
    marginal_mean[v] = exact_influence(marginal, SeedSet{v}, tau);
  }
  auto argmax = [](const std::vector<double>& xs) {
    return static_cast<NodeId>(std::max_element(xs.begin(), xs.end()) -
                               xs.begin());
  };
  const NodeId true_best = argmax(truth);
  const NodeId marginal_best = argmax(marginal_mean);

  // Per-node hit counts are binomial with p = I(v) / n.
  auto within = [&](const RrsEstimate& est, const std::vector<double>& mean) {
    int bad = 0;
    for (NodeId v = 0; v < n; ++v) {
      const double p = mean[v] / static_cast<double>(n);
      const double sigma = static_cast<double>(n) *
                           std::sqrt(p * (1.0 - p) / kSearches);
      if (std::abs(est.estimate[v] - mean[v]) > 4.0 * sigma + 1e-12) ++bad;
    }
    return bad;
  };
  const RrsEstimate full = rrs_estimate(model, RrsMode::kFullSimulation,
                                        kSearches, tau,
                                        derive_seed(master_seed, 8, 0));
  const RrsEstimate marg = rrs_estimate(model, RrsMode::kMarginal, kSearches,
                                        tau, derive_seed(master_seed, 8, 1));
  const int full_bad = within(full, truth);
  const int marg_bad = within(marg, marginal_mean);
  const NodeId full_best = argmax(full.estimate);
  const NodeId marg_best = argmax(marg.estimate);
  r.metrics["true_influence"] = truth;
  r.metrics["marginal_expectation"] = marginal_mean;
  r.metrics["true_argmax"] = true_best;
  r.metrics["marginal_argmax"] = marginal_best;
  r.metrics["searches"] = kSearches;
  r.metrics["full_estimates"] = full.estimate;
  r.metrics["full_outside_4sigma"] = full_bad;
  r.metrics["full_argmax"] = full_best;
  r.metrics["marginal_estimates"] = marg.estimate;
  r.metrics["marginal_outside_4sigma"] = marg_bad;
  r.metrics["marginal_mc_argmax"] = marg_best;
  r.passed = marginal_best != true_best && full_bad == 0 &&
             full_best == true_best && marg_bad == 0 &&
             marg_best != true_best;
  return r;
}

CheckResult check_adaptive(std::uint64_t master_seed) {
  CheckResult r;
  r.name = "adaptive sample size";
  constexpr double kEps = 0.1, kDelta = 0.1;
  constexpr int kRuns = 5;
  struct Fixture {
    const char* name;
    DiffusionModel model;
    std::size_t s;
    std::int32_t tau;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({"max_cover", gen_max_cover(), 2, 1});
  fixtures.push_back({"independent_star_20", gen_star(20, false), 1, 1});
  bool ok = true;
  auto rows = ordered_json::array();
  for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
    const Fixture& fx = fixtures[fi];
    const ExactInfluence exact(fx.model, fx.tau);
    const double opt = exact_optimum(exact, fx.s);
    for (int run = 0; run < kRuns; ++run) {
      const MaximizerResult res = adaptive_maximize(
          fx.model, fx.s, fx.tau, kEps, kDelta, BaseAlgorithm::kBruteForce,
          derive_seed(master_seed, 9, fi * 100 + run));
      const double value = exact(res.seeds);
      const double share =
          static_cast<double>(res.optimization_simulations) /
          static_cast<double>(res.worst_case_budget);
      const bool cap = res.simulations_used <=
                       2 * res.worst_case_budget + res.validation_simulations;
      const bool good = res.accepted && share <= 0.1 &&
                        value >= (1.0 - 5.0 * kEps) * opt && cap;
      ok = ok && good;
      rows.push_back({{"fixture", fx.name},
                      {"run", run},
                      {"seeds", res.seeds.to_string()},
                      {"exact_value", value},
                      {"opt", opt},
                      {"accepted", res.accepted},
                      {"rounds", res.rounds},
                      {"optimization_simulations",
                       res.optimization_simulations},
                      {"validation_simulations", res.validation_simulations},
                      {"worst_case_budget", res.worst_case_budget},
                      {"budget_share", share},
                      {"total_share",
                       static_cast<double>(res.simulations_used) /
                           static_cast<double>(res.worst_case_budget)},
                      {"hard_cap_holds", cap}});
    }
  }
  r.metrics["epsilon"] = kEps;
  r.metrics["delta"] = kDelta;
  r.metrics["runs"] = std::move(rows);
  r.passed = ok;
  return r;
}

CheckResult check_depth_lemma(std::uint64_t master_seed) {
  CheckResult r;
  r.name = "step-limited influence from mean depth";
  constexpr int kInstances = 20;
  int checks = 0, violations = 0;
  double worst = 1e300;
  for (int i = 0; i < kInstances; ++i) {
    const int family = std::array{0, 1, 2, 4}[i % 4];
    const std::size_t n = 6 + i % 3;
    const DiffusionModel model = family_instance(
        family, n, 8 + i % 4, derive_seed(master_seed, 11, i));
    const std::int32_t full = static_cast<std::int32_t>(n) - 1;
    for (const SeedSet& seeds :
         {SeedSet{0}, SeedSet{1, static_cast<NodeId>(n - 1)}}) {
      const DepthProfile prof = depth_profile(model, seeds, full);
      const double total = prof.influence_at(full);
      for (double eps : {0.5, 0.25}) {
        const auto t = static_cast<std::int64_t>(std::ceil(prof.mean_depth / eps));
        const double lhs = prof.influence_at(t);
        ++checks;
        worst = std::min(worst, lhs / ((1.0 - eps) * total));
        if (lhs < (1.0 - eps) * total * (1.0 - 1e-12)) ++violations;
      }
    }
  }
  r.metrics["instances"] = kInstances;
  r.metrics["checks"] = checks;
  r.metrics["violations"] = violations;
  r.metrics["worst_ratio"] = worst;
  r.passed = violations == 0;
  return r;
}

const std::map<int, std::function<CheckResult(std::uint64_t)>>& registry() {
  static const std::map<int, std::function<CheckResult(std::uint64_t)>> m = {
      {1, check_tree_variance},
      {2, check_variance_audit},
      {3,
       [](std::uint64_t seed) {
         CheckResult r = check_lemma_averaging(seed, OracleMode::kAveraging);
         r.name = "averaging oracle";
         return r;
       }},
      {4, check_lemma_moa},
      {5, check_im_end_to_end},
      {6, check_greedy_perturbed},
      {7, check_sketch_cv},
      {8, check_rrs_bias},
      {9, check_adaptive},
      {11, check_depth_lemma},
  };
  return m;
}

}  // namespace

std::vector<int> bench_check_ids() {
  std::vector<int> ids;
  for (const auto& [id, fn] : registry()) ids.push_back(id);
  return ids;
}

CheckResult run_check(int id, std::uint64_t master_seed) {
  const auto it = registry().find(id);
  if (it == registry().end()) {
    throw InvalidInput("unknown check " + std::to_string(id));
  }
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = it->second(master_seed);
  r.id = id;
  r.seconds = std::chrono::duration<double>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

std::vector<CheckResult> run_checks(const std::vector<int>& ids,
                                    std::uint64_t master_seed) {
  std::vector<CheckResult> out;
  for (int id : ids) out.push_back(run_check(id, master_seed));
  return out;
}

std::vector<CheckResult> run_bench(std::uint64_t master_seed,
                                   std::size_t threads,
                                   std::size_t other_threads) {
  const std::size_t saved = worker_count();
  const auto ids = bench_check_ids();
  set_worker_count(threads);
  std::vector<CheckResult> first = run_checks(ids, master_seed);
  const auto start = std::chrono::steady_clock::now();
  set_worker_count(other_threads);
  const std::vector<CheckResult> second = run_checks(ids, master_seed);
  set_worker_count(saved);

  CheckResult det;
  det.id = kDeterminismCheck;
  det.name = "thread-count determinism";
  auto differing = ordered_json::array();
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i].passed != second[i].passed ||
        first[i].metrics.dump() != second[i].metrics.dump()) {
      differing.push_back(first[i].id);
    }
  }
  det.metrics["threads"] = {threads, other_threads};
  det.metrics["checks_compared"] = first.size();
  det.metrics["differing_checks"] = differing;
  det.passed = differing.empty();
  det.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  first.push_back(std::move(det));
  std::sort(first.begin(), first.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.id < b.id;
            });
  return first;
}

nlohmann::ordered_json to_json(const CheckResult& result) {
  ordered_json j;
  j["id"] = result.id;
  j["name"] = result.name;
  j["passed"] = result.passed;
  j["metrics"] = result.metrics;
  if (!result.detail.empty()) j["detail"] = result.detail;
  j["seconds"] = result.seconds;
  return j;
}

}  // namespace simoracle
