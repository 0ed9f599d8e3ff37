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

#include "simoracle/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simoracle/error.hpp"
#include "simoracle/exact.hpp"
#include "simoracle/parallel.hpp"
#include "simoracle/reach.hpp"
#include "simoracle/rng.hpp"

namespace simoracle {

namespace {

constexpr std::uint64_t kOptimizationTag = 0x0971;
constexpr std::uint64_t kValidationTag = 0x7a11;

// Index of the largest value; the first one wins ties.
std::size_t argmax_first(const std::vector<double>& values,
                         const std::vector<char>& allowed) {
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!allowed[i]) continue;
    if (best == values.size() || values[i] > values[best]) best = i;
  }
  return best;
}

void check_s(std::size_t s) {
  if (s < 1) throw InvalidInput("seed budget s must be at least 1");
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(out);
}

MaximizerResult brute_force_max(const SetFunction& f, std::size_t num_nodes,
                                std::size_t s, std::uint64_t budget) {
  check_s(s);
  if (num_nodes == 0) throw InvalidInput("model has no nodes");
  const std::size_t k = std::min(s, num_nodes);
  const double count = binomial(num_nodes, k);
  if (count > static_cast<double>(budget)) {
    throw BudgetExceeded("brute force needs " + std::to_string(count) +
                         " subsets, budget is " + std::to_string(budget));
  }

  // All k-subsets in lexicographic order, flattened.
  const std::size_t total = static_cast<std::size_t>(count);
  std::vector<NodeId> subsets;
  subsets.reserve(total * k);
  std::vector<NodeId> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<NodeId>(i);
  for (;;) {
    subsets.insert(subsets.end(), cur.begin(), cur.end());
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == num_nodes - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }

  std::vector<double> values(total);
  parallel_for(total, [&](std::size_t i) {
    values[i] = f(SeedSet(std::vector<NodeId>(
        subsets.begin() + static_cast<std::ptrdiff_t>(i * k),
        subsets.begin() + static_cast<std::ptrdiff_t>((i + 1) * k))));
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i) {
    if (values[i] > values[best]) best = i;
  }

  MaximizerResult out;
  out.seeds = SeedSet(std::vector<NodeId>(
      subsets.begin() + static_cast<std::ptrdiff_t>(best * k),
      subsets.begin() + static_cast<std::ptrdiff_t>((best + 1) * k)));
  out.oracle_value = values[best];
  out.method = "brute";
  return out;
}

MaximizerResult brute_force_max(Oracle& oracle, std::size_t s,
                                std::uint64_t budget) {
  const std::size_t n = oracle.model().num_nodes();
  if (n <= 64) oracle.enable_reach_masks();
  MaximizerResult out = brute_force_max(
      [&](const SeedSet& seeds) { return oracle.query(seeds); }, n, s, budget);
  out.simulations_used = oracle.config().total_simulations();
  return out;
}

MaximizerResult greedy_max(const SetFunction& f, std::size_t num_nodes,
                           std::size_t s) {
  check_s(s);
  const std::size_t steps = std::min(s, num_nodes);
  MaximizerResult out;
  out.method = "greedy";
  std::vector<char> allowed(num_nodes, 1);
  std::vector<double> values(num_nodes);
  double current = 0.0;
  for (std::size_t step = 0; step < steps; ++step) {
    parallel_for(num_nodes, [&](std::size_t u) {
      if (allowed[u]) values[u] = f(out.seeds.with(static_cast<NodeId>(u)));
    });
    const std::size_t best = argmax_first(values, allowed);
    const NodeId v = static_cast<NodeId>(best);
    out.trace.push_back({v, values[best] - current, values[best]});
    current = values[best];
    out.seeds = out.seeds.with(v);
    allowed[best] = 0;
  }
  out.oracle_value = current;
  return out;
}

namespace {

// Per-simulation distance from the current seed set; tau + 1 = unreached.
class ExplicitReach {
 public:
  ExplicitReach(const Oracle& oracle)
      : oracle_(oracle),
        graph_(oracle.model().graph()),
        n_(graph_.num_nodes()),
        tau_(oracle.config().tau),
        dist_(oracle.simulations().size() * n_, tau_ + 1),
        base_(oracle.simulations().size(), 0.0) {}

  // Weight newly covered in simulation i if u joined the seed set.
  double gain(std::size_t i, NodeId u, ReachScratch& scratch) const {
    const std::int32_t* dist = &dist_[i * n_];
    double total = 0.0;
    walk(i, u, scratch, [&](NodeId x, std::int32_t) {
      if (dist[x] > tau_) total += graph_.weight(x);
    });
    return total;
  }

  void add(NodeId u, ReachScratch& scratch) {
    for (std::size_t i = 0; i < base_.size(); ++i) {
      std::int32_t* dist = &dist_[i * n_];
      walk(i, u, scratch, [&](NodeId x, std::int32_t d) {
        if (dist[x] > tau_) base_[i] += graph_.weight(x);
        dist[x] = d;
      });
    }
  }

  double base(std::size_t i) const { return base_[i]; }

 private:
  // BFS from u that stops expanding at nodes the seed set reaches no later.
  // `on_new` sees every node whose distance improves.
  template <typename F>
  void walk(std::size_t i, NodeId u, ReachScratch& scratch, F&& on_new) const {
    const std::int32_t* dist = &dist_[i * n_];
    const Simulation& sim = oracle_.simulations()[i];
    scratch.begin(n_);
    if (dist[u] <= 0) return;
    scratch.visit(u, 0);
    auto& order = scratch.order();
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      const std::int32_t d = scratch.depth(v);
      on_new(v, d);
      if (d >= tau_) continue;
      for (EdgeId e : graph_.out_edges(v)) {
        if (!sim.is_live(e)) continue;
        const NodeId x = graph_.edge(e).head;
        if (scratch.seen(x) || dist[x] <= d + 1) continue;
        scratch.visit(x, d + 1);
      }
    }
  }

  const Oracle& oracle_;
  const Graph& graph_;
  std::size_t n_;
  std::int32_t tau_;
  std::vector<std::int32_t> dist_;
  std::vector<double> base_;
};

}  // namespace

MaximizerResult greedy_max(const Oracle& oracle, std::size_t s) {
  check_s(s);
  const std::size_t n = oracle.model().num_nodes();
  const OracleConfig& cfg = oracle.config();
  const std::size_t steps = std::min(s, n);
  ExplicitReach reach(oracle);

  MaximizerResult out;
  out.method = "greedy";
  out.simulations_used = cfg.total_simulations();
  std::vector<char> allowed(n, 1);
  std::vector<double> values(n);
  double current = 0.0;
  for (std::size_t step = 0; step < steps; ++step) {
    parallel_chunks(n, [&](std::size_t, std::size_t b, std::size_t e) {
      ReachScratch scratch;
      std::vector<double> pools(cfg.pools);
      for (std::size_t u = b; u < e; ++u) {
        if (!allowed[u]) continue;
        for (std::size_t p = 0; p < cfg.pools; ++p) {
          double sum = 0.0;
          for (std::size_t j = 0; j < cfg.pool_size; ++j) {
            const std::size_t i = p * cfg.pool_size + j;
            sum += reach.base(i) +
                   reach.gain(i, static_cast<NodeId>(u), scratch);
          }
          pools[p] = sum / static_cast<double>(cfg.pool_size);
        }
        values[u] = median_of(pools);
      }
    });
    const std::size_t best = argmax_first(values, allowed);
    const NodeId v = static_cast<NodeId>(best);
    out.trace.push_back({v, values[best] - current, values[best]});
    current = values[best];
    out.seeds = out.seeds.with(v);
    allowed[best] = 0;
    ReachScratch scratch;
    reach.add(v, scratch);
  }
  out.oracle_value = out.seeds.empty() ? 0.0 : oracle.query(out.seeds);
  return out;
}

MaximizerResult greedy_max(const SketchedOracle& oracle, std::size_t s) {
  check_s(s);
  const std::size_t n = oracle.num_nodes();
  const auto pools = oracle.pools();
  const std::size_t steps = std::min(s, n);

  MaximizerResult out;
  out.method = "greedy-sketch";
  out.simulations_used = pools.size() * oracle.pool_size();
  std::vector<std::vector<SketchEntry>> merged(pools.size());
  std::vector<char> allowed(n, 1);
  std::vector<double> values(n);
  double current = 0.0;
  for (std::size_t step = 0; step < steps; ++step) {
    parallel_for(n, [&](std::size_t u) {
      if (!allowed[u]) return;
      std::vector<double> est(pools.size());
      for (std::size_t p = 0; p < pools.size(); ++p) {
        const auto entries = merge_bottom_k(
            merged[p], pools[p].sketches[u].entries, pools[p].k);
        est[p] = estimate_from_entries(pools[p], entries, oracle.pool_size());
      }
      values[u] = median_of(std::move(est));
    });
    const std::size_t best = argmax_first(values, allowed);
    const NodeId v = static_cast<NodeId>(best);
    out.trace.push_back({v, values[best] - current, values[best]});
    current = values[best];
    out.seeds = out.seeds.with(v);
    allowed[best] = 0;
    for (std::size_t p = 0; p < pools.size(); ++p) {
      merged[p] =
          merge_bottom_k(merged[p], pools[p].sketches[v].entries, pools[p].k);
    }
  }
  out.oracle_value = current;
  return out;
}

OracleConfig im_oracle_config(std::size_t num_nodes, std::size_t s,
                              double epsilon, double delta, double c) {
  check_s(s);
  OracleConfig cfg =
      size_for_guarantee(epsilon, delta, c, OracleMode::kMedianOfAverages);
  const double sets = binomial(num_nodes, std::min(s, num_nodes));
  cfg.pools = odd_ceil(kPoolCountFactor * std::log(std::max(sets, 1.0) / delta));
  return cfg;
}

namespace {

MaximizerResult run_on_oracle(Oracle& oracle, std::size_t s,
                              BaseAlgorithm base) {
  return base == BaseAlgorithm::kBruteForce ? brute_force_max(oracle, s)
                                            : greedy_max(oracle, s);
}

}  // namespace

MaximizerResult maximize_im(const DiffusionModel& model, std::size_t s,
                            std::int32_t tau, double epsilon, double delta,
                            std::uint64_t master_seed) {
  const std::size_t n = model.num_nodes();
  OracleConfig cfg =
      im_oracle_config(n, s, epsilon, delta, c_value(model, tau));
  cfg.tau = tau;
  cfg.master_seed = master_seed;
  Oracle oracle = Oracle::build(model, cfg);
  const bool brute = binomial(n, std::min(s, n)) <=
                     static_cast<double>(kBruteForceBudget);
  MaximizerResult out = run_on_oracle(
      oracle, s, brute ? BaseAlgorithm::kBruteForce : BaseAlgorithm::kGreedy);
  out.optimization_simulations = out.simulations_used;
  out.worst_case_budget = out.simulations_used;
  return out;
}

std::string to_string(BaseAlgorithm base) {
  return base == BaseAlgorithm::kBruteForce ? "brute" : "greedy";
}

BaseAlgorithm parse_base_algorithm(const std::string& text) {
  if (text == "brute") return BaseAlgorithm::kBruteForce;
  if (text == "greedy") return BaseAlgorithm::kGreedy;
  throw InvalidInput("unknown base algorithm '" + text + "'");
}

MaximizerResult adaptive_maximize(const DiffusionModel& model, std::size_t s,
                                  std::int32_t tau, double epsilon,
                                  double delta, BaseAlgorithm base,
                                  std::uint64_t master_seed) {
  const std::size_t n = model.num_nodes();
  const double c = c_value(model, tau);
  OracleConfig worst = im_oracle_config(n, s, epsilon, delta, c);
  worst.tau = tau;
  worst.master_seed = master_seed;
  const std::uint64_t budget = worst.total_simulations();
  const std::uint64_t n0 =
      size_for_guarantee(epsilon, delta, c, OracleMode::kAveraging).pool_size;
  const std::uint64_t opt_seed = derive_seed(master_seed, kOptimizationTag, 0);

  std::uint64_t validation = 0;
  std::uint64_t optimized = 0;  // distinct simulations of the doubling stream
  for (std::uint32_t round = 0;; ++round) {
    const std::uint64_t size =
        round < 63 ? n0 << round : std::numeric_limits<std::uint64_t>::max();
    if (size >= budget || (size >> round) != n0) {
      Oracle oracle = Oracle::build(model, worst);
      MaximizerResult out = run_on_oracle(oracle, s, base);
      out.method = "adaptive-fallback";
      out.optimization_simulations = optimized + budget;
      out.validation_simulations = validation;
      out.simulations_used = optimized + budget + validation;
      out.worst_case_budget = budget;
      out.rounds = round + 1;
      out.accepted = false;
      return out;
    }

    OracleConfig cfg;
    cfg.pools = 1;
    cfg.pool_size = size;
    cfg.tau = tau;
    cfg.master_seed = opt_seed;
    Oracle oracle = Oracle::build(model, cfg);
    MaximizerResult cand = run_on_oracle(oracle, s, base);
    optimized = size;

    const double round_delta =
        delta / (2.0 * (round + 1.0) * (round + 1.0));
    OracleConfig vcfg = size_for_guarantee(epsilon, round_delta, c,
                                           OracleMode::kMedianOfAverages);
    vcfg.tau = tau;
    vcfg.master_seed = derive_seed(master_seed, kValidationTag, round);
    const Oracle check = Oracle::build(model, vcfg);
    const double validated = check.query(cand.seeds);
    validation += vcfg.total_simulations();

    if (validated >= (1.0 - 2.0 * epsilon) * cand.oracle_value) {
      cand.method = "adaptive-" + to_string(base);
      cand.oracle_value = validated;
      cand.optimization_simulations = optimized;
      cand.validation_simulations = validation;
      cand.simulations_used = optimized + validation;
      cand.worst_case_budget = budget;
      cand.rounds = round + 1;
      cand.accepted = true;
      return cand;
    }
  }
}

}  // namespace simoracle
