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

#ifndef SIMORACLE_MAXIMIZE_HPP_
#define SIMORACLE_MAXIMIZE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "simoracle/graph.hpp"
#include "simoracle/model.hpp"
#include "simoracle/oracle.hpp"
#include "simoracle/sketch.hpp"

namespace simoracle {

inline constexpr std::uint64_t kBruteForceBudget = 1'000'000;

struct GreedyStep {
  NodeId node = 0;
  double gain = 0.0;   // F(S + node) - F(S), with F(empty) = 0
  double value = 0.0;  // F(S + node)
};

struct MaximizerResult {
  SeedSet seeds;
  double oracle_value = 0.0;
  std::uint64_t simulations_used = 0;
  std::string method;
  std::vector<GreedyStep> trace;

  // Filled by the adaptive wrapper.
  std::uint64_t optimization_simulations = 0;
  std::uint64_t validation_simulations = 0;
  std::uint64_t worst_case_budget = 0;
  std::uint32_t rounds = 0;
  bool accepted = false;
};

using SetFunction = std::function<double(const SeedSet&)>;

// C(n, k) as a double.
double binomial(std::size_t n, std::size_t k);

// Exact argmax of f over all subsets of size min(s, n); ties go to the
// lexicographically smallest id list. Throws BudgetExceeded when
// C(n, min(s, n)) > budget.
MaximizerResult brute_force_max(const SetFunction& f, std::size_t num_nodes,
                                std::size_t s,
                                std::uint64_t budget = kBruteForceBudget);
// Same over an oracle; uses cached reach masks on graphs of <= 64 nodes.
MaximizerResult brute_force_max(Oracle& oracle, std::size_t s,
                                std::uint64_t budget = kBruteForceBudget);

// Greedy by recomputing f(S + u) from scratch for every candidate. Lowest id
// wins ties.
MaximizerResult greedy_max(const SetFunction& f, std::size_t num_nodes,
                           std::size_t s);
// Greedy on an oracle, keeping the current reachability of S in every
// simulation and evaluating candidates incrementally.
MaximizerResult greedy_max(const Oracle& oracle, std::size_t s);
// Greedy on sketches, keeping the merged sketch of S per pool.
MaximizerResult greedy_max(const SketchedOracle& oracle, std::size_t s);

// Median-of-averages sizing for a uniform guarantee over all C(n, s) sets:
// l = ceil(4 c / eps^2), r = odd ceil(28 ln(C(n, s) / delta)).
OracleConfig im_oracle_config(std::size_t num_nodes, std::size_t s,
                              double epsilon, double delta, double c);

// Builds the median-of-averages oracle sized by im_oracle_config with
// c = c_value(model, tau) and returns its optimum: brute force when
// C(n, s) <= 10^6, greedy otherwise.
MaximizerResult maximize_im(const DiffusionModel& model, std::size_t s,
                            std::int32_t tau, double epsilon, double delta,
                            std::uint64_t master_seed);

enum class BaseAlgorithm { kBruteForce, kGreedy };

std::string to_string(BaseAlgorithm base);
BaseAlgorithm parse_base_algorithm(const std::string& text);

// Adaptive sample size. Round i optimizes an averaging oracle over the first
// n_0 * 2^i simulations of one stream (n_0 = averaging size for (eps, delta,
// c)), then validates the candidate on a fresh median-of-averages oracle
// sized for (eps, delta / (2 (i + 1)^2)). The candidate is accepted when the
// validated estimate is >= (1 - 2 eps) times its optimization value. Once
// the round budget reaches the maximize_im budget, that oracle is used and
// its optimum returned without validation.
//
// simulations_used counts distinct optimization simulations (rounds share a
// prefix) plus every validation simulation.
MaximizerResult adaptive_maximize(const DiffusionModel& model, std::size_t s,
                                  std::int32_t tau, double epsilon,
                                  double delta, BaseAlgorithm base,
                                  std::uint64_t master_seed);

}  // namespace simoracle

#endif  // SIMORACLE_MAXIMIZE_HPP_
