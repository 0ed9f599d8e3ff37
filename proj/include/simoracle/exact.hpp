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

#ifndef SIMORACLE_EXACT_HPP_
#define SIMORACLE_EXACT_HPP_

// Ground truth by weighted enumeration of live-edge outcomes.
//
// The enumerator walks the diffusion in BFS order and only branches on the
// randomness that can still change the outcome: an edge (or dependence
// group) is decided when its tail is active below the step limit and some
// head is still inactive; an LT node's incoming choice is revealed one
// active tail at a time via conditional probabilities. Each leaf is an
// equivalence class of full outcomes with its exact probability. Branches of
// probability zero are skipped.

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "simoracle/graph.hpp"
#include "simoracle/model.hpp"

namespace simoracle {

// Maximum number of enumerated outcome classes per seed set.
inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 25;

struct ExactMoments {
  double influence = 0.0;      // E[R]
  double second_moment = 0.0;  // E[R^2]
  // p(S, v, d): row-major [v * (tau + 1) + d], filled when requested.
  std::vector<double> step_probs;
  std::uint64_t outcomes = 0;

  double variance() const;
};

// Throws BudgetExceeded("instance too large for exact enumeration").
ExactMoments exact_moments(const DiffusionModel& model, const SeedSet& seeds,
                           std::int32_t tau, bool with_step_probs = false,
                           std::uint64_t budget = kEnumerationBudget);

double exact_influence(const DiffusionModel& model, const SeedSet& seeds,
                       std::int32_t tau);

struct ExactReport {
  std::int32_t tau = 0;
  double influence = 0.0;
  double variance = 0.0;
  // step_probs[v][d] for d in 0..tau.
  std::vector<std::vector<double>> step_probs;
  double opt1 = 0.0;  // max single-node influence
  std::uint64_t enumeration_size = 0;
};

ExactReport exact_report(const DiffusionModel& model, const SeedSet& seeds,
                         std::int32_t tau);

// max_v I^tau({v}).
double exact_opt1(const DiffusionModel& model, std::int32_t tau);

struct VarianceAudit {
  double lhs = 0.0;  // Var[R^tau(T)]
  double rhs = 0.0;  // c * I * max(I, OPT_1)
  bool holds = false;
  double influence = 0.0;
  double opt1 = 0.0;
};

VarianceAudit audit_variance_bound(const DiffusionModel& model,
                                   const SeedSet& seeds, std::int32_t tau,
                                   double c);

// Variance-bound factor: tau for IC and LT, 2*b*tau for b-dependence,
// (tau + 1) / p_min for mixtures. Throws InvalidInput for tau <= 0.
double c_value(const DiffusionModel& model, std::int32_t tau);

struct DepthProfile {
  double mean_depth = 0.0;  // D-bar(S); 0 when I(S) = 0
  std::vector<double> influence_by_tau;  // I^t(S), t = 0..tau_max

  // I^t(S) with t clamped to tau_max.
  double influence_at(std::int64_t t) const;
};

DepthProfile depth_profile(const DiffusionModel& model, const SeedSet& seeds,
                           std::int32_t tau_max);

// Memoized exact influence as a set function; safe for concurrent calls.
class ExactInfluence {
 public:
  ExactInfluence(const DiffusionModel& model, std::int32_t tau)
      : model_(&model), tau_(tau) {}

  double operator()(const SeedSet& seeds) const;
  std::size_t num_nodes() const { return model_->num_nodes(); }
  std::int32_t tau() const { return tau_; }

 private:
  const DiffusionModel* model_;
  std::int32_t tau_;
  mutable std::mutex mutex_;
  mutable std::map<SeedSet, double> cache_;
};

}  // namespace simoracle

#endif  // SIMORACLE_EXACT_HPP_
