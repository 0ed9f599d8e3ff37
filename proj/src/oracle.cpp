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

#include "simoracle/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "simoracle/error.hpp"
#include "simoracle/parallel.hpp"
#include "simoracle/reach.hpp"

namespace simoracle {

void OracleConfig::validate() const {
  if (pools < 1) throw InvalidInput("oracle needs at least one pool");
  if (pools > 1 && pools % 2 == 0) {
    throw InvalidInput("pool count must be odd");
  }
  if (pool_size < 1) throw InvalidInput("pool size must be positive");
  if (tau < 0) throw InvalidInput("tau must be nonnegative");
}

std::string to_string(OracleMode mode) {
  return mode == OracleMode::kAveraging ? "avg" : "moa";
}

OracleMode parse_oracle_mode(const std::string& text) {
  if (text == "avg" || text == "averaging") return OracleMode::kAveraging;
  if (text == "moa" || text == "median_of_averages") {
    return OracleMode::kMedianOfAverages;
  }
  throw InvalidInput("unknown oracle mode '" + text + "'");
}

std::uint64_t ceil_count(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<std::uint64_t>(std::max(nearest, 0.0));
  }
  return static_cast<std::uint64_t>(std::max(std::ceil(x), 0.0));
}

std::uint64_t odd_ceil(double x) {
  const std::uint64_t v = ceil_count(x);
  return v % 2 == 1 ? v : v + 1;
}

OracleConfig size_for_guarantee(double epsilon, double delta, double c,
                                OracleMode mode) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidInput("epsilon must be in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidInput("delta must be in (0, 1)");
  }
  if (!(c >= 1.0)) throw InvalidInput("c must be >= 1");
  OracleConfig cfg;
  if (mode == OracleMode::kAveraging) {
    cfg.pools = 1;
    cfg.pool_size = ceil_count(c / (epsilon * epsilon * delta));
  } else {
    cfg.pool_size = ceil_count(kPoolSizeFactor * c / (epsilon * epsilon));
    cfg.pools = odd_ceil(kPoolCountFactor * std::log(1.0 / delta));
  }
  return cfg;
}

Oracle Oracle::build(const DiffusionModel& model, const OracleConfig& config) {
  config.validate();
  Oracle o;
  o.model_ = &model;
  o.config_ = config;
  o.sims_.resize(config.total_simulations());
  parallel_for(o.sims_.size(), [&](std::size_t i) {
    sample_simulation_into(model, config.master_seed, i, o.sims_[i]);
  });
  return o;
}

void Oracle::enable_reach_masks() {
  const Graph& g = model_->graph();
  const std::size_t n = g.num_nodes();
  if (n > 64) throw InvalidInput("reach masks need at most 64 nodes");
  if (!masks_.empty()) return;
  std::vector<std::uint64_t> masks(sims_.size() * n);
  parallel_chunks(sims_.size(), [&](std::size_t, std::size_t b, std::size_t e) {
    ReachScratch scratch;
    for (std::size_t i = b; i < e; ++i) {
      for (NodeId v = 0; v < n; ++v) {
        const NodeId seed[] = {v};
        forward_reach(g, sims_[i], seed, config_.tau, scratch);
        std::uint64_t mask = 0;
        for (NodeId x : scratch.order()) mask |= std::uint64_t{1} << x;
        masks[i * n + v] = mask;
      }
    }
  });
  masks_ = std::move(masks);
}

double Oracle::simulation_value(std::size_t sim,
                                std::span<const NodeId> seeds) const {
  const Graph& g = model_->graph();
  if (!masks_.empty()) {
    const std::size_t n = g.num_nodes();
    std::uint64_t mask = 0;
    for (NodeId s : seeds) mask |= masks_[sim * n + s];
    if (g.unit_weights()) return static_cast<double>(std::popcount(mask));
    double total = 0.0;
    while (mask) {
      total += g.weight(static_cast<NodeId>(std::countr_zero(mask)));
      mask &= mask - 1;
    }
    return total;
  }
  thread_local ReachScratch scratch;
  forward_reach(g, sims_[sim], seeds, config_.tau, scratch);
  return canonical_weight(g, scratch.order());
}

std::vector<double> Oracle::pool_averages(const SeedSet& seeds) const {
  seeds.validate(model_->num_nodes());
  std::vector<double> out(config_.pools);
  const std::size_t l = config_.pool_size;
  for (std::size_t p = 0; p < config_.pools; ++p) {
    double sum = 0.0;
    for (std::size_t j = 0; j < l; ++j) {
      sum += simulation_value(p * l + j, seeds.ids());
    }
    out[p] = sum / static_cast<double>(l);
  }
  return out;
}

double Oracle::query(const SeedSet& seeds) const {
  return median_of(pool_averages(seeds));
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw InvalidInput("median of empty list");
  const std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(),
                   values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  return values[mid];
}

bool check_eps_approx(double estimate, double truth, double opt1,
                      double epsilon) {
  return std::abs(estimate - truth) <= epsilon * std::max(truth, opt1);
}

double wilson_upper(std::uint64_t failures, std::uint64_t trials, double z) {
  if (trials == 0) return 1.0;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double center = p + z2 / (2.0 * n);
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (center + spread) / (1.0 + z2 / n));
}

}  // namespace simoracle
