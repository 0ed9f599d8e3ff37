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

#ifndef SIMORACLE_ORACLE_HPP_
#define SIMORACLE_ORACLE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simoracle/graph.hpp"
#include "simoracle/model.hpp"

namespace simoracle {

// Median-of-averages constants: pools of 4 eps^-2 c simulations,
// 28 ln(1/delta) pools, 112 eps^-2 c ln(1/delta) simulations overall.
inline constexpr double kPoolSizeFactor = 4.0;
inline constexpr double kPoolCountFactor = 28.0;
inline constexpr double kTotalSampleFactor = 112.0;

struct OracleConfig {
  std::uint64_t pools = 1;      // r; odd when > 1
  std::uint64_t pool_size = 1;  // l
  std::int32_t tau = 0;
  std::uint64_t master_seed = 0;

  std::uint64_t total_simulations() const { return pools * pool_size; }
  // Throws InvalidInput.
  void validate() const;
};

enum class OracleMode { kAveraging, kMedianOfAverages };

std::string to_string(OracleMode mode);
OracleMode parse_oracle_mode(const std::string& text);

// averaging: r = 1, l = ceil(c / (eps^2 delta)).
// median of averages: l = ceil(4 c / eps^2), r = smallest odd >= 28 ln(1/delta).
// tau and master_seed are left at 0. Requires 0 < eps < 1, 0 < delta < 1,
// c >= 1.
OracleConfig size_for_guarantee(double epsilon, double delta, double c,
                                OracleMode mode);

// ceil(x), ignoring representation error of a few ulps above an integer.
std::uint64_t ceil_count(double x);
// Smallest odd integer >= x (with the same tolerance).
std::uint64_t odd_ceil(double x);

// Median over r pools of l-simulation reachability averages. r = 1 is the
// plain averaging oracle. Immutable once built; concurrent queries are safe.
// The model must outlive the oracle.
class Oracle {
 public:
  static Oracle build(const DiffusionModel& model, const OracleConfig& config);

  const OracleConfig& config() const { return config_; }
  const DiffusionModel& model() const { return *model_; }
  const Simulation& simulation(std::uint64_t pool, std::uint64_t j) const {
    return sims_[pool * config_.pool_size + j];
  }
  std::span<const Simulation> simulations() const { return sims_; }

  double query(const SeedSet& seeds) const;
  std::vector<double> pool_averages(const SeedSet& seeds) const;

  // Caches one reach bitmask per (simulation, node) so that set queries are
  // unions of masks. Only for graphs with at most 64 nodes; answers are
  // identical to the BFS route.
  void enable_reach_masks();
  bool has_reach_masks() const { return !masks_.empty(); }

 private:
  double simulation_value(std::size_t sim, std::span<const NodeId> seeds) const;

  const DiffusionModel* model_ = nullptr;
  OracleConfig config_;
  std::vector<Simulation> sims_;
  std::vector<std::uint64_t> masks_;
};

// Median of an odd-length (or length-1) list; the lower middle otherwise.
double median_of(std::vector<double> values);

// |estimate - truth| <= eps * max(truth, opt1).
bool check_eps_approx(double estimate, double truth, double opt1,
                      double epsilon);

// One-sided Wilson score upper bound for a binomial proportion.
inline constexpr double kZ99OneSided = 2.3263478740408408;
double wilson_upper(std::uint64_t failures, std::uint64_t trials,
                    double z = kZ99OneSided);

}  // namespace simoracle

#endif  // SIMORACLE_ORACLE_HPP_
