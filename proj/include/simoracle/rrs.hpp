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

#ifndef SIMORACLE_RRS_HPP_
#define SIMORACLE_RRS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "simoracle/model.hpp"

namespace simoracle {

enum class RrsMode {
  // Each search reverse-traverses one freshly drawn full simulation.
  kFullSimulation,
  // Each search flips every encountered edge independently with its marginal
  // probability. Unbiased for IC, biased whenever edges are dependent.
  kMarginal,
};

std::string to_string(RrsMode mode);
RrsMode parse_rrs_mode(const std::string& text);

struct RrsEstimate {
  std::vector<double> estimate;     // per-node influence estimate
  std::vector<std::uint64_t> hits;  // searches whose reverse set held v
  std::uint64_t num_searches = 0;
  double total_weight = 0.0;  // estimate[v] = total_weight * hits / searches
};

// Reverse reachability searches: pick a target z with probability
// w(z) / W (uniform for unit weights), collect every node that reaches z
// within tau live steps. Search j uses simulation index j, so results do not
// depend on the worker count.
RrsEstimate rrs_estimate(const DiffusionModel& model, RrsMode mode,
                         std::uint64_t num_searches, std::int32_t tau,
                         std::uint64_t master_seed);

}  // namespace simoracle

#endif  // SIMORACLE_RRS_HPP_
