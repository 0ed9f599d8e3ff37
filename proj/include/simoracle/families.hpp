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

#ifndef SIMORACLE_FAMILIES_HPP_
#define SIMORACLE_FAMILIES_HPP_

// Deterministic instance generators.

#include <cstdint>

#include "simoracle/model.hpp"

namespace simoracle {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Complete binary tree with `depth` edge levels, root 0, children of i at
// 2i+1 and 2i+2, every edge p = 1/2. Depth in 1..20.
DiffusionModel gen_tree(std::int32_t depth);

// Center 0 with edges to leaves 1..leaves, p = 1/2. When dependent, all
// edges form one group that is live or dead as a whole.
DiffusionModel gen_star(std::size_t leaves, bool dependent);

// Node 0 has one edge to hub 1 with p = 99/(n-1); the hub reaches every
// other node with p = 1. Two-step influence of node 0 is exactly 100 and its
// variance is 99(n-100). Requires n >= 100.
DiffusionModel gen_polysimu(std::size_t n);

inline constexpr NodeId kPolysimuSource = 0;

// 14-node mixture of a "red" and a "blue" deterministic IC model with
// weights 1/2 each. With tau = 4 the true maximizer is node 0 (influence 3)
// while the edge-marginal IC model prefers node 5 (2.5 against 1.9375).
DiffusionModel gen_two_world_mixture();

inline constexpr std::int32_t kTwoWorldTau = 4;

// Reproducible random digraph without self loops or parallel edges. p and
// the node weights are uniform over their ranges (a point range gives a
// constant).
Graph random_graph(std::size_t n, std::size_t m, Range p, Range weight,
                   std::uint64_t seed);

DiffusionModel gen_random_ic(std::size_t n, std::size_t m, Range p,
                             Range weight, std::uint64_t seed);

// Random LT: incoming weights at each node scaled to a total in [0.3, 1].
DiffusionModel gen_random_lt(std::size_t n, std::size_t m, std::uint64_t seed);

// Random b-dependence: each node's out-edges are split into consecutive
// groups of at most b edges, each group with its own probability.
DiffusionModel gen_random_bdep(std::size_t n, std::size_t m, std::size_t b,
                               std::uint64_t seed);

// Mixture of two random IC models on the same nodes.
DiffusionModel gen_random_mixture(std::size_t n, std::size_t m,
                                  std::uint64_t seed);

// Deterministic max-cover fixture: 0 -> {1, 2}, 3 -> {4}, p = 1.
DiffusionModel gen_max_cover();

}  // namespace simoracle

#endif  // SIMORACLE_FAMILIES_HPP_
