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

#include "simoracle/reach.hpp"

#include <algorithm>

#include "simoracle/error.hpp"

namespace simoracle {

void ReachScratch::begin(std::size_t num_nodes) {
  if (mark_.size() < num_nodes) {
    mark_.assign(num_nodes, 0);
    depth_.assign(num_nodes, 0);
    epoch_ = 0;
  }
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
  order_.clear();
}

void forward_reach(const Graph& graph, const Simulation& sim,
                   std::span<const NodeId> seeds, std::int32_t tau,
                   ReachScratch& scratch) {
  scratch.begin(graph.num_nodes());
  for (NodeId s : seeds) {
    if (!scratch.seen(s)) scratch.visit(s, 0);
  }
  auto& order = scratch.order();
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId u = order[head];
    const std::int32_t d = scratch.depth(u);
    if (d >= tau) break;
    for (EdgeId e : graph.out_edges(u)) {
      const NodeId v = graph.edge(e).head;
      if (scratch.seen(v) || !sim.is_live(e)) continue;
      scratch.visit(v, d + 1);
    }
  }
}

std::vector<NodeId> reach_set(const Graph& graph, const Simulation& sim,
                              const SeedSet& seeds, std::int32_t tau,
                              ReachScratch& scratch) {
  seeds.validate(graph.num_nodes());
  if (tau < 0) throw InvalidInput("tau must be nonnegative");
  forward_reach(graph, sim, seeds.ids(), tau, scratch);
  std::vector<NodeId> out = scratch.order();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> reach_set(const Graph& graph, const Simulation& sim,
                              const SeedSet& seeds, std::int32_t tau) {
  ReachScratch scratch;
  return reach_set(graph, sim, seeds, tau, scratch);
}

double canonical_weight(const Graph& graph, std::vector<NodeId>& nodes) {
  if (graph.unit_weights()) return static_cast<double>(nodes.size());
  std::sort(nodes.begin(), nodes.end());
  double total = 0.0;
  for (NodeId v : nodes) total += graph.weight(v);
  return total;
}

double reach_value(const Graph& graph, const Simulation& sim,
                   const SeedSet& seeds, std::int32_t tau,
                   ReachScratch& scratch) {
  seeds.validate(graph.num_nodes());
  if (tau < 0) throw InvalidInput("tau must be nonnegative");
  forward_reach(graph, sim, seeds.ids(), tau, scratch);
  return canonical_weight(graph, scratch.order());
}

double reach_value(const Graph& graph, const Simulation& sim,
                   const SeedSet& seeds, std::int32_t tau) {
  ReachScratch scratch;
  return reach_value(graph, sim, seeds, tau, scratch);
}

}  // namespace simoracle
