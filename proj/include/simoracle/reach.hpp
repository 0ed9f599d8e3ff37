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

#ifndef SIMORACLE_REACH_HPP_
#define SIMORACLE_REACH_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "simoracle/graph.hpp"
#include "simoracle/model.hpp"

namespace simoracle {

// Per-worker BFS buffers. The visited marks use an epoch counter so a query
// costs O(live edges touched) with no clearing between queries.
class ReachScratch {
 public:
  void begin(std::size_t num_nodes);
  bool seen(NodeId v) const { return mark_[v] == epoch_; }
  void visit(NodeId v, std::int32_t depth) {
    mark_[v] = epoch_;
    depth_[v] = depth;
    order_.push_back(v);
  }
  std::int32_t depth(NodeId v) const { return depth_[v]; }
  // Visited nodes in BFS order (nondecreasing depth).
  std::vector<NodeId>& order() { return order_; }
  const std::vector<NodeId>& order() const { return order_; }

 private:
  std::vector<std::uint32_t> mark_;
  std::vector<std::int32_t> depth_;
  std::vector<NodeId> order_;
  std::uint32_t epoch_ = 0;
};

// Forward BFS over the live edges of `sim` from all seeds, at most tau hops.
// Leaves the visited nodes and their depths in `scratch`.
void forward_reach(const Graph& graph, const Simulation& sim,
                   std::span<const NodeId> seeds, std::int32_t tau,
                   ReachScratch& scratch);

// Reverse BFS (against edge direction) from `target`, at most tau hops,
// following only edges for which live(e) holds.
template <typename LivePredicate>
void reverse_reach(const Graph& graph, NodeId target, std::int32_t tau,
                   LivePredicate&& live, ReachScratch& scratch) {
  scratch.begin(graph.num_nodes());
  scratch.visit(target, 0);
  auto& order = scratch.order();
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId v = order[head];
    const std::int32_t d = scratch.depth(v);
    if (d >= tau) break;
    for (EdgeId e : graph.in_edges(v)) {
      const NodeId u = graph.edge(e).tail;
      if (scratch.seen(u) || !live(e)) continue;
      scratch.visit(u, d + 1);
    }
  }
}

// Nodes reachable from `seeds` by live paths of length <= tau, ascending.
// Throws InvalidInput("empty seed set") for empty seeds.
std::vector<NodeId> reach_set(const Graph& graph, const Simulation& sim,
                              const SeedSet& seeds, std::int32_t tau);
std::vector<NodeId> reach_set(const Graph& graph, const Simulation& sim,
                              const SeedSet& seeds, std::int32_t tau,
                              ReachScratch& scratch);

// Sum of node weights over reach_set.
double reach_value(const Graph& graph, const Simulation& sim,
                   const SeedSet& seeds, std::int32_t tau);
double reach_value(const Graph& graph, const Simulation& sim,
                   const SeedSet& seeds, std::int32_t tau,
                   ReachScratch& scratch);

// Weight of a node set summed in ascending node order. Every estimator sums
// utilities this way so different evaluation routes agree bit for bit.
// Sorts `nodes` in place.
double canonical_weight(const Graph& graph, std::vector<NodeId>& nodes);

}  // namespace simoracle

#endif  // SIMORACLE_REACH_HPP_
