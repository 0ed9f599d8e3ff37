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

#ifndef SIMORACLE_SKETCH_HPP_
#define SIMORACLE_SKETCH_HPP_

// Combined bottom-k reachability sketches over a pool of simulations.
//
// Every (node u, simulation i) pair gets an independent rank Exp(w(u)).
// The sketch of v keeps the k smallest ranks among pairs (u, i) with u
// reachable from v within tau live steps in simulation i. The sketch of a
// seed set is the bottom-k of the union of its members' sketches, so the
// summed reachability utility over the pool is estimated from O(k) entries
// per seed. With unit weights the estimate is (k-1)/u_k where u_k is the
// k-th smallest rank on the uniform scale; the coefficient of variation is
// at most 1/sqrt(k-2).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "simoracle/graph.hpp"
#include "simoracle/model.hpp"
#include "simoracle/oracle.hpp"

namespace simoracle {

struct SketchEntry {
  double rank = 0.0;
  NodeId node = 0;
  std::uint32_t sim = 0;

  // Ties in rank fall back to pair identity.
  auto operator<=>(const SketchEntry&) const = default;
};

struct NodeSketch {
  NodeId owner = 0;
  std::vector<SketchEntry> entries;  // strictly increasing, at most k
};

struct SketchSet {
  std::size_t k = 0;
  std::uint64_t rank_seed = 0;
  std::int32_t tau = 0;
  std::size_t pool_size = 0;
  std::vector<double> weights;  // node weights used for ranks
  std::vector<NodeSketch> sketches;
};

// Throws InvalidInput for k < 3 or an empty pool.
SketchSet build_sketches(const DiffusionModel& model,
                         std::span<const Simulation> pool, std::int32_t tau,
                         std::size_t k, std::uint64_t rank_seed);

// Bottom-k of the union of two entry lists (duplicates collapse).
std::vector<SketchEntry> merge_bottom_k(std::span<const SketchEntry> a,
                                        std::span<const SketchEntry> b,
                                        std::size_t k);

std::vector<SketchEntry> merged_sketch(const SketchSet& sketches,
                                       const SeedSet& seeds);

// Estimated average reachability utility per simulation for a merged sketch.
// Below k entries the sketch holds every reachable pair and the value is
// exact, summed in the same order as the averaging oracle.
double estimate_from_entries(const SketchSet& sketches,
                             std::span<const SketchEntry> merged,
                             std::size_t ell);

double sketch_query(const SketchSet& sketches, const SeedSet& seeds,
                    std::size_t ell);

// One SketchSet per pool of a built oracle; answers the median over pools of
// the per-pool sketch estimates.
class SketchedOracle {
 public:
  static SketchedOracle build(const Oracle& oracle, std::size_t k,
                              std::uint64_t rank_seed);

  double query(const SeedSet& seeds) const;
  std::span<const SketchSet> pools() const { return pools_; }
  std::size_t pool_size() const { return pool_size_; }
  std::size_t num_nodes() const { return num_nodes_; }

 private:
  std::vector<SketchSet> pools_;
  std::size_t pool_size_ = 0;
  std::size_t num_nodes_ = 0;
};

// Structured persistence: {k, rank_seed, tau, pool_size, weights,
// sketches: [[[rank, node, sim], ...], ...]}.
void write_sketches(std::ostream& out, const SketchSet& sketches);
SketchSet read_sketches(std::istream& in);

}  // namespace simoracle

#endif  // SIMORACLE_SKETCH_HPP_
