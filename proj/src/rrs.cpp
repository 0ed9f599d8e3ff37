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

#include "simoracle/rrs.hpp"

#include <algorithm>
#include <optional>

#include "simoracle/error.hpp"
#include "simoracle/parallel.hpp"
#include "simoracle/reach.hpp"
#include "simoracle/rng.hpp"

namespace simoracle {

std::string to_string(RrsMode mode) {
  return mode == RrsMode::kFullSimulation ? "full_simulation" : "marginal";
}

RrsMode parse_rrs_mode(const std::string& text) {
  if (text == "full_simulation" || text == "full") {
    return RrsMode::kFullSimulation;
  }
  if (text == "marginal") return RrsMode::kMarginal;
  throw InvalidInput("unknown RRS mode '" + text + "'");
}

RrsEstimate rrs_estimate(const DiffusionModel& model, RrsMode mode,
                         std::uint64_t num_searches, std::int32_t tau,
                         std::uint64_t master_seed) {
  if (num_searches == 0) throw InvalidInput("need at least one RR search");
  if (tau < 0) throw InvalidInput("tau must be nonnegative");
  const Graph& g = model.graph();
  const std::size_t n = g.num_nodes();
  if (n == 0) throw InvalidInput("model has no nodes");

  std::optional<DiffusionModel> marginal;
  if (mode == RrsMode::kMarginal) marginal = marginal_ic(model);
  const Graph& search_graph = marginal ? marginal->graph() : g;

  std::vector<double> cumulative(n);
  double total = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    total += g.weight(v);
    cumulative[v] = total;
  }
  if (!(total > 0.0)) throw InvalidInput("all node weights are zero");

  const std::size_t workers = std::max<std::size_t>(worker_count(), 1);
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(n, 0));
  parallel_chunks(num_searches, [&](std::size_t w, std::size_t b,
                                    std::size_t e) {
    ReachScratch scratch;
    Simulation sim;
    auto& hits = partial[w];
    for (std::size_t j = b; j < e; ++j) {
      const double u =
          KeyedStream(master_seed, j, Domain::kRrsNode).uniform(0) * total;
      const auto pos = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const NodeId target = static_cast<NodeId>(
          std::min<std::size_t>(pos - cumulative.begin(), n - 1));
      if (mode == RrsMode::kFullSimulation) {
        sample_simulation_into(model, master_seed, j, sim);
        reverse_reach(
            g, target, tau, [&](EdgeId edge) { return sim.is_live(edge); },
            scratch);
      } else {
        const KeyedStream coins(master_seed, j, Domain::kRrsEdge);
        reverse_reach(
            search_graph, target, tau,
            [&](EdgeId edge) {
              return coins.bernoulli(edge, search_graph.edge(edge).p);
            },
            scratch);
      }
      for (NodeId v : scratch.order()) ++hits[v];
    }
  });

  RrsEstimate out;
  out.num_searches = num_searches;
  out.total_weight = total;
  out.hits.assign(n, 0);
  for (const auto& part : partial) {
    for (std::size_t v = 0; v < n; ++v) out.hits[v] += part[v];
  }
  out.estimate.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    out.estimate[v] = total * static_cast<double>(out.hits[v]) /
                      static_cast<double>(num_searches);
  }
  return out;
}

}  // namespace simoracle
