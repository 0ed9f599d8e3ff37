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

#ifndef SIMORACLE_TESTS_TEST_SUPPORT_HPP_
#define SIMORACLE_TESTS_TEST_SUPPORT_HPP_

// Reference implementations for tests. Nothing here calls into the library's
// enumeration or reachability code.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <random>
#include <vector>

#include "simoracle/graph.hpp"
#include "simoracle/model.hpp"

namespace simoracle::testing {

// Plain BFS over an explicit live-edge list.
inline std::vector<int> bfs_depths(const Graph& g, const std::vector<char>& live,
                                   const SeedSet& seeds, int tau) {
  std::vector<int> depth(g.num_nodes(), -1);
  std::deque<NodeId> queue;
  for (NodeId s : seeds.ids()) {
    depth[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (depth[v] >= tau) continue;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& edge = g.edge(e);
      if (edge.tail != v || !live[e] || depth[edge.head] >= 0) continue;
      depth[edge.head] = depth[v] + 1;
      queue.push_back(edge.head);
    }
  }
  return depth;
}

inline double bfs_value(const Graph& g, const std::vector<char>& live,
                        const SeedSet& seeds, int tau) {
  const auto depth = bfs_depths(g, live, seeds, tau);
  double total = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (depth[v] >= 0) total += g.weight(v);
  }
  return total;
}

// Calls visit(probability, live) for every live-edge outcome of a
// non-mixture model, enumerated outcome by outcome.
inline void for_each_outcome(
    const DiffusionModel& model,
    const std::function<void(double, const std::vector<char>&)>& visit) {
  const Graph& g = model.graph();
  const std::size_t m = g.num_edges();
  if (model.kind() == ModelKind::kLT) {
    std::vector<std::vector<EdgeId>> in(g.num_nodes());
    for (EdgeId e = 0; e < m; ++e) in[g.edge(e).head].push_back(e);
    std::vector<std::size_t> choice(g.num_nodes(), 0);  // 0 = none
    for (;;) {
      std::vector<char> live(m, 0);
      double p = 1.0;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        double sum = 0.0;
        for (EdgeId e : in[v]) sum += g.edge(e).p;
        if (choice[v] == 0) {
          p *= 1.0 - sum;
        } else {
          const EdgeId e = in[v][choice[v] - 1];
          live[e] = 1;
          p *= g.edge(e).p;
        }
      }
      visit(p, live);
      NodeId v = 0;
      while (v < g.num_nodes() && choice[v] == in[v].size()) choice[v++] = 0;
      if (v == g.num_nodes()) return;
      ++choice[v];
    }
  }
  // IC and b-dependence: units are ungrouped edges and whole groups.
  std::vector<std::vector<EdgeId>> units;
  std::vector<double> unit_p;
  std::vector<std::int64_t> seen_groups;
  for (EdgeId e = 0; e < m; ++e) {
    const std::int32_t gi = g.group_of(e);
    if (gi < 0) {
      units.push_back({e});
      unit_p.push_back(g.edge(e).p);
    } else if (std::find(seen_groups.begin(), seen_groups.end(), gi) ==
               seen_groups.end()) {
      seen_groups.push_back(gi);
      const auto& grp = g.groups()[gi];
      units.push_back(grp.edges);
      unit_p.push_back(grp.p);
    }
  }
  const std::uint64_t count = std::uint64_t{1} << units.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<char> live(m, 0);
    double p = 1.0;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if ((mask >> u) & 1) {
        p *= unit_p[u];
        for (EdgeId e : units[u]) live[e] = 1;
      } else {
        p *= 1.0 - unit_p[u];
      }
    }
    visit(p, live);
  }
}

struct BruteMoments {
  double mean = 0.0;
  double second = 0.0;
  double variance() const { return second - mean * mean; }
  std::vector<std::vector<double>> step;  // step[v][d]
};

inline BruteMoments brute_moments(const DiffusionModel& model,
                                  const SeedSet& seeds, int tau) {
  BruteMoments out;
  out.step.assign(model.num_nodes(), std::vector<double>(tau + 1, 0.0));
  auto add = [&](const DiffusionModel& m, double weight) {
    for_each_outcome(m, [&](double p, const std::vector<char>& live) {
      const auto depth = bfs_depths(m.graph(), live, seeds, tau);
      double value = 0.0;
      for (NodeId v = 0; v < m.num_nodes(); ++v) {
        if (depth[v] < 0) continue;
        value += m.graph().weight(v);
        out.step[v][depth[v]] += weight * p;
      }
      out.mean += weight * p * value;
      out.second += weight * p * value * value;
    });
  };
  if (model.kind() == ModelKind::kMixture) {
    for (const auto& c : model.components()) add(*c.model, c.weight);
  } else {
    add(model, 1.0);
  }
  return out;
}

// Small random instances from an engine independent of the library RNG.
inline Graph random_small_graph(std::mt19937_64& rng, std::size_t n,
                                std::size_t m, bool weighted = false) {
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  std::vector<Edge> edges;
  while (edges.size() < m) {
    const NodeId t = node(rng), h = node(rng);
    if (t == h) continue;
    bool dup = false;
    for (const Edge& e : edges) dup = dup || (e.tail == t && e.head == h);
    if (!dup) edges.push_back({t, h, prob(rng)});
  }
  std::vector<double> w;
  if (weighted) {
    // Dyadic weights keep floating-point sums order independent.
    std::uniform_int_distribution<int> q(0, 8);
    for (std::size_t v = 0; v < n; ++v) w.push_back(q(rng) / 4.0);
  }
  return Graph(n, std::move(edges), std::move(w));
}

inline DiffusionModel random_small_ic(std::mt19937_64& rng, std::size_t n,
                                      std::size_t m, bool weighted = false) {
  return DiffusionModel::independent_cascade(
      random_small_graph(rng, n, m, weighted));
}

// Every subset of {0..n-1} as a SeedSet, including the empty set.
inline std::vector<SeedSet> all_subsets(std::size_t n) {
  std::vector<SeedSet> out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::vector<NodeId> ids;
    for (NodeId v = 0; v < n; ++v) {
      if ((mask >> v) & 1) ids.push_back(v);
    }
    out.emplace_back(std::move(ids));
  }
  return out;
}

}  // namespace simoracle::testing

#endif  // SIMORACLE_TESTS_TEST_SUPPORT_HPP_
