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

#include "simoracle/families.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "simoracle/error.hpp"
#include "simoracle/rng.hpp"

namespace simoracle {

namespace {

double draw(const KeyedStream& rng, std::uint64_t counter, Range r) {
  if (r.lo == r.hi) return r.lo;
  return r.lo + (r.hi - r.lo) * rng.uniform(counter);
}

}  // namespace

DiffusionModel gen_tree(std::int32_t depth) {
  if (depth < 1 || depth > 20) throw InvalidInput("tree depth must be 1..20");
  const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (NodeId v = 1; v < n; ++v) edges.push_back({(v - 1) / 2, v, 0.5});
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
  });
  return DiffusionModel::independent_cascade(Graph(n, std::move(edges)));
}

DiffusionModel gen_star(std::size_t leaves, bool dependent) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) {
    Edge e{0, static_cast<NodeId>(i), 0.5};
    if (dependent) e.group = 0;
    edges.push_back(e);
  }
  Graph g(leaves + 1, std::move(edges));
  if (!dependent) return DiffusionModel::independent_cascade(std::move(g));
  return DiffusionModel::b_dependence(std::move(g),
                                      std::max<std::size_t>(leaves, 1));
}

DiffusionModel gen_polysimu(std::size_t n) {
  if (n < 100) throw InvalidInput("polysimu needs n >= 100");
  std::vector<Edge> edges;
  edges.push_back({kPolysimuSource, 1, 99.0 / static_cast<double>(n - 1)});
  for (NodeId v = 2; v < n; ++v) edges.push_back({1, v, 1.0});
  return DiffusionModel::independent_cascade(Graph(n, std::move(edges)));
}

DiffusionModel gen_two_world_mixture() {
  constexpr std::size_t n = 14;
  // Chain 0 -> 1 -> 2 -> 3 -> 4 is red; node 5 has edges to 6, 7 (red) and
  // 8 (blue); chain 9 -> 10 -> 11 -> 12 -> 13 alternates red and blue.
  std::vector<Edge> red = {{0, 1, 1.0},  {1, 2, 1.0},   {2, 3, 1.0},
                           {3, 4, 1.0},  {5, 6, 1.0},   {5, 7, 1.0},
                           {9, 10, 1.0}, {11, 12, 1.0}};
  std::vector<Edge> blue = {{5, 8, 1.0}, {10, 11, 1.0}, {12, 13, 1.0}};
  std::vector<std::pair<DiffusionModel, double>> parts;
  parts.emplace_back(DiffusionModel::independent_cascade(Graph(n, red)), 0.5);
  parts.emplace_back(DiffusionModel::independent_cascade(Graph(n, blue)), 0.5);
  return DiffusionModel::mixture(std::move(parts));
}

Graph random_graph(std::size_t n, std::size_t m, Range p, Range weight,
                   std::uint64_t seed) {
  if (n < 2 && m > 0) throw InvalidInput("random graph needs two nodes");
  if (m > n * (n - 1)) throw InvalidInput("too many edges for simple digraph");
  if (!(p.lo >= 0.0 && p.hi <= 1.0 && p.lo <= p.hi)) {
    throw InvalidInput("bad probability range");
  }
  if (!(weight.lo >= 0.0 && weight.lo <= weight.hi)) {
    throw InvalidInput("bad weight range");
  }
  const KeyedStream pick(seed, 0, Domain::kDerive);
  const KeyedStream probs(seed, 1, Domain::kDerive);
  const KeyedStream weights(seed, 2, Domain::kDerive);

  std::set<std::pair<NodeId, NodeId>> chosen;
  std::uint64_t counter = 0;
  while (chosen.size() < m) {
    const auto t = static_cast<NodeId>(pick.bits(counter++) % n);
    const auto h = static_cast<NodeId>(pick.bits(counter++) % n);
    if (t != h) chosen.emplace(t, h);
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (auto [t, h] : chosen) {
    edges.push_back({t, h, draw(probs, edges.size(), p)});
  }
  std::vector<double> w(n);
  for (NodeId v = 0; v < n; ++v) w[v] = draw(weights, v, weight);
  return Graph(n, std::move(edges), std::move(w));
}

DiffusionModel gen_random_ic(std::size_t n, std::size_t m, Range p,
                             Range weight, std::uint64_t seed) {
  return DiffusionModel::independent_cascade(
      random_graph(n, m, p, weight, seed));
}

DiffusionModel gen_random_lt(std::size_t n, std::size_t m,
                             std::uint64_t seed) {
  const Graph base = random_graph(n, m, {0.05, 1.0}, {1.0, 1.0}, seed);
  const KeyedStream totals(seed, 3, Domain::kDerive);
  std::vector<double> in_sum(n, 0.0);
  for (const Edge& e : base.edges()) in_sum[e.head] += e.p;
  std::vector<Edge> edges(base.edges().begin(), base.edges().end());
  for (Edge& e : edges) {
    const double target = 0.3 + 0.7 * totals.uniform(e.head);
    e.p = e.p / in_sum[e.head] * target;
  }
  return DiffusionModel::linear_threshold(Graph(n, std::move(edges)));
}

DiffusionModel gen_random_bdep(std::size_t n, std::size_t m, std::size_t b,
                               std::uint64_t seed) {
  if (b < 1) throw InvalidInput("b must be at least 1");
  const Graph base = random_graph(n, m, {0.1, 0.9}, {1.0, 1.0}, seed);
  // Edges arrive sorted by (tail, head).
  std::vector<Edge> edges(base.edges().begin(), base.edges().end());
  std::int64_t group = -1;
  std::size_t in_group = b;
  NodeId tail = 0;
  for (Edge& e : edges) {
    if (in_group == b || e.tail != tail) {
      ++group;
      in_group = 0;
      tail = e.tail;
    }
    e.group = group;
    ++in_group;
  }
  // Groups share the probability of their first edge.
  std::vector<double> group_p(static_cast<std::size_t>(group + 1), -1.0);
  for (Edge& e : edges) {
    double& gp = group_p[static_cast<std::size_t>(e.group)];
    if (gp < 0.0) gp = e.p;
    e.p = gp;
  }
  return DiffusionModel::b_dependence(Graph(n, std::move(edges)), b);
}

DiffusionModel gen_random_mixture(std::size_t n, std::size_t m,
                                  std::uint64_t seed) {
  const KeyedStream mix(seed, 4, Domain::kDerive);
  const double w = 0.2 + 0.6 * mix.uniform(0);
  std::vector<std::pair<DiffusionModel, double>> parts;
  parts.emplace_back(gen_random_ic(n, m, {0.1, 0.9}, {1.0, 1.0},
                                   derive_seed(seed, 1, 0)),
                     w);
  parts.emplace_back(gen_random_ic(n, m, {0.1, 0.9}, {1.0, 1.0},
                                   derive_seed(seed, 1, 1)),
                     1.0 - w);
  return DiffusionModel::mixture(std::move(parts));
}

DiffusionModel gen_max_cover() {
  return DiffusionModel::independent_cascade(
      Graph(5, {{0, 1, 1.0}, {0, 2, 1.0}, {3, 4, 1.0}}));
}

}  // namespace simoracle
