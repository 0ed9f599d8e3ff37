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

#include "simoracle/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "simoracle/error.hpp"
#include "simoracle/rng.hpp"

namespace simoracle {

namespace {

constexpr double kSumTolerance = 1e-12;

void clear_bits(Simulation& sim, std::size_t num_edges) {
  sim.live.assign((num_edges + 63) / 64, 0);
}

void set_bit(Simulation& sim, std::size_t e) {
  sim.live[e >> 6] |= std::uint64_t{1} << (e & 63);
}

// Samples a non-mixture model into `sim`, writing edge e at bit offset + e.
void sample_plain(const DiffusionModel& model, std::uint64_t seed,
                  std::uint64_t index, std::size_t offset, Simulation& sim) {
  const Graph& g = model.graph();
  switch (model.kind()) {
    case ModelKind::kIC: {
      KeyedStream coins(seed, index, Domain::kEdge);
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (coins.bernoulli(e, g.edge(e).p)) set_bit(sim, offset + e);
      }
      break;
    }
    case ModelKind::kBDep: {
      KeyedStream coins(seed, index, Domain::kEdge);
      const std::size_t m = g.num_edges();
      for (EdgeId e = 0; e < m; ++e) {
        if (g.group_of(e) >= 0) continue;
        if (coins.bernoulli(e, g.edge(e).p)) set_bit(sim, offset + e);
      }
      const auto groups = g.groups();
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (!coins.bernoulli(m + gi, groups[gi].p)) continue;
        for (EdgeId e : groups[gi].edges) set_bit(sim, offset + e);
      }
      break;
    }
    case ModelKind::kLT: {
      KeyedStream choice(seed, index, Domain::kLtChoice);
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        const auto in = g.in_edges(v);
        if (in.empty()) continue;
        const double u = choice.uniform(v);
        double acc = 0.0;
        for (EdgeId e : in) {
          acc += g.edge(e).p;
          if (u < acc) {
            set_bit(sim, offset + e);
            break;
          }
        }
      }
      break;
    }
    case ModelKind::kMixture:
      break;
  }
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kIC:
      return "ic";
    case ModelKind::kLT:
      return "lt";
    case ModelKind::kBDep:
      return "bdep";
    case ModelKind::kMixture:
      return "mixture";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "ic") return ModelKind::kIC;
  if (text == "lt") return ModelKind::kLT;
  if (text == "bdep") return ModelKind::kBDep;
  if (text == "mixture") return ModelKind::kMixture;
  throw InvalidInput("unknown model kind '" + text + "'");
}

DiffusionModel DiffusionModel::independent_cascade(Graph graph) {
  if (!graph.groups().empty()) {
    throw InvalidInput("IC model cannot carry dependence groups");
  }
  DiffusionModel m;
  m.kind_ = ModelKind::kIC;
  m.graph_ = std::move(graph);
  return m;
}

DiffusionModel DiffusionModel::linear_threshold(Graph graph) {
  if (!graph.groups().empty()) {
    throw InvalidInput("LT model cannot carry dependence groups");
  }
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    double sum = 0.0;
    for (EdgeId e : graph.in_edges(v)) sum += graph.edge(e).p;
    if (sum > 1.0 + kSumTolerance) {
      throw InvalidInput("LT incoming weights of node " + std::to_string(v) +
                         " sum to more than 1");
    }
  }
  DiffusionModel m;
  m.kind_ = ModelKind::kLT;
  m.graph_ = std::move(graph);
  return m;
}

DiffusionModel DiffusionModel::b_dependence(Graph graph, std::size_t b) {
  if (b < 1) throw InvalidInput("b-dependence needs b >= 1");
  for (const EdgeGroup& g : graph.groups()) {
    if (g.edges.size() > b) {
      throw InvalidInput("group " + std::to_string(g.external_id) + " has " +
                         std::to_string(g.edges.size()) + " edges, b = " +
                         std::to_string(b));
    }
  }
  DiffusionModel m;
  m.kind_ = ModelKind::kBDep;
  m.graph_ = std::move(graph);
  m.b_ = b;
  return m;
}

DiffusionModel DiffusionModel::mixture(
    std::vector<std::pair<DiffusionModel, double>> components) {
  if (components.empty()) throw InvalidInput("mixture needs components");
  const Graph& first = components.front().first.graph();
  const std::size_t n = first.num_nodes();
  const auto weights = first.weights();
  double total = 0.0;
  double p_min = 1.0;
  std::vector<Edge> edges;
  DiffusionModel m;
  for (auto& [component, weight] : components) {
    if (component.kind() == ModelKind::kMixture) {
      throw InvalidInput("nested mixtures are not supported");
    }
    if (!(weight > 0.0)) {
      throw InvalidInput("mixture weights must be positive");
    }
    const Graph& g = component.graph();
    if (g.num_nodes() != n ||
        !std::equal(weights.begin(), weights.end(), g.weights().begin())) {
      throw InvalidInput("mixture components must share nodes and weights");
    }
    total += weight;
    p_min = std::min(p_min, weight);
    const std::size_t offset = edges.size();
    for (Edge e : g.edges()) {
      e.group = kNoGroup;
      edges.push_back(e);
    }
    m.components_.push_back(
        {std::make_shared<const DiffusionModel>(std::move(component)), weight,
         offset});
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidInput("mixture weights must sum to 1");
  }
  m.kind_ = ModelKind::kMixture;
  m.graph_ = Graph(n, std::move(edges),
                   std::vector<double>(weights.begin(), weights.end()));
  m.p_min_ = p_min;
  return m;
}

std::vector<EdgeId> Simulation::live_edges() const {
  std::vector<EdgeId> out;
  for (std::size_t w = 0; w < live.size(); ++w) {
    std::uint64_t bits = live[w];
    while (bits) {
      out.push_back(static_cast<EdgeId>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t Simulation::num_live() const {
  std::size_t count = 0;
  for (std::uint64_t w : live) count += std::popcount(w);
  return count;
}

void sample_simulation_into(const DiffusionModel& model,
                            std::uint64_t master_seed, std::uint64_t sim_index,
                            Simulation& out) {
  clear_bits(out, model.graph().num_edges());
  out.master_seed = master_seed;
  out.index = sim_index;
  out.component = -1;
  if (model.kind() != ModelKind::kMixture) {
    sample_plain(model, master_seed, sim_index, 0, out);
    return;
  }
  const auto& comps = model.components();
  const double u =
      KeyedStream(master_seed, sim_index, Domain::kComponent).uniform(0);
  std::size_t chosen = comps.size() - 1;
  double acc = 0.0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    acc += comps[c].weight;
    if (u < acc) {
      chosen = c;
      break;
    }
  }
  out.component = static_cast<std::int32_t>(chosen);
  sample_plain(*comps[chosen].model, master_seed, sim_index,
               comps[chosen].edge_offset, out);
}

Simulation sample_simulation(const DiffusionModel& model,
                             std::uint64_t master_seed,
                             std::uint64_t sim_index) {
  Simulation sim;
  sample_simulation_into(model, master_seed, sim_index, sim);
  return sim;
}

ReducedModel reduce_model(const DiffusionModel& model, const SeedSet& active) {
  if (model.kind() != ModelKind::kIC) {
    throw InvalidInput("reduction implemented for IC only");
  }
  const Graph& g = model.graph();
  if (!active.empty()) active.validate(g.num_nodes());
  std::vector<std::int64_t> new_id(g.num_nodes(), -1);
  std::vector<NodeId> original;
  std::vector<double> weights;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (active.contains(v)) continue;
    new_id[v] = static_cast<std::int64_t>(original.size());
    original.push_back(v);
    weights.push_back(g.weight(v));
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (new_id[e.tail] < 0 || new_id[e.head] < 0) continue;
    edges.push_back({static_cast<NodeId>(new_id[e.tail]),
                     static_cast<NodeId>(new_id[e.head]), e.p, kNoGroup});
  }
  return {DiffusionModel::independent_cascade(
              Graph(original.size(), std::move(edges), std::move(weights))),
          std::move(original)};
}

namespace {

// P(at least one tail->head edge live) for every (tail, head) pair of a
// non-mixture model.
std::map<std::pair<NodeId, NodeId>, double> pair_marginals(
    const DiffusionModel& model) {
  const Graph& g = model.graph();
  std::map<std::pair<NodeId, NodeId>, double> out;
  if (model.kind() == ModelKind::kLT) {
    // At most one incoming edge is live, so parallel edges add up.
    for (const Edge& e : g.edges()) out[{e.tail, e.head}] += e.p;
    return out;
  }
  // Independent units: ungrouped edges and groups. Parallel edges within one
  // group are the same event.
  std::map<std::pair<NodeId, NodeId>, double> dead;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    if (g.group_of(id) >= 0) continue;
    const Edge& e = g.edge(id);
    auto [it, inserted] = dead.try_emplace({e.tail, e.head}, 1.0);
    it->second *= 1.0 - e.p;
  }
  for (const EdgeGroup& grp : g.groups()) {
    std::vector<NodeId> heads;
    for (EdgeId id : grp.edges) heads.push_back(g.edge(id).head);
    std::sort(heads.begin(), heads.end());
    heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
    for (NodeId h : heads) {
      auto [it, inserted] = dead.try_emplace({grp.tail, h}, 1.0);
      it->second *= 1.0 - grp.p;
    }
  }
  for (const auto& [key, q] : dead) out[key] = 1.0 - q;
  return out;
}

}  // namespace

DiffusionModel marginal_ic(const DiffusionModel& model) {
  const Graph& g = model.graph();
  std::map<std::pair<NodeId, NodeId>, double> marg;
  if (model.kind() == ModelKind::kMixture) {
    for (const MixtureComponent& c : model.components()) {
      for (const auto& [key, p] : pair_marginals(*c.model)) {
        marg[key] += c.weight * p;
      }
    }
  } else {
    marg = pair_marginals(model);
  }
  std::vector<Edge> edges;
  edges.reserve(marg.size());
  for (const auto& [key, p] : marg) {
    edges.push_back({key.first, key.second, std::clamp(p, 0.0, 1.0), kNoGroup});
  }
  return DiffusionModel::independent_cascade(
      Graph(g.num_nodes(), std::move(edges),
            std::vector<double>(g.weights().begin(), g.weights().end())));
}

}  // namespace simoracle
