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

#ifndef SIMORACLE_MODEL_HPP_
#define SIMORACLE_MODEL_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "simoracle/graph.hpp"

namespace simoracle {

enum class ModelKind { kIC, kLT, kBDep, kMixture };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

class DiffusionModel;

struct MixtureComponent {
  std::shared_ptr<const DiffusionModel> model;
  double weight = 0.0;
  // Component edges occupy [edge_offset, edge_offset + m_c) of the
  // mixture's unified graph.
  std::size_t edge_offset = 0;
};

// A live-edge diffusion model. All kinds expose one graph() whose edge ids
// index Simulation::live; for mixtures it is the concatenation of the
// component edge lists.
//
// Models are immutable after construction and can be shared across threads.
class DiffusionModel {
 public:
  // Independent cascade. The graph must not carry dependence groups.
  static DiffusionModel independent_cascade(Graph graph);
  // Linear threshold in live-edge form; edge p is the incoming weight b_uv,
  // with sum_u b_uv <= 1 for every v.
  static DiffusionModel linear_threshold(Graph graph);
  // b-dependence: grouped edges are all live or all dead; every group has at
  // most b edges sharing a tail. Ungrouped edges are independent.
  static DiffusionModel b_dependence(Graph graph, std::size_t b);
  // Components must share node count and node weights; weights must be
  // positive and sum to 1. Nested mixtures are rejected.
  static DiffusionModel mixture(
      std::vector<std::pair<DiffusionModel, double>> components);

  ModelKind kind() const { return kind_; }
  const Graph& graph() const { return graph_; }
  std::size_t num_nodes() const { return graph_.num_nodes(); }
  std::size_t b() const { return b_; }
  const std::vector<MixtureComponent>& components() const {
    return components_;
  }
  // Smallest mixture component weight; 1 for non-mixtures.
  double min_component_weight() const { return p_min_; }

 private:
  DiffusionModel() = default;

  ModelKind kind_ = ModelKind::kIC;
  Graph graph_;
  std::size_t b_ = 1;
  std::vector<MixtureComponent> components_;
  double p_min_ = 1.0;
};

// One i.i.d. draw: the set of live edges of model.graph().
struct Simulation {
  std::vector<std::uint64_t> live;
  std::uint64_t master_seed = 0;
  std::uint64_t index = 0;
  std::int32_t component = -1;  // mixture component, -1 otherwise

  bool is_live(EdgeId e) const { return (live[e >> 6] >> (e & 63)) & 1U; }
  std::vector<EdgeId> live_edges() const;
  std::size_t num_live() const;
};

// Deterministic in (master_seed, sim_index): IC edges independently live with
// p; LT keeps at most one incoming edge per node; b-dependence groups are all
// live or all dead; mixtures draw a component by weight and sample it.
Simulation sample_simulation(const DiffusionModel& model,
                             std::uint64_t master_seed,
                             std::uint64_t sim_index);
// Same, reusing the storage of `out`.
void sample_simulation_into(const DiffusionModel& model,
                            std::uint64_t master_seed, std::uint64_t sim_index,
                            Simulation& out);

struct ReducedModel {
  DiffusionModel model;
  // original_id[v'] is the node of the input model that v' stands for.
  std::vector<NodeId> original_id;
};

// IC model conditioned on `active` already being active: the remaining nodes
// keep their weights and the edges among them keep their probabilities.
ReducedModel reduce_model(const DiffusionModel& model, const SeedSet& active);

// Independent-edge model with each (tail, head) pair live with its marginal
// probability under `model`. Ignores every dependence by construction.
DiffusionModel marginal_ic(const DiffusionModel& model);

}  // namespace simoracle

#endif  // SIMORACLE_MODEL_HPP_
