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

#ifndef SIMORACLE_GRAPH_HPP_
#define SIMORACLE_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace simoracle {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::int64_t kNoGroup = -1;

struct Edge {
  NodeId tail = 0;
  NodeId head = 0;
  double p = 0.0;
  std::int64_t group = kNoGroup;  // external group id from the edge list
};

// Edges sharing a group id are all live or all dead together.
struct EdgeGroup {
  std::int64_t external_id = kNoGroup;
  NodeId tail = 0;
  double p = 0.0;
  std::vector<EdgeId> edges;
};

// Directed graph with per-edge probabilities, optional dependence groups and
// nonnegative node weights. Immutable once constructed.
class Graph {
 public:
  Graph() = default;
  // Throws InvalidInput if an invariant is violated.
  Graph(std::size_t num_nodes, std::vector<Edge> edges,
        std::vector<double> node_weights = {});

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const EdgeId> out_edges(NodeId u) const {
    return {out_index_.data() + out_offset_[u],
            out_offset_[u + 1] - out_offset_[u]};
  }
  std::span<const EdgeId> in_edges(NodeId v) const {
    return {in_index_.data() + in_offset_[v],
            in_offset_[v + 1] - in_offset_[v]};
  }

  double weight(NodeId v) const { return weights_[v]; }
  std::span<const double> weights() const { return weights_; }
  bool unit_weights() const { return unit_weights_; }
  double total_weight() const;

  std::span<const EdgeGroup> groups() const { return groups_; }
  // Dense index into groups(), or -1 for an ungrouped edge.
  std::int32_t group_of(EdgeId e) const { return edge_group_[e]; }

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
  bool unit_weights_ = true;
  std::vector<std::size_t> out_offset_{0};
  std::vector<EdgeId> out_index_;
  std::vector<std::size_t> in_offset_{0};
  std::vector<EdgeId> in_index_;
  std::vector<EdgeGroup> groups_;
  std::vector<std::int32_t> edge_group_;
};

// Sorted, deduplicated set of node ids.
class SeedSet {
 public:
  SeedSet() = default;
  SeedSet(std::initializer_list<NodeId> ids);
  explicit SeedSet(std::vector<NodeId> ids);

  std::span<const NodeId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(NodeId v) const;

  SeedSet with(NodeId v) const;
  // Throws InvalidInput on ids outside [0, num_nodes).
  void validate(std::size_t num_nodes) const;

  // Parses "1,5,9".
  static SeedSet parse(const std::string& text);
  std::string to_string() const;

  auto operator<=>(const SeedSet&) const = default;

 private:
  std::vector<NodeId> ids_;
};

// Edge-list text format: header "#nodes N", optional "#weight v w" lines,
// then one "tail head p [group_id]" per line. Other '#' lines are comments.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& graph);
void write_edge_list_file(const std::string& path, const Graph& graph);

}  // namespace simoracle

#endif  // SIMORACLE_GRAPH_HPP_
