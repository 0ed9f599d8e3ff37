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

#include "simoracle/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "simoracle/error.hpp"

namespace simoracle {

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool by_tail,
               std::vector<std::size_t>& offset, std::vector<EdgeId>& index) {
  offset.assign(n + 1, 0);
  for (const Edge& e : edges) ++offset[(by_tail ? e.tail : e.head) + 1];
  for (std::size_t v = 0; v < n; ++v) offset[v + 1] += offset[v];
  index.resize(edges.size());
  std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    index[fill[by_tail ? e.tail : e.head]++] = id;
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges,
             std::vector<double> node_weights)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (node_weights.empty()) node_weights.assign(num_nodes_, 1.0);
  if (node_weights.size() != num_nodes_) {
    throw InvalidInput("node weight count does not match node count");
  }
  weights_ = std::move(node_weights);
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidInput("node weights must be finite and nonnegative");
    }
    if (w != 1.0) unit_weights_ = false;
  }

  std::map<std::int64_t, std::int32_t> group_index;
  edge_group_.assign(edges_.size(), -1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.tail >= num_nodes_ || e.head >= num_nodes_) {
      throw InvalidInput("edge endpoint out of range: " +
                         std::to_string(e.tail) + " -> " +
                         std::to_string(e.head));
    }
    if (!(e.p >= 0.0 && e.p <= 1.0)) {
      throw InvalidInput("edge probability outside [0,1]");
    }
    if (e.group == kNoGroup) continue;
    if (e.group < 0) throw InvalidInput("group ids must be nonnegative");
    auto [it, inserted] = group_index.try_emplace(
        e.group, static_cast<std::int32_t>(groups_.size()));
    if (inserted) groups_.push_back({e.group, e.tail, e.p, {}});
    EdgeGroup& g = groups_[it->second];
    if (g.tail != e.tail) {
      throw InvalidInput("group " + std::to_string(e.group) +
                         " has edges with different tails");
    }
    if (g.p != e.p) {
      throw InvalidInput("group " + std::to_string(e.group) +
                         " has edges with different probabilities");
    }
    g.edges.push_back(id);
    edge_group_[id] = it->second;
  }

  build_csr(num_nodes_, edges_, true, out_offset_, out_index_);
  build_csr(num_nodes_, edges_, false, in_offset_, in_index_);
}

double Graph::total_weight() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  return total;
}

SeedSet::SeedSet(std::initializer_list<NodeId> ids)
    : SeedSet(std::vector<NodeId>(ids)) {}

SeedSet::SeedSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool SeedSet::contains(NodeId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

SeedSet SeedSet::with(NodeId v) const {
  SeedSet out = *this;
  auto it = std::lower_bound(out.ids_.begin(), out.ids_.end(), v);
  if (it == out.ids_.end() || *it != v) out.ids_.insert(it, v);
  return out;
}

void SeedSet::validate(std::size_t num_nodes) const {
  if (ids_.empty()) throw InvalidInput("empty seed set");
  if (ids_.back() >= num_nodes) {
    throw InvalidInput("seed id " + std::to_string(ids_.back()) +
                       " out of range");
  }
}

SeedSet SeedSet::parse(const std::string& text) {
  std::vector<NodeId> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto last = item.find_last_not_of(" \t");
    const char* b = item.data() + first;
    const char* e = item.data() + last + 1;
    NodeId v = 0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) {
      throw InvalidInput("bad seed id '" + item + "'");
    }
    ids.push_back(v);
  }
  return SeedSet(std::move(ids));
}

std::string SeedSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids_[i]);
  }
  return out;
}

Graph read_edge_list(std::istream& in) {
  std::size_t n = 0;
  bool have_n = false;
  std::vector<Edge> edges;
  std::vector<std::pair<NodeId, double>> weight_lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "#nodes") {
      if (!(ls >> n)) throw InvalidInput("bad #nodes header");
      have_n = true;
      continue;
    }
    if (tok == "#weight") {
      NodeId v;
      double w;
      if (!(ls >> v >> w)) {
        throw InvalidInput("bad #weight line " + std::to_string(lineno));
      }
      weight_lines.emplace_back(v, w);
      continue;
    }
    if (tok[0] == '#') continue;
    Edge e;
    std::istringstream es(line);
    long long tail, head;
    if (!(es >> tail >> head >> e.p) || tail < 0 || head < 0) {
      throw InvalidInput("bad edge on line " + std::to_string(lineno));
    }
    e.tail = static_cast<NodeId>(tail);
    e.head = static_cast<NodeId>(head);
    long long group;
    if (es >> group) e.group = group;
    edges.push_back(e);
  }
  if (!have_n) throw InvalidInput("missing #nodes header");
  std::vector<double> weights(n, 1.0);
  for (auto [v, w] : weight_lines) {
    if (v >= n) throw InvalidInput("#weight node out of range");
    weights[v] = w;
  }
  return Graph(n, std::move(edges), std::move(weights));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << "#nodes " << graph.num_nodes() << '\n';
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (graph.weight(v) != 1.0) {
      out << "#weight " << v << ' ' << format_double(graph.weight(v)) << '\n';
    }
  }
  for (const Edge& e : graph.edges()) {
    out << e.tail << ' ' << e.head << ' ' << format_double(e.p);
    if (e.group != kNoGroup) out << ' ' << e.group;
    out << '\n';
  }
}

void write_edge_list_file(const std::string& path, const Graph& graph) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  write_edge_list(out, graph);
}

}  // namespace simoracle
