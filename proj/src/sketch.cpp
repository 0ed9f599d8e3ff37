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

#include "simoracle/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "simoracle/error.hpp"
#include "simoracle/parallel.hpp"
#include "simoracle/reach.hpp"
#include "simoracle/rng.hpp"

namespace simoracle {

SketchSet build_sketches(const DiffusionModel& model,
                         std::span<const Simulation> pool, std::int32_t tau,
                         std::size_t k, std::uint64_t rank_seed) {
  if (k < 3) throw InvalidInput("sketch size k must be at least 3");
  if (pool.empty()) throw InvalidInput("sketches need a nonempty pool");
  if (tau < 0) throw InvalidInput("tau must be nonnegative");
  const Graph& g = model.graph();
  const std::size_t n = g.num_nodes();

  SketchSet out;
  out.k = k;
  out.rank_seed = rank_seed;
  out.tau = tau;
  out.pool_size = pool.size();
  out.weights.assign(g.weights().begin(), g.weights().end());
  out.sketches.resize(n);
  for (NodeId v = 0; v < n; ++v) out.sketches[v].owner = v;

  // Ranks are a pure function of (rank_seed, pool position, node).
  std::vector<SketchEntry> pairs;
  pairs.reserve(n * pool.size());
  for (std::uint32_t i = 0; i < pool.size(); ++i) {
    const KeyedStream ranks(rank_seed, i, Domain::kSketchRank);
    for (NodeId u = 0; u < n; ++u) {
      if (g.weight(u) > 0.0) {
        pairs.push_back({ranks.exponential(u, g.weight(u)), u, i});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());

  // Pairs arrive in increasing rank, so appending keeps every sketch sorted
  // and the first k arrivals are the bottom-k.
  ReachScratch scratch;
  std::size_t full = 0;
  for (const SketchEntry& pair : pairs) {
    if (full == n) break;
    const Simulation& sim = pool[pair.sim];
    reverse_reach(
        g, pair.node, tau, [&](EdgeId e) { return sim.is_live(e); }, scratch);
    for (NodeId v : scratch.order()) {
      auto& entries = out.sketches[v].entries;
      if (entries.size() >= k) continue;
      entries.push_back(pair);
      if (entries.size() == k) ++full;
    }
  }
  return out;
}

std::vector<SketchEntry> merge_bottom_k(std::span<const SketchEntry> a,
                                        std::span<const SketchEntry> b,
                                        std::size_t k) {
  std::vector<SketchEntry> out;
  out.reserve(std::min(k, a.size() + b.size()));
  std::size_t i = 0, j = 0;
  while (out.size() < k && (i < a.size() || j < b.size())) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      out.push_back(b[j++]);
    } else {
      out.push_back(a[i++]);
      ++j;
    }
  }
  return out;
}

std::vector<SketchEntry> merged_sketch(const SketchSet& sketches,
                                       const SeedSet& seeds) {
  seeds.validate(sketches.sketches.size());
  std::vector<SketchEntry> merged;
  for (NodeId s : seeds.ids()) {
    merged = merge_bottom_k(merged, sketches.sketches[s].entries, sketches.k);
  }
  return merged;
}

double estimate_from_entries(const SketchSet& sketches,
                             std::span<const SketchEntry> merged,
                             std::size_t ell) {
  if (ell == 0) throw InvalidInput("pool size must be positive");
  const auto& w = sketches.weights;
  const double l = static_cast<double>(ell);
  if (merged.size() < sketches.k) {
    // Every reachable pair is present: sum per simulation in node order,
    // then over simulations in index order, as the averaging oracle does.
    std::vector<std::pair<std::uint32_t, NodeId>> pairs;
    pairs.reserve(merged.size());
    for (const SketchEntry& e : merged) pairs.emplace_back(e.sim, e.node);
    std::sort(pairs.begin(), pairs.end());
    double total = 0.0;
    for (std::size_t i = 0; i < pairs.size();) {
      double per_sim = 0.0;
      const std::uint32_t sim = pairs[i].first;
      for (; i < pairs.size() && pairs[i].first == sim; ++i) {
        per_sim += w[pairs[i].second];
      }
      total += per_sim;
    }
    return total / l;
  }
  // Rank conditioning on the k-th smallest rank: each of the first k-1
  // entries stands for w / Pr[Exp(w) < threshold].
  const double threshold = merged[sketches.k - 1].rank;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < sketches.k; ++i) {
    const double wi = w[merged[i].node];
    total += wi / -std::expm1(-wi * threshold);
  }
  return total / l;
}

double sketch_query(const SketchSet& sketches, const SeedSet& seeds,
                    std::size_t ell) {
  return estimate_from_entries(sketches, merged_sketch(sketches, seeds), ell);
}

SketchedOracle SketchedOracle::build(const Oracle& oracle, std::size_t k,
                                     std::uint64_t rank_seed) {
  const OracleConfig& cfg = oracle.config();
  SketchedOracle out;
  out.pool_size_ = cfg.pool_size;
  out.num_nodes_ = oracle.model().num_nodes();
  out.pools_.resize(cfg.pools);
  parallel_for(cfg.pools, [&](std::size_t p) {
    out.pools_[p] = build_sketches(
        oracle.model(),
        oracle.simulations().subspan(p * cfg.pool_size, cfg.pool_size),
        cfg.tau, k, derive_seed(rank_seed, 0x5ce7c4, p));
  });
  return out;
}

double SketchedOracle::query(const SeedSet& seeds) const {
  std::vector<double> values;
  values.reserve(pools_.size());
  for (const SketchSet& s : pools_) {
    values.push_back(sketch_query(s, seeds, pool_size_));
  }
  return median_of(std::move(values));
}

void write_sketches(std::ostream& out, const SketchSet& sketches) {
  nlohmann::ordered_json doc;
  doc["k"] = sketches.k;
  doc["rank_seed"] = sketches.rank_seed;
  doc["tau"] = sketches.tau;
  doc["pool_size"] = sketches.pool_size;
  doc["weights"] = sketches.weights;
  auto& arr = doc["sketches"] = nlohmann::ordered_json::array();
  for (const NodeSketch& s : sketches.sketches) {
    auto row = nlohmann::ordered_json::array();
    for (const SketchEntry& e : s.entries) {
      row.push_back({e.rank, e.node, e.sim});
    }
    arr.push_back(std::move(row));
  }
  out << doc.dump() << '\n';
}

SketchSet read_sketches(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
    SketchSet s;
    s.k = doc.at("k").get<std::size_t>();
    s.rank_seed = doc.at("rank_seed").get<std::uint64_t>();
    s.tau = doc.at("tau").get<std::int32_t>();
    s.pool_size = doc.at("pool_size").get<std::size_t>();
    s.weights = doc.at("weights").get<std::vector<double>>();
    const auto& arr = doc.at("sketches");
    if (arr.size() != s.weights.size()) {
      throw InvalidInput("sketch file: node count mismatch");
    }
    for (std::size_t v = 0; v < arr.size(); ++v) {
      NodeSketch ns;
      ns.owner = static_cast<NodeId>(v);
      for (const auto& e : arr[v]) {
        ns.entries.push_back({e.at(0).get<double>(), e.at(1).get<NodeId>(),
                              e.at(2).get<std::uint32_t>()});
      }
      s.sketches.push_back(std::move(ns));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad sketch file: ") + e.what());
  }
}

}  // namespace simoracle
