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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "simoracle/error.hpp"
#include "simoracle/families.hpp"
#include "simoracle/oracle.hpp"
#include "simoracle/rng.hpp"
#include "simoracle/sketch.hpp"
#include "test_support.hpp"

namespace simoracle {
namespace {

using doctest::Approx;

DiffusionModel star_model(std::size_t nodes) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < nodes; ++v) edges.push_back({0, v, 1.0});
  return DiffusionModel::independent_cascade(Graph(nodes, edges));
}

std::vector<Simulation> pool_of(const DiffusionModel& m, std::size_t l,
                                std::uint64_t seed) {
  std::vector<Simulation> out;
  for (std::size_t i = 0; i < l; ++i) out.push_back(sample_simulation(m, seed, i));
  return out;
}

TEST_CASE("small sketches") {
  const auto path = DiffusionModel::independent_cascade(
      Graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
  const auto one = pool_of(path, 1, 0);
  const SketchSet s = build_sketches(path, one, 2, 3, 5);
  CHECK(s.sketches[0].entries.size() == 3);
  CHECK(s.sketches[1].entries.size() == 2);
  CHECK(s.sketches[2].entries.size() == 1);

  const std::vector<Simulation> twice = {one[0], one[0]};
  const SketchSet t = build_sketches(path, twice, 2, 10, 5);
  CHECK(t.sketches[0].entries.size() == 6);

  CHECK_THROWS_AS(build_sketches(path, one, 2, 2, 5), InvalidInput);
  CHECK_THROWS_AS(sketch_query(s, SeedSet{}, 1), InvalidInput);
}

TEST_CASE("sketches hold the bottom-k reachable pairs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const DiffusionModel model =
        gen_random_ic(9, 20, {0.2, 0.8}, {0.5, 3.0}, seed);
    const Graph& g = model.graph();
    const auto pool = pool_of(model, 6, seed);
    const std::size_t k = 3 + seed * 2;
    const SketchSet s = build_sketches(model, pool, 2, k, 100 + seed);
    for (NodeId v = 0; v < 9; ++v) {
      std::vector<SketchEntry> all;
      for (std::uint32_t i = 0; i < pool.size(); ++i) {
        std::vector<char> live(g.num_edges());
        for (EdgeId e = 0; e < g.num_edges(); ++e) live[e] = pool[i].is_live(e);
        const auto depth = testing::bfs_depths(g, live, SeedSet{v}, 2);
        const KeyedStream ranks(100 + seed, i, Domain::kSketchRank);
        for (NodeId u = 0; u < 9; ++u) {
          if (depth[u] >= 0) {
            all.push_back({ranks.exponential(u, g.weight(u)), u, i});
          }
        }
      }
      std::sort(all.begin(), all.end());
      all.resize(std::min(all.size(), k));
      CHECK(s.sketches[v].entries == all);
    }
  }
}

TEST_CASE("merge is commutative, associative and idempotent") {
  const DiffusionModel model = gen_random_ic(10, 25, {0.2, 0.8}, {1, 1}, 3);
  const SketchSet s = build_sketches(model, pool_of(model, 5, 1), 2, 8, 9);
  const auto& a = s.sketches[0].entries;
  const auto& b = s.sketches[4].entries;
  const auto& c = s.sketches[7].entries;
  CHECK(merge_bottom_k(a, b, 8) == merge_bottom_k(b, a, 8));
  CHECK(merge_bottom_k(merge_bottom_k(a, b, 8), c, 8) ==
        merge_bottom_k(a, merge_bottom_k(b, c, 8), 8));
  CHECK(merge_bottom_k(a, a, 8) == a);
}

TEST_CASE("lossless sketches equal the averaging oracle exactly") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DiffusionModel model =
        gen_random_ic(10, 22, {0.1, 0.9}, {0.1, 3.0}, seed);
    OracleConfig cfg;
    cfg.pool_size = 30;
    cfg.tau = 3;
    cfg.master_seed = seed;
    const Oracle oracle = Oracle::build(model, cfg);
    const SketchSet s =
        build_sketches(model, oracle.simulations(), 3, 10 * 30 + 1, seed);
    for (const SeedSet& set : testing::all_subsets(6)) {
      if (set.empty()) continue;
      CHECK(sketch_query(s, set, 30) == oracle.query(set));
    }
    // Coverage is subadditive when nothing is truncated.
    for (NodeId a = 0; a < 10; ++a) {
      for (NodeId b = 0; b < 10; ++b) {
        CHECK(sketch_query(s, SeedSet{a, b}, 30) <=
              sketch_query(s, SeedSet{a}, 30) + sketch_query(s, SeedSet{b}, 30) +
                  1e-9);
      }
    }
  }
}

TEST_CASE("unit-weight estimate is (k-1) over the uniform k-th rank") {
  const DiffusionModel star = star_model(300);
  const auto pool = pool_of(star, 1, 0);
  const SketchSet s = build_sketches(star, pool, 1, 20, 4);
  const auto& e = s.sketches[0].entries;
  REQUIRE(e.size() == 20);
  const double u_k = -std::expm1(-e[19].rank);
  CHECK(sketch_query(s, SeedSet{0}, 1) == Approx(19.0 / u_k).epsilon(1e-12));
}

// For n pairs, (k-1)/U_(k) with U_(k) ~ Beta(k, n-k+1) is unbiased with
// CV^2 = (1 - (k-1)/n) / (k-2).
TEST_CASE("estimator mean and spread") {
  constexpr std::size_t kPairs = 300, kK = 20;
  constexpr int kRedraws = 2000;
  const DiffusionModel star = star_model(kPairs);
  const auto pool = pool_of(star, 1, 0);
  std::vector<double> est(kRedraws);
  for (int t = 0; t < kRedraws; ++t) {
    est[t] = sketch_query(build_sketches(star, pool, 1, kK, 1000 + t),
                          SeedSet{0}, 1);
  }
  double mean = 0.0;
  for (double x : est) mean += x;
  mean /= kRedraws;
  double var = 0.0;
  for (double x : est) var += (x - mean) * (x - mean);
  var /= kRedraws - 1;
  const double cv_theory = std::sqrt((1.0 - (kK - 1.0) / kPairs) / (kK - 2.0));
  const double sd_theory = cv_theory * kPairs;
  CHECK(std::abs(mean - kPairs) <= 4.0 * sd_theory / std::sqrt(kRedraws));
  CHECK(std::sqrt(var) / mean == Approx(cv_theory).epsilon(0.1));
}

TEST_CASE("weighted estimate is unbiased") {
  const DiffusionModel model = gen_random_ic(40, 80, {0.3, 0.9}, {0.2, 4.0}, 2);
  OracleConfig cfg;
  cfg.pool_size = 10;
  cfg.tau = 2;
  const Oracle oracle = Oracle::build(model, cfg);
  const SeedSet seeds{0, 1, 2};
  const double truth = oracle.query(seeds);
  constexpr int kRedraws = 2000;
  double sum = 0.0, sq = 0.0;
  for (int t = 0; t < kRedraws; ++t) {
    const double x = sketch_query(
        build_sketches(model, oracle.simulations(), 2, 12, 500 + t), seeds, 10);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / kRedraws;
  const double sd = std::sqrt(sq / kRedraws - mean * mean);
  CHECK(std::abs(mean - truth) <= 4.0 * sd / std::sqrt(kRedraws));
}

TEST_CASE("sketched oracle medians per-pool estimates") {
  const DiffusionModel model = gen_random_ic(12, 30, {0.2, 0.8}, {1, 1}, 5);
  OracleConfig cfg;
  cfg.pools = 3;
  cfg.pool_size = 20;
  cfg.tau = 2;
  const Oracle oracle = Oracle::build(model, cfg);
  const SketchedOracle so = SketchedOracle::build(oracle, 8, 3);
  REQUIRE(so.pools().size() == 3);
  const SeedSet s{2, 7};
  std::vector<double> per;
  for (const SketchSet& p : so.pools()) per.push_back(sketch_query(p, s, 20));
  CHECK(so.query(s) == median_of(per));
}

TEST_CASE("sketch files round trip") {
  const DiffusionModel model = gen_random_ic(8, 16, {0.2, 0.8}, {0.5, 2.0}, 7);
  const SketchSet s = build_sketches(model, pool_of(model, 4, 2), 2, 5, 11);
  std::stringstream io;
  write_sketches(io, s);
  const SketchSet back = read_sketches(io);
  CHECK(back.k == s.k);
  CHECK(back.rank_seed == s.rank_seed);
  CHECK(back.tau == s.tau);
  CHECK(back.pool_size == s.pool_size);
  CHECK(back.weights == s.weights);
  for (NodeId v = 0; v < 8; ++v) {
    CHECK(back.sketches[v].entries == s.sketches[v].entries);
    CHECK(sketch_query(back, SeedSet{v}, 4) == sketch_query(s, SeedSet{v}, 4));
  }
  std::istringstream bad("{\"k\": 3}");
  CHECK_THROWS_AS(read_sketches(bad), InvalidInput);
}

}  // namespace
}  // namespace simoracle
