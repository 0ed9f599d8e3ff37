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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "simoracle/error.hpp"
#include "simoracle/exact.hpp"
#include "simoracle/families.hpp"
#include "simoracle/maximize.hpp"
#include "simoracle/model_io.hpp"

namespace simoracle {
namespace {

namespace fs = std::filesystem;
using doctest::Approx;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("simoracle_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void check_same_graph(const Graph& a, const Graph& b) {
  REQUIRE(a.num_nodes() == b.num_nodes());
  REQUIRE(a.num_edges() == b.num_edges());
  for (EdgeId e = 0; e < a.num_edges(); ++e) {
    CHECK(a.edge(e).tail == b.edge(e).tail);
    CHECK(a.edge(e).head == b.edge(e).head);
    CHECK(a.edge(e).p == b.edge(e).p);
    CHECK(a.group_of(e) == b.group_of(e));
  }
  for (NodeId v = 0; v < a.num_nodes(); ++v) CHECK(a.weight(v) == b.weight(v));
}

void check_same_model(const DiffusionModel& a, const DiffusionModel& b) {
  CHECK(a.kind() == b.kind());
  CHECK(a.b() == b.b());
  check_same_graph(a.graph(), b.graph());
  REQUIRE(a.components().size() == b.components().size());
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    CHECK(a.components()[i].weight == b.components()[i].weight);
  }
}

TEST_CASE("tree sizes") {
  const DiffusionModel t1 = gen_tree(1);
  CHECK(t1.num_nodes() == 3);
  CHECK(t1.graph().num_edges() == 2);
  const DiffusionModel t3 = gen_tree(3);
  CHECK(t3.num_nodes() == 15);
  CHECK(t3.graph().num_edges() == 14);
  for (EdgeId e = 0; e < 14; ++e) {
    const Edge& edge = t3.graph().edge(e);
    CHECK(edge.p == 0.5);
    CHECK((edge.head == 2 * edge.tail + 1 || edge.head == 2 * edge.tail + 2));
  }
  CHECK_THROWS_AS(gen_tree(0), InvalidInput);
  CHECK_THROWS_AS(gen_tree(21), InvalidInput);
}

TEST_CASE("stars") {
  CHECK(exact_influence(gen_star(0, true), SeedSet{0}, 1) == 1.0);
  CHECK(exact_influence(gen_star(0, false), SeedSet{0}, 1) == 1.0);
  const DiffusionModel dep = gen_star(50, true);
  CHECK(dep.kind() == ModelKind::kBDep);
  CHECK(dep.b() == 50);
  const ExactMoments m = exact_moments(dep, SeedSet{0}, 1);
  CHECK(m.influence == Approx(26.0));
  CHECK(m.variance() == Approx(625.0));
  const ExactMoments ind = exact_moments(gen_star(12, false), SeedSet{0}, 1);
  CHECK(ind.influence == Approx(7.0));
  CHECK(ind.variance() == Approx(3.0));
}

TEST_CASE("polysimu moments") {
  CHECK_THROWS_AS(gen_polysimu(99), InvalidInput);
  for (std::size_t n : {1000u, 10000u}) {
    const DiffusionModel model = gen_polysimu(n);
    const ExactMoments m = exact_moments(model, SeedSet{kPolysimuSource}, 2);
    CHECK(m.outcomes == 2);
    CHECK(m.influence == Approx(100.0).epsilon(1e-12));
    CHECK(m.variance() == Approx(99.0 * (n - 100.0)).epsilon(1e-9));
    const double ratio = m.variance() / (100.0 * n);
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 1.5);
  }
}

TEST_CASE("two-world mixture separates the mixture from its marginal") {
  const DiffusionModel mix = gen_two_world_mixture();
  CHECK(mix.kind() == ModelKind::kMixture);
  CHECK(mix.num_nodes() == 14);
  REQUIRE(mix.components().size() == 2);
  CHECK(exact_influence(mix, SeedSet{0}, kTwoWorldTau) == Approx(3.0));
  CHECK(exact_influence(mix, SeedSet{5}, kTwoWorldTau) == Approx(2.5));

  std::vector<Edge> marginal;
  for (const MixtureComponent& c : mix.components()) {
    for (const Edge& e : c.model->graph().edges()) {
      marginal.push_back({e.tail, e.head, e.p * c.weight});
    }
  }
  const DiffusionModel ic =
      DiffusionModel::independent_cascade(Graph(14, marginal));
  CHECK(exact_influence(ic, SeedSet{0}, kTwoWorldTau) == Approx(1.9375));
  CHECK(exact_influence(ic, SeedSet{5}, kTwoWorldTau) == Approx(2.5));

  const ExactInfluence f_mix(mix, kTwoWorldTau);
  const ExactInfluence f_ic(ic, kTwoWorldTau);
  CHECK(brute_force_max([&](const SeedSet& s) { return f_mix(s); }, 14, 1)
            .seeds == SeedSet{0});
  CHECK(brute_force_max([&](const SeedSet& s) { return f_ic(s); }, 14, 1)
            .seeds == SeedSet{5});
}

TEST_CASE("random graphs are simple, sized and reproducible") {
  struct Fixture {
    std::size_t n, m;
    std::uint64_t seed;
  };
  for (const Fixture& f : {Fixture{8, 12, 1}, Fixture{30, 90, 7},
                           Fixture{200, 1000, 20260101}}) {
    const Graph g = random_graph(f.n, f.m, {0.1, 0.4}, {0.5, 2.0}, f.seed);
    CHECK(g.num_nodes() == f.n);
    CHECK(g.num_edges() == f.m);
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const Edge& e : g.edges()) {
      CHECK(e.tail != e.head);
      CHECK(seen.insert({e.tail, e.head}).second);
      CHECK(e.p >= 0.1);
      CHECK(e.p <= 0.4);
    }
    for (NodeId v = 0; v < f.n; ++v) {
      CHECK(g.weight(v) >= 0.5);
      CHECK(g.weight(v) <= 2.0);
    }
    check_same_graph(g, random_graph(f.n, f.m, {0.1, 0.4}, {0.5, 2.0}, f.seed));
    const Graph other =
        random_graph(f.n, f.m, {0.1, 0.4}, {0.5, 2.0}, f.seed + 1);
    bool differs = false;
    for (EdgeId e = 0; e < f.m; ++e) {
      differs = differs || other.edge(e).p != g.edge(e).p;
    }
    CHECK(differs);
  }
  CHECK_THROWS_AS(random_graph(3, 7, {0.1, 0.4}, {1, 1}, 0), InvalidInput);
}

TEST_CASE("random model kinds") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DiffusionModel lt = gen_random_lt(10, 25, seed);
    CHECK(lt.kind() == ModelKind::kLT);
    for (NodeId v = 0; v < 10; ++v) {
      double total = 0.0;
      for (EdgeId e : lt.graph().in_edges(v)) total += lt.graph().edge(e).p;
      if (!lt.graph().in_edges(v).empty()) {
        CHECK(total >= 0.3 - 1e-12);
        CHECK(total <= 1.0 + 1e-12);
      }
    }
    const DiffusionModel bd = gen_random_bdep(10, 25, 3, seed);
    CHECK(bd.kind() == ModelKind::kBDep);
    for (const EdgeGroup& g : bd.graph().groups()) {
      CHECK(g.edges.size() <= 3);
      for (EdgeId e : g.edges) CHECK(bd.graph().edge(e).tail == g.tail);
    }
    const DiffusionModel mix = gen_random_mixture(10, 25, seed);
    REQUIRE(mix.components().size() == 2);
    CHECK(mix.components()[0].weight >= 0.2);
    CHECK(mix.components()[0].weight <= 0.8);
    CHECK(mix.components()[0].weight + mix.components()[1].weight ==
          Approx(1.0));
  }
}

TEST_CASE("model files round trip and are byte-identical") {
  const fs::path dir = scratch_dir("model_io");
  const std::vector<DiffusionModel> models = {
      gen_random_ic(12, 30, {0.1, 0.9}, {0.5, 2.0}, 3),
      gen_random_lt(12, 30, 4),
      gen_random_bdep(12, 30, 2, 5),
      gen_star(9, true),
      gen_two_world_mixture(),
      gen_random_mixture(10, 20, 6),
  };
  for (std::size_t i = 0; i < models.size(); ++i) {
    const fs::path a = dir / ("a" + std::to_string(i) + ".json");
    const fs::path b = dir / ("b" + std::to_string(i) + ".json");
    save_model(a.string(), models[i]);
    save_model(b.string(), models[i]);
    CHECK(slurp(a).size() > 0);
    const DiffusionModel back = load_model(a.string());
    check_same_model(models[i], back);
    save_model(b.string(), back);
    const fs::path a2 = dir / ("c" + std::to_string(i) + ".json");
    save_model(a2.string(), back);
    // Contents match apart from the file names the index refers to.
    std::string ta = slurp(a), tc = slurp(a2);
    const std::string na = a.filename().string(), nc = a2.filename().string();
    for (std::size_t pos; (pos = tc.find(nc)) != std::string::npos;) {
      tc.replace(pos, nc.size(), na);
    }
    CHECK(ta == tc);
    CHECK(slurp(dir / (na + ".edges")) == slurp(dir / (nc + ".edges")));
  }
  fs::remove_all(dir);
}

TEST_CASE("plain edge lists load as independent cascade") {
  const fs::path dir = scratch_dir("plain");
  const fs::path p = dir / "g.txt";
  {
    std::ofstream out(p);
    out << "#nodes 3\n0 1 0.5\n1 2 0.25\n";
  }
  const DiffusionModel m = load_model(p.string());
  CHECK(m.kind() == ModelKind::kIC);
  CHECK(m.graph().num_edges() == 2);
  CHECK(exact_influence(m, SeedSet{0}, 2) == Approx(1.625));
  CHECK_THROWS_AS(load_model((dir / "missing.json").string()), InvalidInput);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace simoracle
