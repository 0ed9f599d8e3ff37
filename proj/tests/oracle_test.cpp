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

#include <cmath>
#include <random>

#include "doctest.h"
#include "simoracle/error.hpp"
#include "simoracle/exact.hpp"
#include "simoracle/families.hpp"
#include "simoracle/oracle.hpp"
#include "simoracle/reach.hpp"
#include "simoracle/rng.hpp"
#include "simoracle/rrs.hpp"
#include "test_support.hpp"

namespace simoracle {
namespace {

using doctest::Approx;

OracleConfig config(std::uint64_t r, std::uint64_t l, std::int32_t tau,
                    std::uint64_t seed) {
  OracleConfig c;
  c.pools = r;
  c.pool_size = l;
  c.tau = tau;
  c.master_seed = seed;
  return c;
}

DiffusionModel path_model() {
  return DiffusionModel::independent_cascade(
      Graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
}

TEST_CASE("sizing arithmetic") {
  const OracleConfig avg =
      size_for_guarantee(0.5, 0.1, 3.0, OracleMode::kAveraging);
  CHECK(avg.pools == 1);
  CHECK(avg.pool_size == 120);

  const OracleConfig moa =
      size_for_guarantee(0.1, 0.01, 4.0, OracleMode::kMedianOfAverages);
  CHECK(moa.pool_size == 1600);
  CHECK(moa.pools == 129);

  const OracleConfig e =
      size_for_guarantee(0.5, std::exp(-1.0), 1.0, OracleMode::kMedianOfAverages);
  CHECK(e.pools == 29);

  const OracleConfig tree =
      size_for_guarantee(0.5, 0.1, 3.0, OracleMode::kMedianOfAverages);
  CHECK(tree.pool_size == 48);
  CHECK(tree.pools == 65);

  CHECK_THROWS_AS(size_for_guarantee(0.0, 0.1, 1.0, OracleMode::kAveraging),
                  InvalidInput);
  CHECK_THROWS_AS(size_for_guarantee(0.5, 1.0, 1.0, OracleMode::kAveraging),
                  InvalidInput);
  CHECK_THROWS_AS(size_for_guarantee(0.5, 0.1, 0.5, OracleMode::kAveraging),
                  InvalidInput);
  CHECK(odd_ceil(28.0) == 29);
  CHECK(odd_ceil(64.47) == 65);
  CHECK(ceil_count(120.00000000001) == 120);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config(2, 5, 1, 0).validate(), InvalidInput);
  CHECK_THROWS_AS(config(0, 5, 1, 0).validate(), InvalidInput);
  CHECK_THROWS_AS(config(1, 0, 1, 0).validate(), InvalidInput);
  CHECK_THROWS_AS(config(1, 1, -1, 0).validate(), InvalidInput);
  CHECK_NOTHROW(config(3, 5, 0, 0).validate());
}

TEST_CASE("median and approximation predicate") {
  CHECK(median_of({2.0, 5.0, 3.0}) == 3.0);
  CHECK(median_of({7.0}) == 7.0);
  CHECK(check_eps_approx(95, 100, 50, 0.1));
  CHECK(check_eps_approx(2, 1, 100, 0.05));
  CHECK_FALSE(check_eps_approx(120, 100, 50, 0.1));
  // At the boundary both forms coincide.
  CHECK(check_eps_approx(110, 100, 100, 0.1));
}

TEST_CASE("wilson bound") {
  CHECK(wilson_upper(0, 1000) == Approx(0.0053828).epsilon(1e-4));
  CHECK(wilson_upper(50, 1000) > 0.05);
  CHECK(wilson_upper(0, 0) == 1.0);
}

TEST_CASE("pool layout") {
  const DiffusionModel model = gen_tree(2);
  const Oracle o = Oracle::build(model, config(3, 2, 2, 8));
  CHECK(o.simulations().size() == 6);
  for (std::uint64_t p = 0; p < 3; ++p) {
    for (std::uint64_t j = 0; j < 2; ++j) {
      CHECK(o.simulation(p, j).index == p * 2 + j);
      CHECK(o.simulation(p, j).live ==
            sample_simulation(model, 8, p * 2 + j).live);
    }
  }
}

TEST_CASE("queries on deterministic models") {
  const DiffusionModel path = path_model();
  for (auto [r, l] : {std::pair{1, 1}, {3, 4}, {5, 2}}) {
    const Oracle o = Oracle::build(path, config(r, l, 2, 1));
    CHECK(o.query(SeedSet{0}) == 3.0);
  }
  const Oracle single = Oracle::build(gen_tree(3), config(1, 1, 3, 4));
  CHECK(single.query(SeedSet{0}) ==
        reach_value(gen_tree(3).graph(), single.simulation(0, 0), SeedSet{0}, 3));
  CHECK_THROWS_AS(single.query(SeedSet{}), InvalidInput);
}

TEST_CASE("median sits between pool averages") {
  const DiffusionModel model = gen_random_ic(12, 30, {0.1, 0.6}, {1, 1}, 3);
  const Oracle o = Oracle::build(model, config(7, 10, 3, 2));
  for (NodeId v = 0; v < 12; ++v) {
    const auto avgs = o.pool_averages(SeedSet{v});
    const double q = o.query(SeedSet{v});
    CHECK(q >= *std::min_element(avgs.begin(), avgs.end()));
    CHECK(q <= *std::max_element(avgs.begin(), avgs.end()));
  }
}

TEST_CASE("reach masks answer identically") {
  const DiffusionModel model = gen_random_ic(10, 25, {0.1, 0.7}, {0.25, 2.0}, 6);
  Oracle a = Oracle::build(model, config(3, 20, 2, 1));
  const Oracle b = Oracle::build(model, config(3, 20, 2, 1));
  a.enable_reach_masks();
  for (const SeedSet& s : testing::all_subsets(6)) {
    if (s.empty()) continue;
    CHECK(a.query(s) == b.query(s));
  }
}

TEST_CASE("averaging oracle is unbiased") {
  const DiffusionModel model = gen_random_bdep(8, 12, 2, 4);
  const SeedSet s{0, 5};
  const ExactMoments m = exact_moments(model, s, 2);
  constexpr int kRebuilds = 500;
  constexpr std::uint64_t kL = 20;
  double sum = 0.0;
  for (int t = 0; t < kRebuilds; ++t) {
    sum += Oracle::build(model, config(1, kL, 2, derive_seed(77, 0, t))).query(s);
  }
  const double sigma = std::sqrt(m.variance() / (kRebuilds * kL));
  CHECK(std::abs(sum / kRebuilds - m.influence) <= 4.0 * sigma);
}

TEST_CASE("guarantee failure rates stay below delta") {
  const DiffusionModel model = gen_random_ic(8, 14, {0.2, 0.8}, {1, 1}, 12);
  constexpr std::int32_t kTau = 2;
  constexpr double kEps = 0.3, kDelta = 0.1;
  const SeedSet s{1};
  const double truth = exact_influence(model, s, kTau);
  const double opt1 = exact_opt1(model, kTau);
  for (OracleMode mode : {OracleMode::kAveraging, OracleMode::kMedianOfAverages}) {
    OracleConfig cfg = size_for_guarantee(kEps, kDelta, c_value(model, kTau), mode);
    cfg.tau = kTau;
    int failures = 0;
    constexpr int kRebuilds = 1000;
    for (int t = 0; t < kRebuilds; ++t) {
      cfg.master_seed = derive_seed(31, static_cast<int>(mode), t);
      failures += !check_eps_approx(Oracle::build(model, cfg).query(s), truth,
                                    opt1, kEps);
    }
    CHECK(wilson_upper(failures, kRebuilds) <= kDelta);
  }
}

TEST_CASE("averaging oracle is monotone and submodular; MoA is monotone") {
  const DiffusionModel model = gen_random_lt(7, 14, 8);
  const Oracle avg = Oracle::build(model, config(1, 40, 2, 5));
  const Oracle moa = Oracle::build(model, config(5, 8, 2, 5));
  const auto sets = testing::all_subsets(7);
  auto val = [](const Oracle& o, const SeedSet& s) {
    return s.empty() ? 0.0 : o.query(s);
  };
  for (const SeedSet& a : sets) {
    for (NodeId u = 0; u < 7; ++u) {
      CHECK(val(avg, a.with(u)) >= val(avg, a));
      CHECK(val(moa, a.with(u)) >= val(moa, a));
    }
    for (const SeedSet& b : sets) {
      if (!std::includes(b.ids().begin(), b.ids().end(), a.ids().begin(),
                         a.ids().end())) {
        continue;
      }
      for (NodeId u = 0; u < 7; ++u) {
        CHECK(val(avg, a.with(u)) - val(avg, a) >=
              val(avg, b.with(u)) - val(avg, b) - 1e-12);
      }
    }
  }
}

TEST_CASE("two-world mixture: simulation averages are unbiased") {
  const DiffusionModel mix = gen_two_world_mixture();
  const Oracle o = Oracle::build(mix, config(1, 1000, kTwoWorldTau, 21));
  for (NodeId v = 0; v < mix.num_nodes(); ++v) {
    const ExactMoments m = exact_moments(mix, SeedSet{v}, kTwoWorldTau);
    CHECK(std::abs(o.query(SeedSet{v}) - m.influence) <=
          4.0 * std::sqrt(m.variance() / 1000) + 1e-12);
  }
}

TEST_CASE("RR search estimates") {
  SUBCASE("deterministic model") {
    const DiffusionModel path = path_model();
    const RrsEstimate e = rrs_estimate(path, RrsMode::kFullSimulation, 30000, 2, 3);
    const double truth[] = {3.0, 2.0, 1.0};
    for (NodeId v = 0; v < 3; ++v) {
      const double p = truth[v] / 3.0;
      CHECK(std::abs(e.estimate[v] - truth[v]) <=
            4.0 * 3.0 * std::sqrt(p * (1 - p) / 30000) + 1e-12);
    }
  }
  SUBCASE("full simulation is unbiased under dependence") {
    const DiffusionModel mix = gen_two_world_mixture();
    const RrsEstimate e =
        rrs_estimate(mix, RrsMode::kFullSimulation, 50000, kTwoWorldTau, 4);
    const double n = 14;
    for (NodeId v = 0; v < 14; ++v) {
      const double truth = exact_influence(mix, SeedSet{v}, kTwoWorldTau);
      const double p = truth / n;
      CHECK(std::abs(e.estimate[v] - truth) <=
            4.0 * n * std::sqrt(p * (1 - p) / 50000) + 1e-12);
    }
  }
  SUBCASE("marginal mode is biased under dependence") {
    const DiffusionModel mix = gen_two_world_mixture();
    const DiffusionModel marginal = marginal_ic(mix);
    std::vector<double> truth, expect;
    for (NodeId v = 0; v < 14; ++v) {
      truth.push_back(exact_influence(mix, SeedSet{v}, kTwoWorldTau));
      expect.push_back(exact_influence(marginal, SeedSet{v}, kTwoWorldTau));
    }
    CHECK(truth[0] == Approx(3.0));
    CHECK(truth[5] == Approx(2.5));
    CHECK(truth[9] == Approx(1.5));
    CHECK(expect[0] == Approx(1.9375));
    CHECK(expect[5] == Approx(2.5));
    CHECK(expect[9] == Approx(1.9375));
    auto argmax = [](const std::vector<double>& x) {
      return std::max_element(x.begin(), x.end()) - x.begin();
    };
    CHECK(argmax(truth) == 0);
    CHECK(argmax(expect) == 5);
  }
  SUBCASE("modes agree on independent cascade") {
    const DiffusionModel ic = gen_random_ic(9, 18, {0.2, 0.7}, {1, 1}, 14);
    constexpr std::uint64_t kN = 40000;
    const RrsEstimate full = rrs_estimate(ic, RrsMode::kFullSimulation, kN, 3, 1);
    const RrsEstimate marg = rrs_estimate(ic, RrsMode::kMarginal, kN, 3, 2);
    for (NodeId v = 0; v < 9; ++v) {
      const double p = exact_influence(ic, SeedSet{v}, 3) / 9.0;
      const double sigma = 9.0 * std::sqrt(2.0 * p * (1 - p) / kN);
      CHECK(std::abs(full.estimate[v] - marg.estimate[v]) <= 4.0 * sigma + 1e-12);
    }
  }
  CHECK_THROWS_AS(rrs_estimate(path_model(), RrsMode::kMarginal, 0, 1, 0),
                  InvalidInput);
}

}  // namespace
}  // namespace simoracle
