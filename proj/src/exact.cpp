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

#include "simoracle/exact.hpp"

#include <algorithm>
#include <cmath>

#include "simoracle/error.hpp"

namespace simoracle {

namespace {

// One independent random unit attached to a tail node: an ungrouped edge or
// a dependence group. For LT each out-edge is a unit whose probability is
// conditioned at run time.
struct Unit {
  double p = 0.0;
  std::vector<NodeId> heads;
  EdgeId edge = 0;  // LT only
};

class Enumerator {
 public:
  Enumerator(const DiffusionModel& model, std::int32_t tau, bool steps,
             std::uint64_t budget, ExactMoments& out)
      : graph_(model.graph()),
        lt_(model.kind() == ModelKind::kLT),
        tau_(tau),
        steps_(steps),
        budget_(budget),
        out_(out) {
    const std::size_t n = graph_.num_nodes();
    units_.resize(n);
    if (lt_) {
      for (NodeId u = 0; u < n; ++u) {
        for (EdgeId e : graph_.out_edges(u)) {
          const Edge& edge = graph_.edge(e);
          if (edge.p > 0.0) units_[u].push_back({edge.p, {edge.head}, e});
        }
      }
      excluded_.assign(n, 0.0);
    } else {
      for (NodeId u = 0; u < n; ++u) {
        for (EdgeId e : graph_.out_edges(u)) {
          if (graph_.group_of(e) >= 0) continue;
          const Edge& edge = graph_.edge(e);
          if (edge.p > 0.0) units_[u].push_back({edge.p, {edge.head}, e});
        }
      }
      for (const EdgeGroup& g : graph_.groups()) {
        if (g.p <= 0.0) continue;
        Unit unit{g.p, {}, 0};
        for (EdgeId e : g.edges) unit.heads.push_back(graph_.edge(e).head);
        std::sort(unit.heads.begin(), unit.heads.end());
        unit.heads.erase(std::unique(unit.heads.begin(), unit.heads.end()),
                         unit.heads.end());
        units_[g.tail].push_back(std::move(unit));
      }
    }
    depth_.assign(n, -1);
  }

  void run(const SeedSet& seeds, double scale) {
    value_ = 0.0;
    for (NodeId s : seeds.ids()) activate(s, 0, scale);
    explore(0, 0, scale);
    for (NodeId s : seeds.ids()) depth_[s] = -1;
    queue_.clear();
  }

 private:
  void activate(NodeId v, std::int32_t d, double prob) {
    depth_[v] = d;
    queue_.push_back(v);
    value_ += graph_.weight(v);
    if (steps_) {
      out_.step_probs[static_cast<std::size_t>(v) * (tau_ + 1) + d] += prob;
    }
  }

  void deactivate_to(std::size_t queue_size) {
    while (queue_.size() > queue_size) {
      depth_[queue_.back()] = -1;
      queue_.pop_back();
    }
  }

  void leaf(double prob) {
    if (++out_.outcomes > budget_) {
      throw BudgetExceeded("instance too large for exact enumeration");
    }
    out_.influence += prob * value_;
    out_.second_moment += prob * value_ * value_;
  }

  void explore(std::size_t qpos, std::size_t unit, double prob) {
    for (; qpos < queue_.size(); ++qpos, unit = 0) {
      const NodeId u = queue_[qpos];
      const std::int32_t d = depth_[u];
      if (d >= tau_) break;
      const auto& units = units_[u];
      for (; unit < units.size(); ++unit) {
        const Unit& un = units[unit];
        bool relevant = false;
        for (NodeId h : un.heads) relevant = relevant || depth_[h] < 0;
        if (!relevant) continue;
        if (lt_) {
          branch_lt(qpos, unit, prob, un, d);
        } else {
          branch_independent(qpos, unit, prob, un, d);
        }
        return;
      }
    }
    leaf(prob);
  }

  void branch_independent(std::size_t qpos, std::size_t unit, double prob,
                          const Unit& un, std::int32_t d) {
    const double saved_value = value_;
    const std::size_t saved_queue = queue_.size();
    const double live = prob * un.p;
    for (NodeId h : un.heads) {
      if (depth_[h] < 0) activate(h, d + 1, live);
    }
    explore(qpos, unit + 1, live);
    deactivate_to(saved_queue);
    value_ = saved_value;
    if (un.p < 1.0) explore(qpos, unit + 1, prob * (1.0 - un.p));
  }

  // The head picks this edge with probability b / (1 - mass already ruled
  // out by earlier active tails on this path).
  void branch_lt(std::size_t qpos, std::size_t unit, double prob,
                 const Unit& un, std::int32_t d) {
    const NodeId h = un.heads.front();
    const double remaining = 1.0 - excluded_[h];
    double q = remaining > 0.0 ? un.p / remaining : 1.0;
    if (q > 1.0 - 1e-12) q = 1.0;
    const double saved_value = value_;
    const std::size_t saved_queue = queue_.size();
    activate(h, d + 1, prob * q);
    explore(qpos, unit + 1, prob * q);
    deactivate_to(saved_queue);
    value_ = saved_value;
    if (q < 1.0) {
      const double saved_excluded = excluded_[h];
      excluded_[h] += un.p;
      explore(qpos, unit + 1, prob * (1.0 - q));
      excluded_[h] = saved_excluded;
    }
  }

  const Graph& graph_;
  bool lt_;
  std::int32_t tau_;
  bool steps_;
  std::uint64_t budget_;
  ExactMoments& out_;
  std::vector<std::vector<Unit>> units_;
  std::vector<std::int32_t> depth_;
  std::vector<NodeId> queue_;
  std::vector<double> excluded_;
  double value_ = 0.0;
};

}  // namespace

double ExactMoments::variance() const {
  return std::max(0.0, second_moment - influence * influence);
}

ExactMoments exact_moments(const DiffusionModel& model, const SeedSet& seeds,
                           std::int32_t tau, bool with_step_probs,
                           std::uint64_t budget) {
  seeds.validate(model.num_nodes());
  if (tau < 0) throw InvalidInput("tau must be nonnegative");
  ExactMoments out;
  if (with_step_probs) {
    out.step_probs.assign(model.num_nodes() * (tau + 1), 0.0);
  }
  if (model.kind() == ModelKind::kMixture) {
    for (const MixtureComponent& c : model.components()) {
      Enumerator(*c.model, tau, with_step_probs, budget, out)
          .run(seeds, c.weight);
    }
  } else {
    Enumerator(model, tau, with_step_probs, budget, out).run(seeds, 1.0);
  }
  return out;
}

double exact_influence(const DiffusionModel& model, const SeedSet& seeds,
                       std::int32_t tau) {
  return exact_moments(model, seeds, tau).influence;
}

double exact_opt1(const DiffusionModel& model, std::int32_t tau) {
  double best = 0.0;
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    best = std::max(best, exact_influence(model, SeedSet{v}, tau));
  }
  return best;
}

ExactReport exact_report(const DiffusionModel& model, const SeedSet& seeds,
                         std::int32_t tau) {
  const ExactMoments m = exact_moments(model, seeds, tau, true);
  ExactReport r;
  r.tau = tau;
  r.influence = m.influence;
  r.variance = m.variance();
  r.enumeration_size = m.outcomes;
  const std::size_t width = static_cast<std::size_t>(tau) + 1;
  r.step_probs.resize(model.num_nodes());
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    auto first = m.step_probs.begin() + static_cast<std::ptrdiff_t>(v * width);
    r.step_probs[v].assign(first, first + static_cast<std::ptrdiff_t>(width));
  }
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    const ExactMoments single = exact_moments(model, SeedSet{v}, tau);
    r.opt1 = std::max(r.opt1, single.influence);
    r.enumeration_size += single.outcomes;
  }
  return r;
}

VarianceAudit audit_variance_bound(const DiffusionModel& model,
                                   const SeedSet& seeds, std::int32_t tau,
                                   double c) {
  const ExactMoments m = exact_moments(model, seeds, tau);
  VarianceAudit a;
  a.influence = m.influence;
  a.opt1 = exact_opt1(model, tau);
  a.lhs = m.variance();
  a.rhs = c * a.influence * std::max(a.influence, a.opt1);
  a.holds = a.lhs <= a.rhs * (1.0 + 1e-9);
  return a;
}

double c_value(const DiffusionModel& model, std::int32_t tau) {
  if (tau <= 0) throw InvalidInput("c_value needs tau >= 1");
  const double t = tau;
  switch (model.kind()) {
    case ModelKind::kIC:
    case ModelKind::kLT:
      return t;
    case ModelKind::kBDep:
      return 2.0 * static_cast<double>(model.b()) * t;
    case ModelKind::kMixture:
      return (t + 1.0) / model.min_component_weight();
  }
  return t;
}

double DepthProfile::influence_at(std::int64_t t) const {
  if (influence_by_tau.empty()) return 0.0;
  const auto last = static_cast<std::int64_t>(influence_by_tau.size()) - 1;
  return influence_by_tau[static_cast<std::size_t>(
      std::clamp<std::int64_t>(t, 0, last))];
}

DepthProfile depth_profile(const DiffusionModel& model, const SeedSet& seeds,
                           std::int32_t tau_max) {
  const ExactMoments m = exact_moments(model, seeds, tau_max, true);
  const Graph& g = model.graph();
  const std::size_t width = static_cast<std::size_t>(tau_max) + 1;
  DepthProfile out;
  out.influence_by_tau.assign(width, 0.0);
  double weighted_depth = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (std::size_t d = 0; d < width; ++d) {
      const double mass = g.weight(v) * m.step_probs[v * width + d];
      out.influence_by_tau[d] += mass;
      weighted_depth += static_cast<double>(d) * mass;
    }
  }
  for (std::size_t t = 1; t < width; ++t) {
    out.influence_by_tau[t] += out.influence_by_tau[t - 1];
  }
  const double total = out.influence_by_tau.back();
  out.mean_depth = total > 0.0 ? weighted_depth / total : 0.0;
  return out;
}

double ExactInfluence::operator()(const SeedSet& seeds) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(seeds);
    if (it != cache_.end()) return it->second;
  }
  const double value = exact_influence(*model_, seeds, tau_);
  std::lock_guard lock(mutex_);
  cache_.emplace(seeds, value);
  return value;
}

}  // namespace simoracle
