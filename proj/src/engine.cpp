#include "dimcov/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "dimcov/errors.hpp"

namespace dimcov {

std::uint64_t estimate_sample_count(const InfluenceGraph& graph, double R,
                                    std::uint64_t m0, RandomSource rng,
                                    std::uint64_t* steps_taken) {
  if (graph.node_count() == 0) {
    throw EmptyGraph("estimate needs at least one node");
  }
  assert(R >= 1.0 && m0 >= 1);
  RRMeter meter;
  const double budget = R * static_cast<double>(m0);
  std::uint64_t steps = 0;
  std::uint64_t count = 0;
  while (static_cast<double>(steps) < budget) {
    NodeId root = static_cast<NodeId>(rng.next_below(graph.node_count()));
    steps += meter.sample_steps(graph, root, rng);
    count += 1;
  }
  if (steps_taken != nullptr) *steps_taken = steps;
  return count;
}

Engine::Engine(const EngineConfig& config)
    : cfg_(config), graph_(config.model), master_(config.rng_seed) {
  if (cfg_.k < 1) throw BadConfig("k must be at least 1");
  if (!(cfg_.epsilon > 0.0) || cfg_.epsilon >= 1.0 / 3.0) {
    throw BadConfig("epsilon must lie in (0, 1/3)");
  }
  if (!(cfg_.delta > 0.0) || cfg_.delta >= 1.0) {
    throw BadConfig("delta must lie in (0, 1)");
  }
  if (!(cfg_.c > 24.0)) {
    throw BadConfig("sample-size constant c must exceed 24");
  }
}

void Engine::buildgraph_(RebuildReason reason) {
  iteration_count_ += 1;
  rebuild_count_ += 1;
  if (reason == RebuildReason::kRestart) restart_count_ += 1;
  if (reason == RebuildReason::kBootstrap ||
      reason == RebuildReason::kNodeDoubling ||
      reason == RebuildReason::kEdgeDoubling) {
    phase_count_ += 1;
  }
  rebuild_log_.push_back(RebuildRecord{update_count_, reason, est_steps_});

  est_sets_.clear();
  cv_sets_.clear();
  est_steps_ = 0;
  cv_steps_ = 0;
  init_est_steps_ = 0;

  const double eps = cfg_.epsilon;
  R_ = cfg_.c * static_cast<double>(cfg_.k) / (eps * eps) *
       std::log(static_cast<double>(n0_) / cfg_.delta);

  RandomSource iter = master_.split(iteration_count_);
  std::uint64_t meter_steps = 0;
  K_ = estimate_sample_count(graph_, R_, m0_, iter.split(kTagEstimate),
                             &meter_steps);
  total_steps_ += meter_steps;
  p_ = std::min(1.0, static_cast<double>(K_) / static_cast<double>(n0_));

  solver_.emplace(cfg_.k, cfg_.epsilon, 2 * n0_);
  const NodeId n = static_cast<NodeId>(graph_.node_count());
  for (NodeId v = 0; v < n; ++v) solver_->insert_left(v);
  for (NodeId v = 0; v < n; ++v) {
    if (iter.split(kTagCoinEst, v).bernoulli(p_)) {
      RRSet set = sample_rr(graph_, v, iter.split(kTagRrEst, v));
      est_steps_ += set.steps;
      init_est_steps_ += set.steps;
      total_steps_ += set.steps;
      est_sets_.emplace(v, std::move(set));
    }
    if (cfg_.cv_enabled && iter.split(kTagCoinCv, v).bernoulli(p_)) {
      RRSet set = sample_rr(graph_, v, iter.split(kTagRrCv, v));
      cv_steps_ += set.steps;
      total_steps_ += set.steps;
      solver_->insert_right(v);
      for (NodeId u : set.members) solver_->insert_edge_cov(u, v);
      cv_sets_.emplace(v, std::move(set));
    }
  }
}

bool Engine::maybe_restart_() {
  if (static_cast<double>(est_steps_) <=
      16.0 * R_ * static_cast<double>(m0_)) {
    return false;
  }
  n0_ = graph_.node_count();
  m0_ = graph_.edge_count();
  buildgraph_(RebuildReason::kRestart);
  return true;
}

NodeId Engine::insert_node() {
  NodeId u = graph_.add_node();
  update_count_ += 1;
  if (bootstrap_active()) return u;  // no edges yet, nothing to maintain

  if (graph_.node_count() >= 2 * n0_) {
    n0_ = graph_.node_count();
    m0_ = graph_.edge_count();
    buildgraph_(RebuildReason::kNodeDoubling);
    return u;
  }

  solver_->insert_left(u);
  RandomSource iter = master_.split(iteration_count_);
  if (iter.split(kTagCoinEst, u).bernoulli(p_)) {
    // A fresh node has no edges, so this is the singleton set {u} at 1 step.
    RRSet set = sample_rr(graph_, u, iter.split(kTagRrEst, u));
    est_steps_ += set.steps;
    total_steps_ += set.steps;
    est_sets_.emplace(u, std::move(set));
    if (maybe_restart_()) return u;
  }
  if (cfg_.cv_enabled && iter.split(kTagCoinCv, u).bernoulli(p_)) {
    RRSet set = sample_rr(graph_, u, iter.split(kTagRrCv, u));
    cv_steps_ += set.steps;
    total_steps_ += set.steps;
    solver_->insert_right(u);
    solver_->insert_edge_cov(u, u);
    cv_sets_.emplace(u, std::move(set));
  }
  return u;
}

void Engine::insert_edge(NodeId u, NodeId v, double param) {
  EdgeId eid = graph_.add_edge(u, v, param);  // validates before any state change
  update_count_ += 1;

  if (m0_ == 0) {
    // First edge: leave bootstrap through a full build.
    n0_ = graph_.node_count();
    m0_ = graph_.edge_count();
    buildgraph_(RebuildReason::kBootstrap);
    return;
  }
  if (graph_.edge_count() >= 2 * m0_) {
    m0_ = graph_.edge_count();
    n0_ = graph_.node_count();
    buildgraph_(RebuildReason::kEdgeDoubling);
    return;
  }

  for (auto& [root, set] : est_sets_) {
    AugmentResult res = augment_rr(set, graph_, eid);
    est_steps_ += res.steps_delta;
    total_steps_ += res.steps_delta;
    // The budget check runs after every single set so an expensive
    // augmentation cannot overshoot unnoticed.
    if (maybe_restart_()) return;
  }
  if (!cfg_.cv_enabled) return;
  for (auto& [root, set] : cv_sets_) {
    AugmentResult res = augment_rr(set, graph_, eid);
    cv_steps_ += res.steps_delta;
    total_steps_ += res.steps_delta;
    for (NodeId w : res.added) solver_->insert_edge_cov(w, root);
  }
}

Engine::QueryResult Engine::query() const {
  QueryResult out;
  if (bootstrap_active()) {
    // Edge-free graph: the first min(k, n) nodes are exactly optimal and
    // their spread equals their count.
    std::size_t count =
        std::min<std::size_t>(cfg_.k, graph_.node_count());
    out.seeds.reserve(count);
    for (NodeId v = 0; v < count; ++v) out.seeds.push_back(v);
    out.spread_estimate = static_cast<double>(count);
    return out;
  }
  CoverageSolver::Solution sol = solver_->best_solution();
  out.seeds = std::move(sol.seeds);
  out.spread_estimate = static_cast<double>(sol.value) / p_;
  return out;
}

void Engine::rebuild() {
  if (graph_.edge_count() == 0) {
    throw EmptyGraph("rebuild needs at least one edge");
  }
  n0_ = graph_.node_count();
  m0_ = graph_.edge_count();
  buildgraph_(RebuildReason::kManual);
}

double Engine::coverage_estimate(std::span<const NodeId> seeds) const {
  if (p_ <= 0.0) return 0.0;
  std::uint64_t hit = 0;
  for (const auto& [root, set] : cv_sets_) {
    for (NodeId s : seeds) {
      if (set.contains(s)) {
        hit += 1;
        break;
      }
    }
  }
  return static_cast<double>(hit) / p_;
}

}  // namespace dimcov
