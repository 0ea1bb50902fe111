#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "dimcov/engine.hpp"
#include "dimcov/errors.hpp"
#include "dimcov/graph.hpp"
#include "dimcov/random.hpp"

using namespace dimcov;

namespace {

EngineConfig base_config() {
  EngineConfig cfg;
  cfg.k = 1;
  cfg.epsilon = 0.2;
  cfg.delta = 0.1;
  cfg.c = 25.0;
  cfg.model = DiffusionModel::kIC;
  cfg.rng_seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("configuration is validated up front") {
  EngineConfig cfg = base_config();
  cfg.k = 0;
  CHECK_THROWS_AS(Engine{cfg}, BadConfig);
  cfg = base_config();
  cfg.epsilon = 0.34;  // at or above 1/3 the phase analysis breaks down
  CHECK_THROWS_AS(Engine{cfg}, BadConfig);
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(Engine{cfg}, BadConfig);
  cfg = base_config();
  cfg.delta = 1.0;
  CHECK_THROWS_AS(Engine{cfg}, BadConfig);
  cfg = base_config();
  cfg.c = 10.0;
  CHECK_THROWS_AS(Engine{cfg}, BadConfig);
  cfg.c = 24.0;  // the bound is strict
  CHECK_THROWS_AS(Engine{cfg}, BadConfig);
  CHECK_NOTHROW(Engine{base_config()});
}

TEST_CASE("edge-free bootstrap answers queries exactly") {
  EngineConfig cfg = base_config();
  cfg.k = 2;
  Engine e(cfg);
  CHECK(e.bootstrap_active());

  auto q0 = e.query();
  CHECK(q0.seeds.empty());
  CHECK(q0.spread_estimate == 0.0);

  for (int i = 0; i < 3; ++i) e.insert_node();
  auto q = e.query();
  CHECK(q.seeds == std::vector<NodeId>{0, 1});
  CHECK(q.spread_estimate == 2.0);
  CHECK(e.update_count() == 3);
  CHECK(e.total_steps() == 0);
  CHECK(e.rebuild_count() == 0);
  CHECK_THROWS_AS(e.rebuild(), EmptyGraph);
}

TEST_CASE("the first edge triggers a full build") {
  Engine e(base_config());
  for (int i = 0; i < 4; ++i) e.insert_node();
  e.insert_edge(0, 1, 0.5);

  CHECK_FALSE(e.bootstrap_active());
  CHECK(e.n0() == 4);
  CHECK(e.m0() == 1);
  REQUIRE(e.rebuild_log().size() == 1);
  CHECK(e.rebuild_log()[0].reason == RebuildReason::kBootstrap);
  CHECK(e.rebuild_log()[0].update_index == 5);

  const double want_R = 25.0 / (0.2 * 0.2) * std::log(4.0 / 0.1);
  CHECK(e.sample_size_R() == doctest::Approx(want_R));
  CHECK(e.sample_count_K() >= 1);
  CHECK(e.sampling_probability() == 1.0);  // K dwarfs n at this scale
  CHECK(e.solver() != nullptr);
  CHECK(e.total_steps() > 0);
}

TEST_CASE("sample-count estimation stops exactly at the step budget") {
  InfluenceGraph g(DiffusionModel::kIC);
  for (int i = 0; i < 5; ++i) g.add_node();  // no edges: every sample is 1 step

  std::uint64_t steps = 0;
  CHECK(estimate_sample_count(g, 10.0, 1, RandomSource(3), &steps) == 10);
  CHECK(steps == 10);
  CHECK(estimate_sample_count(g, 10.5, 1, RandomSource(3)) == 11);
  CHECK(estimate_sample_count(g, 5.0, 2, RandomSource(4)) == 10);

  InfluenceGraph empty(DiffusionModel::kIC);
  CHECK_THROWS_AS(estimate_sample_count(empty, 10.0, 1, RandomSource(1)),
                  EmptyGraph);
}

TEST_CASE("sample counts track the mean sampling cost") {
  // Hub with four leaves: uniform-root cost averages 1.6 steps, so a budget
  // of B yields about B / 1.6 completed samples.
  InfluenceGraph g(DiffusionModel::kIC);
  NodeId hub = g.add_node();
  for (int i = 0; i < 4; ++i) g.add_edge(g.add_node(), hub, 0.5);
  const double budget = 1000.0;
  std::uint64_t k = estimate_sample_count(g, budget, 1, RandomSource(7));
  CHECK(k > 550);
  CHECK(k < 700);  // expectation 625
}

TEST_CASE("doubling of either side of the graph starts a new phase") {
  Engine e(base_config());
  for (int i = 0; i < 4; ++i) e.insert_node();
  e.insert_edge(0, 1, 0.5);   // bootstrap build, n0 = 4, m0 = 1
  e.insert_edge(1, 2, 0.5);   // m = 2 doubles m0 = 1
  CHECK(e.m0() == 2);
  e.insert_edge(2, 3, 0.5);   // m = 3: plain augmentation
  CHECK(e.m0() == 2);
  e.insert_edge(0, 2, 0.5);   // m = 4 doubles m0 = 2
  CHECK(e.m0() == 4);
  for (int i = 0; i < 4; ++i) e.insert_node();  // n = 8 doubles n0 = 4

  CHECK(e.n0() == 8);
  const auto& log = e.rebuild_log();
  REQUIRE(log.size() == 4);
  CHECK(log[0].reason == RebuildReason::kBootstrap);
  CHECK(log[1].reason == RebuildReason::kEdgeDoubling);
  CHECK(log[2].reason == RebuildReason::kEdgeDoubling);
  CHECK(log[3].reason == RebuildReason::kNodeDoubling);
  CHECK(e.phase_count() == 4);
  CHECK(e.iteration_count() == 4);
  CHECK(e.rebuild_count() == 4);
  CHECK(e.restart_count() == 0);
}

TEST_CASE("failed insertions leave the update counter untouched") {
  Engine e(base_config());
  e.insert_node();
  e.insert_node();
  e.insert_edge(0, 1, 0.5);
  const auto before = e.update_count();
  CHECK_THROWS_AS(e.insert_edge(0, 1, 0.5), DuplicateEdge);
  CHECK_THROWS_AS(e.insert_edge(0, 0, 0.5), SelfLoop);
  CHECK_THROWS_AS(e.insert_edge(0, 9, 0.5), UnknownNode);
  CHECK(e.update_count() == before);
}

TEST_CASE("deterministic seeds on a sure-fire edge") {
  // With p = 1 every coverage set rooted at 1 contains 0, so the solver sees
  // the exact coverage structure and the spread normalizes to sigma({0}) = 2.
  Engine e(base_config());
  e.insert_node();
  e.insert_node();
  e.insert_edge(0, 1, 1.0);

  auto q = e.query();
  CHECK(q.seeds == std::vector<NodeId>{0});
  CHECK(q.spread_estimate == 2.0);

  std::vector<NodeId> s0 = {0}, s1 = {1};
  CHECK(e.coverage_estimate(s0) == 2.0);
  CHECK(e.coverage_estimate(s1) == 1.0);
  CHECK(e.coverage_estimate({}) == 0.0);
}

TEST_CASE("restart triggers exactly when est steps exceed the budget") {
  auto build = [] {
    Engine e(base_config());
    for (int i = 0; i < 8; ++i) e.insert_node();
    e.insert_edge(0, 1, 0.5);
    return e;
  };

  Engine stay = build();
  const double budget = EngineTestAccess::restart_budget(stay);
  const auto floor_b = static_cast<std::uint64_t>(budget);

  // One singleton sample (1 step) lands exactly on the budget: no restart.
  EngineTestAccess::preload_est_steps(stay, floor_b - 1);
  stay.insert_node();
  CHECK(stay.restart_count() == 0);
  CHECK(stay.est_steps() == floor_b);

  // One step past the budget: the insertion itself must restart the engine.
  Engine go = build();
  EngineTestAccess::preload_est_steps(go, floor_b);
  go.insert_node();
  CHECK(go.restart_count() == 1);
  CHECK(go.n0() == 9);
  CHECK(go.m0() == 1);
  CHECK(go.phase_count() == 1);      // a restart opens no new phase
  CHECK(go.iteration_count() == 2);  // but it is a new iteration
  REQUIRE(go.rebuild_log().size() == 2);
  CHECK(go.rebuild_log()[1].reason == RebuildReason::kRestart);
  CHECK(go.rebuild_log()[1].est_steps_at_trigger == floor_b + 1);
  CHECK(go.est_steps() == go.init_est_steps());
}

TEST_CASE("estimation side is oblivious to coverage sampling") {
  auto drive = [](bool cv) {
    EngineConfig cfg = base_config();
    cfg.cv_enabled = cv;
    Engine e(cfg);
    for (int i = 0; i < 6; ++i) e.insert_node();
    e.insert_edge(0, 1, 0.6);
    e.insert_edge(1, 2, 0.6);
    e.insert_edge(2, 3, 0.6);
    e.insert_edge(3, 4, 0.6);
    e.insert_edge(4, 5, 0.6);
    const auto floor_b = static_cast<std::uint64_t>(
        EngineTestAccess::restart_budget(e));
    EngineTestAccess::preload_est_steps(e, floor_b);
    e.insert_node();  // pushes past the budget, forcing a restart
    e.insert_edge(5, 6, 0.6);
    return e;
  };

  Engine with = drive(true);
  Engine without = drive(false);

  CHECK(without.cv_root_count() == 0);
  CHECK(with.cv_root_count() > 0);

  REQUIRE(with.rebuild_log().size() == without.rebuild_log().size());
  for (std::size_t i = 0; i < with.rebuild_log().size(); ++i) {
    CHECK(with.rebuild_log()[i].update_index ==
          without.rebuild_log()[i].update_index);
    CHECK(with.rebuild_log()[i].reason == without.rebuild_log()[i].reason);
  }
  CHECK(with.restart_count() == 1);
  CHECK(without.restart_count() == 1);
  CHECK(with.sample_count_K() == without.sample_count_K());
  CHECK(with.est_steps() == without.est_steps());
  CHECK(with.n0() == without.n0());
  CHECK(with.m0() == without.m0());
  CHECK(with.sampling_probability() == without.sampling_probability());
}

TEST_CASE("runs are reproducible end to end") {
  auto drive = [] {
    Engine e(base_config());
    for (int i = 0; i < 5; ++i) e.insert_node();
    e.insert_edge(0, 1, 0.7);
    e.insert_edge(1, 2, 0.4);
    e.insert_edge(3, 2, 0.9);
    e.insert_edge(2, 4, 0.5);
    return e;
  };
  Engine a = drive();
  Engine b = drive();
  auto qa = a.query(), qb = b.query();
  CHECK(qa.seeds == qb.seeds);
  CHECK(qa.spread_estimate == qb.spread_estimate);
  CHECK(a.sample_count_K() == b.sample_count_K());
  CHECK(a.est_steps() == b.est_steps());
  CHECK(a.cv_steps() == b.cv_steps());
  CHECK(a.total_steps() == b.total_steps());
}

TEST_CASE("manual rebuilds open an iteration but no phase") {
  Engine e(base_config());
  e.insert_node();
  e.insert_node();
  e.insert_edge(0, 1, 0.5);
  const auto phases = e.phase_count();
  e.rebuild();
  CHECK(e.rebuild_count() == 2);
  CHECK(e.iteration_count() == 2);
  CHECK(e.phase_count() == phases);
  CHECK(e.rebuild_log().back().reason == RebuildReason::kManual);
}

TEST_CASE("coverage sets stay synchronized through augmentations") {
  Engine e(base_config());
  for (int i = 0; i < 6; ++i) e.insert_node();
  e.insert_edge(0, 1, 0.8);
  e.insert_edge(2, 1, 0.8);
  e.insert_edge(3, 4, 0.8);
  e.insert_edge(0, 5, 0.8);
  e.insert_edge(2, 4, 0.8);

  CHECK(e.solver()->left_count() == e.graph().node_count());
  CHECK(e.solver()->right_count() == e.cv_root_count());
  CHECK(e.est_root_count() == e.graph().node_count());  // p = 1 here
  CHECK(e.est_steps() >= e.init_est_steps());
}

TEST_CASE("large sparse graphs run at a fractional sampling probability") {
  EngineConfig cfg = base_config();
  cfg.rng_seed = 1234;
  Engine e(cfg);
  const int n = 10000;
  for (int i = 0; i < n; ++i) e.insert_node();
  e.insert_edge(0, 1, 0.5);  // bootstrap at n0 = 10000, m0 = 1

  const double p = e.sampling_probability();
  CHECK(p < 1.0);
  CHECK(p > 0.3);
  CHECK(p == static_cast<double>(e.sample_count_K()) / 10000.0);

  // Sampled root counts concentrate around p * n.
  const double sd = std::sqrt(p * (1.0 - p) * n);
  CHECK(std::abs(static_cast<double>(e.est_root_count()) - p * n) < 5 * sd);
  CHECK(std::abs(static_cast<double>(e.cv_root_count()) - p * n) < 5 * sd);

  // The initial sampling pass costs on the order of the estimation budget.
  const double budget = e.sample_size_R() * static_cast<double>(e.m0());
  CHECK(static_cast<double>(e.init_est_steps()) < 4.0 * budget);
  CHECK(static_cast<double>(e.init_est_steps()) > budget / 100.0);

  // Growth keeps working in the fractional regime.
  e.insert_edge(1, 2, 0.5);  // edge doubling
  e.insert_edge(2, 3, 0.5);  // plain augmentation
  CHECK(e.m0() == 2);
  auto q = e.query();
  CHECK(!q.seeds.empty());
  CHECK(q.spread_estimate >= 0.0);
}
