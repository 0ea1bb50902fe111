#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "dimcov/errors.hpp"
#include "dimcov/graph.hpp"
#include "dimcov/hardness.hpp"
#include "dimcov/oracle.hpp"
#include "dimcov/random.hpp"
#include "dimcov/stream.hpp"

using namespace dimcov;

namespace {

HardInstance tiny_ic() {
  HardInstance inst;
  inst.n = 2;
  inst.m = 2;
  inst.t = 1;
  inst.model = DiffusionModel::kIC;
  inst.A = {{0, 1}, {1}};
  inst.B = {{0}, {1}};
  return inst;
}

// Applies a prefix of `events` to the graph, stopping after consuming one
// query event; returns false when the stream is exhausted first.
bool replay_to_next_query(const std::vector<UpdateEvent>& events,
                          std::size_t& pos, InfluenceGraph& g) {
  while (pos < events.size()) {
    const UpdateEvent& ev = events[pos++];
    switch (ev.kind) {
      case EventKind::kNode: g.add_node(); break;
      case EventKind::kEdge: g.add_edge(ev.u, ev.v, ev.param); break;
      case EventKind::kDel: g.remove_edge(ev.u, ev.v); break;
      case EventKind::kQuery: return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("structural validation catches malformed instances") {
  CHECK_NOTHROW(validate_instance(tiny_ic()));

  HardInstance bad = tiny_ic();
  bad.A.pop_back();
  CHECK_THROWS_AS(validate_instance(bad), InvalidInstance);

  bad = tiny_ic();
  bad.B[0] = {5};  // outside the universe
  CHECK_THROWS_AS(validate_instance(bad), InvalidInstance);

  bad = tiny_ic();
  bad.A[0] = {1, 0};  // unsorted
  CHECK_THROWS_AS(validate_instance(bad), InvalidInstance);

  bad = tiny_ic();
  bad.t = 2;  // B sets are singletons
  CHECK_THROWS_AS(validate_instance(bad), InvalidInstance);

  bad = tiny_ic();
  bad.n = 0;
  CHECK_THROWS_AS(validate_instance(bad), InvalidInstance);
}

TEST_CASE("normalization scales the universe to honor the size floor") {
  HardInstance inst;
  inst.n = 1;
  inst.m = 2;
  inst.t = 3;
  inst.model = DiffusionModel::kIC;
  inst.A = {{0}};
  inst.B = {{0, 1}};  // size 2 < t

  HardInstance norm = normalize_instance(inst);
  CHECK(norm.m == 6);
  CHECK(norm.A[0] == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(norm.B[0] == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});
  CHECK_NOTHROW(validate_instance(norm));

  // Already compliant instances come back unchanged apart from sorting.
  HardInstance tidy = tiny_ic();
  tidy.A[0] = {1, 0, 1};
  HardInstance same = normalize_instance(tidy);
  CHECK(same.m == 2);
  CHECK(same.A[0] == std::vector<std::uint32_t>{0, 1});

  HardInstance hopeless = tiny_ic();
  hopeless.B[0] = {};
  CHECK_THROWS_AS(normalize_instance(hopeless), InvalidInstance);
}

TEST_CASE("spread closed form on the two-by-two instance") {
  HardInstance inst = tiny_ic();
  CHECK(exact_spread(inst, 0, 0) == 5.0);  // 1 + |A| + overlap * m * t
  CHECK(exact_spread(inst, 0, 1) == 2.0);  // no overlap: 1 + |A|
  CHECK(exact_spread(inst, 1, 0) == 5.0);
  CHECK(exact_spread(inst, 1, 1) == 4.0);
  CHECK(exact_best_per_epoch(inst) == std::vector<double>{5.0, 5.0});

  CHECK_THROWS_AS(exact_spread(inst, 2, 0), BadEpoch);
  CHECK_THROWS_AS(exact_spread(inst, 0, 2), BadSeed);

  std::vector<double> best = {5.0, 5.0};
  CHECK(decide(inst, best));  // 5 > 2 * m * |B| = 4
  std::vector<double> low = {4.0, 4.0};
  CHECK_FALSE(decide(inst, low));
  std::vector<double> short_vec = {5.0};
  CHECK_THROWS_AS(decide(inst, short_vec), InvalidInstance);
}

TEST_CASE("emitted stream has the predicted shape") {
  HardInstance inst = tiny_ic();
  HardLayout lay(inst);
  CHECK(lay.node_total == 8);  // 2 sources, 2 elements, 4 amplifiers
  CHECK(lay.amp_per_element == 2);
  CHECK(lay.source(1) == 1);
  CHECK(lay.element(0) == 2);
  CHECK(lay.amplifier(1, 1) == 7);

  std::vector<UpdateEvent> ev = emit_stream(inst);
  // 8 nodes + 7 base edges + epoch 0 (4 del, 2 add, query)
  //                        + epoch 1 (2 del, 2 add, query)
  CHECK(ev.size() == 27);
  std::size_t queries = 0, dels = 0;
  for (const auto& e : ev) {
    if (e.kind == EventKind::kQuery) ++queries;
    if (e.kind == EventKind::kDel) ++dels;
  }
  CHECK(queries == 2);
  CHECK(dels == 6);
}

TEST_CASE("IC replay matches the closed form at every epoch and seed") {
  RandomSource rng(15);
  for (int rep = 0; rep < 6; ++rep) {
    HardInstance inst =
        rep % 2 == 0
            ? make_yes_instance(2 + rep, 3, 2 + rep % 3, DiffusionModel::kIC,
                                rng.split(rep))
            : make_no_instance(2 + rep, 3, 1 + rep % 4, DiffusionModel::kIC,
                               rng.split(rep));
    std::vector<UpdateEvent> ev = emit_stream(inst);
    InfluenceGraph g(DiffusionModel::kIC);
    std::size_t pos = 0;
    for (std::uint32_t tau = 0; tau < inst.n; ++tau) {
      REQUIRE(replay_to_next_query(ev, pos, g));
      for (std::uint32_t i = 0; i < inst.n; ++i) {
        std::vector<NodeId> seed = {HardLayout(inst).source(i)};
        // All probabilities are 1, so one trial is an exact reachability count.
        double reached = mc_spread(g, seed, 1, RandomSource(1)).mean;
        CHECK(reached == exact_spread(inst, tau, i));
      }
    }
    CHECK_FALSE(replay_to_next_query(ev, pos, g));
  }
}

TEST_CASE("LT replay is legal and agrees with the expected spread") {
  RandomSource rng(77);
  HardInstance inst = make_yes_instance(3, 3, 2, DiffusionModel::kLT,
                                        rng.split(1));
  std::vector<UpdateEvent> ev = emit_stream(inst);
  InfluenceGraph g(DiffusionModel::kLT);  // add_edge re-checks weight budgets
  std::size_t pos = 0;
  HardLayout lay(inst);
  for (std::uint32_t tau = 0; tau < inst.n; ++tau) {
    REQUIRE(replay_to_next_query(ev, pos, g));
    for (std::uint32_t i = 0; i < inst.n; ++i) {
      std::vector<NodeId> seed = {lay.source(i)};
      SpreadEstimate est = mc_spread(g, seed, 20000, rng.split(tau, i));
      const double want = exact_spread(inst, tau, i);
      CHECK(std::abs(est.mean - want) < std::max(0.5, 6 * est.std_error));
    }
  }
}

TEST_CASE("planted generators decide as planted") {
  RandomSource rng(2025);
  int yes_checked = 0, no_checked = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto model =
        rep % 2 == 0 ? DiffusionModel::kIC : DiffusionModel::kLT;
    const std::uint32_t n = 2 + rep % 6;
    const std::uint32_t m = 2 + rep % 4;

    HardInstance yes = make_yes_instance(n, m, 2 + rep % 3, model,
                                         rng.split(1, rep));
    CHECK(decide(yes, exact_best_per_epoch(yes)));
    ++yes_checked;

    HardInstance no = make_no_instance(n, m, 1 + rep % 4, model,
                                       rng.split(2, rep));
    CHECK_FALSE(decide(no, exact_best_per_epoch(no)));
    // The no-side margin holds pairwise by construction.
    for (const auto& a : no.A) {
      for (const auto& b : no.B) {
        std::uint64_t inter = 0;
        for (std::uint32_t e : a) {
          for (std::uint32_t f : b) inter += e == f;
        }
        CHECK(std::uint64_t{no.t} * inter < b.size());
      }
    }
    ++no_checked;
  }
  CHECK(yes_checked == 20);
  CHECK(no_checked == 20);

  CHECK_THROWS_AS(
      make_yes_instance(2, 2, 1, DiffusionModel::kIC, RandomSource(1)),
      InvalidInstance);
}
