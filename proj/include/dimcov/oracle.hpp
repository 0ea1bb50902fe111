#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dimcov/graph.hpp"
#include "dimcov/random.hpp"

namespace dimcov {

// Reference estimators and exhaustive solvers used to cross-check the
// incremental machinery.  Everything here recomputes from scratch on purpose:
// none of it shares state with the engine.

struct SpreadEstimate {
  double mean = 0.0;
  std::uint64_t trials = 0;
  double std_error = 0.0;
};

// Monte Carlo influence spread of `seeds` by forward simulation over live-edge
// draws.  Errors: UnknownNode for a seed outside the graph;
// std::invalid_argument for zero trials.
SpreadEstimate mc_spread(const InfluenceGraph& graph,
                         std::span<const NodeId> seeds, std::uint64_t trials,
                         RandomSource rng);

// Static influence maximization: samples `rr_count` uniform-root RR sets and
// runs exact lazy greedy max coverage on them.  Returns min(k, n) seeds in
// pick order; ties break to the smaller node id.  `sample_steps` (optional)
// receives the charged sampling cost.
std::vector<NodeId> greedy_im(const InfluenceGraph& graph, std::uint32_t k,
                              std::uint64_t rr_count, RandomSource rng,
                              std::uint64_t* sample_steps = nullptr);

struct MaxCoverResult {
  std::vector<std::uint32_t> chosen;  // left indices, ascending
  std::uint64_t value = 0;
};

// Exhaustive MAX-k coverage over an explicit bipartite adjacency
// (left index -> list of right ids).  Errors: TooLarge when C(|left|, k)
// exceeds 1e6.  Ties keep the lexicographically smallest index set.
MaxCoverResult bruteforce_maxk(
    const std::vector<std::vector<std::uint32_t>>& left_neighbors,
    std::uint32_t k);

struct AvgStepsEstimate {
  double raw = 0.0;       // mean charged steps per uniform-root sample
  double fraction = 0.0;  // raw / m, zero on an edge-free graph
};

// Mean charged RR sampling cost over uniform roots.  Errors: EmptyGraph.
AvgStepsEstimate avg_steps(const InfluenceGraph& graph, std::uint64_t trials,
                           RandomSource rng);

}  // namespace dimcov
