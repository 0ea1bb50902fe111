#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dimcov/graph.hpp"
#include "dimcov/random.hpp"

namespace dimcov {

// A reverse-reachable set with enough recorded randomness to be extended
// when new edges arrive, without re-flipping anything.
//
// IC: `ic_flips` memoizes the outcome of every edge ever examined for this
// set, live and dead alike.  members = nodes that reach the root through
// live-recorded edges, and every in-edge of every member is memoized.
//
// LT: `lt_choices[i]` is the in-edge choice node members[i] made (kNoEdge for
// "none") plus the residual q_v = 1 - sum of the in-weights present when the
// choice was made.  q_v shrinks as later edges are offered to the set.
//
// `synced_edges` is the number of graph edge ids this set has processed.  A
// set sampled at edge count s must then be offered edges s, s+1, ... in
// insertion order; anything else raises StaleSet.
struct RRSet {
  NodeId root = 0;
  std::vector<NodeId> members;  // insertion order, root first

  std::vector<std::pair<EdgeId, bool>> ic_flips;  // edge -> live?

  struct LtChoice {
    EdgeId chosen;    // kNoEdge means "none"
    double residual;  // q_v at the latest offer
  };
  std::vector<LtChoice> lt_choices;  // parallel to members

  std::uint64_t steps = 0;         // cumulative charged steps
  std::uint64_t synced_edges = 0;  // graph edge ids processed so far
  RandomSource rng;                // this set's private stream

  bool contains(NodeId v) const {
    for (NodeId w : members) {
      if (w == v) return true;
    }
    return false;
  }

  static constexpr EdgeId kNoEdge = InfluenceGraph::kNoEdge;
};

// Samples the RR set of `root` on the current graph.  Charged steps: one per
// IC edge flip, and max(1, live in-degree) per LT choice draw; every sample
// costs at least 1 step (the root visit).  The returned set owns `rng` and
// consumes it for all later augmentations.
RRSet sample_rr(const InfluenceGraph& graph, NodeId root, RandomSource rng);

struct AugmentResult {
  std::vector<NodeId> added;   // new members, in discovery order
  std::uint64_t steps_delta;   // steps charged by this call
};

// Extends `set` with the freshly inserted edge `new_edge` (which must already
// be in `graph`).  The resulting member distribution equals sampling from
// scratch on the graph restricted to edges the set has been offered, so the
// graph passed in may be ahead of the set: members added mid-walk see only
// edge ids up to `new_edge`, and later ids arrive through their own calls.
// Charges: IC, one step per fresh flip (memo hits are free); LT, one step for
// the reassignment coin plus fresh draw costs for any nodes the walk adds.
// If the edge head is not a member the call is a free no-op.  Errors:
// StaleSet when `new_edge` is not the next unprocessed edge id, UnknownEdge
// when it does not exist.
AugmentResult augment_rr(RRSet& set, const InfluenceGraph& graph, EdgeId new_edge);

// Scratch sampler that charges exactly like sample_rr but records nothing.
// Reused across calls so the estimation loop does not pay per-set
// allocations.  Not thread-safe.
class RRMeter {
 public:
  // Returns the charged step count of one sample rooted at `root`.
  std::uint64_t sample_steps(const InfluenceGraph& graph, NodeId root,
                             RandomSource& rng);

 private:
  void touch(std::size_t n);

  std::vector<std::uint32_t> stamp_;
  std::uint32_t current_ = 0;
  std::vector<NodeId> queue_;
};

}  // namespace dimcov
