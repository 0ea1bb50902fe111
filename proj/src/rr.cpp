#include "dimcov/rr.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <string>

#include "dimcov/errors.hpp"

namespace dimcov {

namespace {

struct LtDraw {
  EdgeId chosen;
  double residual;
  std::uint64_t cost;
};

// One LT choice draw at node v: pick an alive in-edge with probability equal
// to its weight, or none with the residual probability.  Only edge ids below
// `limit` take part; an augmentation walk must not see edges the set has not
// been offered yet.  Costs max(1, live in-degree) steps.
LtDraw draw_lt_choice(const InfluenceGraph& graph, NodeId v, EdgeId limit,
                      RandomSource& rng) {
  double x = rng.next_unit();
  double weight_sum = 0.0;
  EdgeId chosen = RRSet::kNoEdge;
  std::uint64_t live = 0;
  for (EdgeId e : graph.in_edges(v)) {
    if (e >= limit) continue;
    const EdgeRecord& rec = graph.edge(e);
    if (!rec.alive) continue;
    ++live;
    weight_sum += rec.param;
    if (chosen == RRSet::kNoEdge && x < weight_sum) chosen = e;
  }
  return LtDraw{chosen, 1.0 - weight_sum, live > 0 ? live : 1};
}

std::size_t member_index(const RRSet& set, NodeId v) {
  for (std::size_t i = 0; i < set.members.size(); ++i) {
    if (set.members[i] == v) return i;
  }
  return set.members.size();
}

bool memo_lookup(const RRSet& set, EdgeId e, bool* live_out) {
  for (const auto& [edge, live] : set.ic_flips) {
    if (edge == e) {
      *live_out = live;
      return true;
    }
  }
  return false;
}

}  // namespace

RRSet sample_rr(const InfluenceGraph& graph, NodeId root, RandomSource rng) {
  if (!graph.has_node(root)) {
    throw UnknownNode("sample_rr: unknown root " + std::to_string(root));
  }
  RRSet set;
  set.root = root;
  set.rng = rng;
  set.synced_edges = graph.edge_ids_issued();
  set.members.push_back(root);

  if (graph.model() == DiffusionModel::kIC) {
    std::uint64_t flips = 0;
    for (std::size_t i = 0; i < set.members.size(); ++i) {
      NodeId w = set.members[i];
      for (EdgeId e : graph.in_edges(w)) {
        const EdgeRecord& rec = graph.edge(e);
        if (!rec.alive) continue;
        bool live = set.rng.bernoulli(rec.param);
        set.ic_flips.emplace_back(e, live);
        ++flips;
        if (live && !set.contains(rec.src)) set.members.push_back(rec.src);
      }
    }
    set.steps = flips > 0 ? flips : 1;  // the root visit is never free
  } else {
    std::uint64_t steps = 0;
    for (std::size_t i = 0; i < set.members.size(); ++i) {
      NodeId w = set.members[i];
      LtDraw draw = draw_lt_choice(graph, w, set.synced_edges, set.rng);
      set.lt_choices.push_back(RRSet::LtChoice{draw.chosen, draw.residual});
      steps += draw.cost;
      if (draw.chosen != RRSet::kNoEdge) {
        NodeId src = graph.edge(draw.chosen).src;
        if (!set.contains(src)) set.members.push_back(src);
      }
    }
    set.steps = steps;
  }
  return set;
}

AugmentResult augment_rr(RRSet& set, const InfluenceGraph& graph, EdgeId new_edge) {
  if (new_edge >= graph.edge_ids_issued()) {
    throw UnknownEdge("augment_rr: edge id " + std::to_string(new_edge) +
                      " does not exist");
  }
  if (new_edge != set.synced_edges) {
    throw StaleSet("augment_rr: set for root " + std::to_string(set.root) +
                   " has processed " + std::to_string(set.synced_edges) +
                   " edges but was offered edge " + std::to_string(new_edge));
  }
  set.synced_edges = new_edge + 1;

  AugmentResult res{{}, 0};
  const EdgeRecord& rec = graph.edge(new_edge);
  if (!set.contains(rec.dst)) return res;  // head not reached: free no-op

  if (graph.model() == DiffusionModel::kIC) {
    bool live = set.rng.bernoulli(rec.param);
    set.ic_flips.emplace_back(new_edge, live);
    res.steps_delta += 1;
    set.steps += 1;
    if (!live || set.contains(rec.src)) return res;

    set.members.push_back(rec.src);
    res.added.push_back(rec.src);
    for (std::size_t i = 0; i < res.added.size(); ++i) {
      NodeId w = res.added[i];
      for (EdgeId e : graph.in_edges(w)) {
        if (e >= set.synced_edges) continue;  // not offered to this set yet
        const EdgeRecord& er = graph.edge(e);
        if (!er.alive) continue;
        bool outcome;
        if (!memo_lookup(set, e, &outcome)) {
          outcome = set.rng.bernoulli(er.param);
          set.ic_flips.emplace_back(e, outcome);
          res.steps_delta += 1;
          set.steps += 1;
        }
        if (outcome && !set.contains(er.src)) {
          set.members.push_back(er.src);
          res.added.push_back(er.src);
        }
      }
    }
    return res;
  }

  // LT: only a member whose recorded choice is "none" can be affected.
  std::size_t idx = member_index(set, rec.dst);
  assert(idx < set.members.size());
  RRSet::LtChoice& choice = set.lt_choices[idx];
  if (choice.chosen != RRSet::kNoEdge) return res;

  double q = choice.residual;
  assert(q > 0.0);
  res.steps_delta += 1;  // the reassignment coin examines the new edge
  set.steps += 1;
  bool take = set.rng.bernoulli(std::min(1.0, rec.param / q));
  choice.residual = std::max(0.0, q - rec.param);  // shrinks either way
  if (!take) return res;

  choice.chosen = new_edge;
  if (set.contains(rec.src)) return res;

  set.members.push_back(rec.src);
  set.lt_choices.push_back(RRSet::LtChoice{RRSet::kNoEdge, 1.0});
  res.added.push_back(rec.src);
  // The walk continues exactly as in sampling: fresh draws for fresh nodes.
  for (std::size_t i = 0; i < res.added.size(); ++i) {
    NodeId w = res.added[i];
    std::size_t wi = member_index(set, w);
    LtDraw draw = draw_lt_choice(graph, w, set.synced_edges, set.rng);
    set.lt_choices[wi] = RRSet::LtChoice{draw.chosen, draw.residual};
    res.steps_delta += draw.cost;
    set.steps += draw.cost;
    if (draw.chosen != RRSet::kNoEdge) {
      NodeId src = graph.edge(draw.chosen).src;
      if (!set.contains(src)) {
        set.members.push_back(src);
        set.lt_choices.push_back(RRSet::LtChoice{RRSet::kNoEdge, 1.0});
        res.added.push_back(src);
      }
    }
  }
  return res;
}

std::uint64_t RRMeter::sample_steps(const InfluenceGraph& graph, NodeId root,
                                    RandomSource& rng) {
  if (!graph.has_node(root)) {
    throw UnknownNode("RRMeter: unknown root " + std::to_string(root));
  }
  touch(graph.node_count());
  ++current_;
  queue_.clear();
  stamp_[root] = current_;
  queue_.push_back(root);

  std::uint64_t steps = 0;
  if (graph.model() == DiffusionModel::kIC) {
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      NodeId w = queue_[i];
      for (EdgeId e : graph.in_edges(w)) {
        const EdgeRecord& rec = graph.edge(e);
        if (!rec.alive) continue;
        ++steps;
        if (rng.bernoulli(rec.param) && stamp_[rec.src] != current_) {
          stamp_[rec.src] = current_;
          queue_.push_back(rec.src);
        }
      }
    }
    return steps > 0 ? steps : 1;
  }

  for (std::size_t i = 0; i < queue_.size(); ++i) {
    NodeId w = queue_[i];
    LtDraw draw = draw_lt_choice(graph, w, graph.edge_ids_issued(), rng);
    steps += draw.cost;
    if (draw.chosen != RRSet::kNoEdge) {
      NodeId src = graph.edge(draw.chosen).src;
      if (stamp_[src] != current_) {
        stamp_[src] = current_;
        queue_.push_back(src);
      }
    }
  }
  return steps;
}

void RRMeter::touch(std::size_t n) {
  if (stamp_.size() < n) stamp_.resize(n, 0);
  if (current_ == std::numeric_limits<std::uint32_t>::max()) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    current_ = 0;
  }
}

}  // namespace dimcov
