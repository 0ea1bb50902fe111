#include "dimcov/graph.hpp"

#include <cassert>
#include <stdexcept>

namespace dimcov {

NodeId InfluenceGraph::add_node() {
  NodeId id = static_cast<NodeId>(out_.size());
  out_.emplace_back();
  in_.emplace_back();
  in_live_.push_back(0);
  in_sum_.push_back(0.0);
  return id;
}

void InfluenceGraph::require_node(NodeId v) const {
  if (!has_node(v)) {
    throw UnknownNode("unknown node " + std::to_string(v));
  }
}

EdgeId InfluenceGraph::find_edge(NodeId u, NodeId v) const {
  if (!has_node(u) || !has_node(v)) return kNoEdge;
  for (EdgeId e : out_[u]) {
    if (edges_[e].alive && edges_[e].dst == v) return e;
  }
  return kNoEdge;
}

EdgeId InfluenceGraph::add_edge(NodeId u, NodeId v, double param) {
  require_node(u);
  require_node(v);
  if (u == v) {
    throw SelfLoop("self loop at node " + std::to_string(u));
  }
  if (!(param > 0.0) || param > 1.0) {
    throw std::invalid_argument("edge param must lie in (0, 1]");
  }
  if (find_edge(u, v) != kNoEdge) {
    throw DuplicateEdge("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") already present");
  }
  if (model_ == DiffusionModel::kLT && in_sum_[v] + param > 1.0 + kLtTolerance) {
    throw LtWeightOverflow("in-weights of node " + std::to_string(v) +
                           " would sum to " + std::to_string(in_sum_[v] + param));
  }

  EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(EdgeRecord{u, v, param, true});
  out_[u].push_back(id);
  in_[v].push_back(id);
  in_live_[v] += 1;
  if (model_ == DiffusionModel::kLT) in_sum_[v] += param;
  live_edges_ += 1;
  assert(model_ != DiffusionModel::kLT || in_sum_[v] <= 1.0 + kLtTolerance);
  return id;
}

void InfluenceGraph::remove_edge(NodeId u, NodeId v) {
  require_node(u);
  require_node(v);
  EdgeId e = find_edge(u, v);
  if (e == kNoEdge) {
    throw UnknownEdge("no live edge (" + std::to_string(u) + ", " +
                      std::to_string(v) + ")");
  }
  edges_[e].alive = false;
  in_live_[v] -= 1;
  if (model_ == DiffusionModel::kLT) {
    in_sum_[v] -= edges_[e].param;
    if (in_sum_[v] < 0.0) in_sum_[v] = 0.0;  // float dust from removals
  }
  live_edges_ -= 1;
}

}  // namespace dimcov
