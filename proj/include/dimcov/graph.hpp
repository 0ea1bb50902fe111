#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dimcov/errors.hpp"

namespace dimcov {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class DiffusionModel { kIC, kLT };

struct EdgeRecord {
  NodeId src;
  NodeId dst;
  double param;  // IC: activation probability; LT: influence weight
  bool alive;    // false after remove_edge; ids are never reused
};

// Directed influence graph under a fixed diffusion model.
//
// Node ids are dense consecutive integers in arrival order and are never
// reused.  Edge ids likewise follow insertion order; removal tombstones the
// record so ids held elsewhere (RR-set memos) stay meaningful.  At most one
// live edge per ordered pair; inserting a duplicate is an error, not an
// update.  Under LT the live in-weights of every node must sum to at most 1
// (tolerance 1e-12).  Single writer; readers may not overlap a mutation.
class InfluenceGraph {
 public:
  explicit InfluenceGraph(DiffusionModel model) : model_(model) {}

  DiffusionModel model() const { return model_; }

  NodeId add_node();

  // Errors: UnknownNode, SelfLoop, DuplicateEdge, LtWeightOverflow;
  // std::invalid_argument if param is outside (0, 1].
  EdgeId add_edge(NodeId u, NodeId v, double param);

  // Deletes the live edge (u, v).  Errors: UnknownNode, UnknownEdge.
  // Only the recompute baseline uses this; the incremental engine never
  // deletes.
  void remove_edge(NodeId u, NodeId v);

  std::size_t node_count() const { return out_.size(); }
  std::size_t edge_count() const { return live_edges_; }

  // Total edge ids ever issued, dead ones included.
  std::size_t edge_ids_issued() const { return edges_.size(); }

  bool has_node(NodeId v) const { return v < out_.size(); }

  // Live edge lookup; returns the edge id or kNoEdge.
  EdgeId find_edge(NodeId u, NodeId v) const;

  const EdgeRecord& edge(EdgeId e) const { return edges_[e]; }

  // In/out incidence lists hold edge ids and may contain dead edges.
  std::span<const EdgeId> in_edges(NodeId v) const { return in_[v]; }
  std::span<const EdgeId> out_edges(NodeId v) const { return out_[v]; }

  // Number of live in-edges of v.
  std::size_t in_degree(NodeId v) const { return in_live_[v]; }

  // Sum of live LT in-weights of v (zero under IC).
  double in_weight_sum(NodeId v) const { return in_sum_[v]; }

  static constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);
  static constexpr double kLtTolerance = 1e-12;

 private:
  void require_node(NodeId v) const;

  DiffusionModel model_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::size_t> in_live_;
  std::vector<double> in_sum_;
  std::size_t live_edges_ = 0;
};

}  // namespace dimcov
