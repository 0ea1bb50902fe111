#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "dimcov/graph.hpp"

namespace dimcov {

// Incremental MAX-k coverage over a growing bipartite graph.
//
// Left nodes are seed candidates, right nodes are targets, and an edge (u, r)
// means u covers r.  The solver runs one threshold-greedy thread per guess
// OPT_i = (1+eps)^i of the optimum: a thread adds u to its solution when u's
// marginal |V_u^i| (uncovered neighbours) satisfies k*|V_u^i| >= OPT_i -
// f(S_i) while |S_i| < k, then cascades further additions until no node
// qualifies.  Nodes and edges only ever arrive; nothing is removed.
//
// Guesses cover [1, n_max_hint] at construction and grow lazily whenever the
// right side outgrows the top guess (a fresh thread replays the full edge
// log once, charged as a rebuild).  All accounting is in unit operations:
// 1 per arrival handled, 1 per element moved between marginal sets, 1 per
// bucket relink, 1 per right node covered, 2 per solution addition.  Every
// thread's op counter stays within 5x the events delivered to the solver.
class CoverageSolver {
 public:
  // Errors: BadEpsilon unless 0 < epsilon < 1.  The hint may be zero (fully
  // lazy guess growth); k must be at least 1.
  CoverageSolver(std::uint32_t k, double epsilon, std::uint64_t n_max_hint = 0);

  // Errors: DuplicateNode.  Fresh nodes never change any thread solution.
  void insert_left(NodeId u);
  void insert_right(NodeId r);

  // Errors: UnknownNode when either endpoint was not inserted.  A repeated
  // (u, r) pair is accepted and ignored.  Runs the threshold check and any
  // resulting cascade on every thread; each thread is quiescent on return.
  void insert_edge_cov(NodeId u, NodeId r);

  struct Solution {
    std::vector<NodeId> seeds;  // in addition order
    std::uint64_t value = 0;
    std::size_t thread_index = 0;
  };

  // Highest-value thread solution; ties break to the smallest guess index.
  Solution best_solution() const;

  std::uint32_t k() const { return k_; }
  double epsilon() const { return eps_; }
  std::size_t left_count() const { return left_ids_.size(); }
  std::size_t right_count() const { return right_ids_.size(); }
  std::size_t thread_count() const { return threads_.size(); }

  // Node/edge events delivered so far (the t in the 5t op bound).
  std::uint64_t event_count() const { return events_; }

  std::uint64_t thread_ops(std::size_t i) const { return threads_[i].ops; }
  double thread_guess(std::size_t i) const { return threads_[i].guess; }
  std::uint64_t thread_value(std::size_t i) const {
    return threads_[i].covered_count;
  }
  std::vector<NodeId> thread_solution(std::size_t i) const;

  // f(S_i) after each addition, in order; lets a test replay the threshold
  // recursion of a saturated thread.
  std::span<const std::uint64_t> thread_gain_history(std::size_t i) const {
    return threads_[i].gain_history;
  }

  std::uint64_t thread_marginal(std::size_t i, NodeId u) const;

  // True when the thread cannot add anything: solution full, or every left
  // node has marginal zero or strictly below the threshold.
  bool thread_quiescent(std::size_t i) const;

 private:
  struct Thread {
    double guess = 1.0;
    std::vector<std::uint8_t> covered;      // per dense right id
    std::uint64_t covered_count = 0;
    std::vector<std::uint32_t> marg;        // per dense left id
    std::vector<std::uint8_t> in_solution;  // per dense left id
    std::vector<std::uint32_t> solution;    // dense left ids, addition order
    std::vector<std::uint64_t> gain_history;
    std::vector<std::vector<std::uint32_t>> buckets;  // marg value -> lefts
    std::vector<std::uint32_t> bucket_pos;            // per dense left id
    std::size_t max_bucket = 0;
    std::uint64_t ops = 0;
  };

  // Adjacency views let a replaying thread see only the prefix of edges it
  // has been fed so far; live delivery passes the solver-wide adjacency.
  using Adj = std::vector<std::vector<std::uint32_t>>;

  void ensure_guess_reach(double target);
  Thread make_thread(std::size_t index) const;
  void replay_into(Thread& th) const;
  void thread_add_left(Thread& th) const;
  void thread_add_right(Thread& th) const;
  void relink(Thread& th, std::uint32_t lu, std::uint32_t from,
              std::uint32_t to) const;
  void cover_right(Thread& th, std::uint32_t rr, const Adj& la,
                   const Adj& ra) const;
  void add_to_solution(Thread& th, std::uint32_t lu, const Adj& la,
                       const Adj& ra) const;
  void deliver_edge(Thread& th, std::uint32_t lu, std::uint32_t rr,
                    const Adj& la, const Adj& ra) const;
  void revoke(Thread& th, const Adj& la, const Adj& ra) const;
  bool meets_threshold(const Thread& th, std::uint32_t margin) const;

  std::uint32_t k_;
  double eps_;

  std::unordered_map<NodeId, std::uint32_t> left_index_;
  std::unordered_map<NodeId, std::uint32_t> right_index_;
  std::vector<NodeId> left_ids_;
  std::vector<NodeId> right_ids_;
  Adj left_adj_;   // dense left -> rights
  Adj right_adj_;  // dense right -> lefts
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_log_;
  std::vector<Thread> threads_;
  std::uint64_t events_ = 0;
};

}  // namespace dimcov
