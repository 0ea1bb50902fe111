#include "dimcov/coverage.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "dimcov/errors.hpp"

namespace dimcov {

CoverageSolver::CoverageSolver(std::uint32_t k, double epsilon,
                               std::uint64_t n_max_hint)
    : k_(k), eps_(epsilon) {
  if (k_ < 1) {
    throw BadConfig("coverage solver needs k >= 1");
  }
  if (!(eps_ > 0.0) || eps_ >= 1.0) {
    throw BadEpsilon("coverage epsilon must lie in (0, 1), got " +
                     std::to_string(epsilon));
  }
  ensure_guess_reach(static_cast<double>(n_max_hint > 0 ? n_max_hint : 1));
}

void CoverageSolver::ensure_guess_reach(double target) {
  while (threads_.empty() || threads_.back().guess < target) {
    Thread th = make_thread(threads_.size());
    replay_into(th);
    threads_.push_back(std::move(th));
  }
}

CoverageSolver::Thread CoverageSolver::make_thread(std::size_t index) const {
  Thread th;
  th.guess = std::pow(1.0 + eps_, static_cast<double>(index));
  th.covered.assign(right_ids_.size(), 0);
  std::uint32_t lefts = static_cast<std::uint32_t>(left_ids_.size());
  th.marg.assign(lefts, 0);
  th.in_solution.assign(lefts, 0);
  th.buckets.assign(1, {});
  th.buckets[0].resize(lefts);
  th.bucket_pos.resize(lefts);
  for (std::uint32_t i = 0; i < lefts; ++i) {
    th.buckets[0][i] = i;
    th.bucket_pos[i] = i;
  }
  return th;
}

void CoverageSolver::replay_into(Thread& th) const {
  // A late-born thread digests the whole history once: node arrivals up
  // front (they never trigger cascades), then the edge log in order against
  // a growing adjacency prefix, so cascade decisions match live delivery.
  th.ops += left_ids_.size() + right_ids_.size();
  if (edge_log_.empty()) return;
  Adj la(left_ids_.size());
  Adj ra(right_ids_.size());
  for (const auto& [lu, rr] : edge_log_) {
    la[lu].push_back(rr);
    ra[rr].push_back(lu);
    deliver_edge(th, lu, rr, la, ra);
  }
}

void CoverageSolver::thread_add_left(Thread& th) const {
  std::uint32_t lu = static_cast<std::uint32_t>(th.marg.size());
  th.marg.push_back(0);
  th.in_solution.push_back(0);
  th.bucket_pos.push_back(static_cast<std::uint32_t>(th.buckets[0].size()));
  th.buckets[0].push_back(lu);
  th.ops += 1;
}

void CoverageSolver::thread_add_right(Thread& th) const {
  th.covered.push_back(0);
  th.ops += 1;
}

void CoverageSolver::insert_left(NodeId u) {
  if (left_index_.contains(u)) {
    throw DuplicateNode("left node " + std::to_string(u) + " already present");
  }
  left_index_.emplace(u, static_cast<std::uint32_t>(left_ids_.size()));
  left_ids_.push_back(u);
  left_adj_.emplace_back();
  events_ += 1;
  for (Thread& th : threads_) thread_add_left(th);
}

void CoverageSolver::insert_right(NodeId r) {
  if (right_index_.contains(r)) {
    throw DuplicateNode("right node " + std::to_string(r) + " already present");
  }
  right_index_.emplace(r, static_cast<std::uint32_t>(right_ids_.size()));
  right_ids_.push_back(r);
  right_adj_.emplace_back();
  events_ += 1;
  for (Thread& th : threads_) thread_add_right(th);
  ensure_guess_reach(static_cast<double>(right_ids_.size()));
}

void CoverageSolver::insert_edge_cov(NodeId u, NodeId r) {
  auto li = left_index_.find(u);
  if (li == left_index_.end()) {
    throw UnknownNode("left node " + std::to_string(u) + " not present");
  }
  auto ri = right_index_.find(r);
  if (ri == right_index_.end()) {
    throw UnknownNode("right node " + std::to_string(r) + " not present");
  }
  std::uint32_t lu = li->second;
  std::uint32_t rr = ri->second;
  events_ += 1;
  const auto& rights = left_adj_[lu];
  if (std::find(rights.begin(), rights.end(), rr) != rights.end()) {
    return;  // repeated report of the same coverage pair
  }
  left_adj_[lu].push_back(rr);
  right_adj_[rr].push_back(lu);
  edge_log_.emplace_back(lu, rr);
  for (Thread& th : threads_) deliver_edge(th, lu, rr, left_adj_, right_adj_);
}

bool CoverageSolver::meets_threshold(const Thread& th,
                                     std::uint32_t margin) const {
  return static_cast<double>(k_) * static_cast<double>(margin) >=
         th.guess - static_cast<double>(th.covered_count);
}

void CoverageSolver::relink(Thread& th, std::uint32_t lu, std::uint32_t from,
                            std::uint32_t to) const {
  if (from == to) return;
  auto& old_bucket = th.buckets[from];
  std::uint32_t pos = th.bucket_pos[lu];
  std::uint32_t moved = old_bucket.back();
  old_bucket[pos] = moved;
  th.bucket_pos[moved] = pos;
  old_bucket.pop_back();
  if (th.buckets.size() <= to) th.buckets.resize(to + 1);
  th.bucket_pos[lu] = static_cast<std::uint32_t>(th.buckets[to].size());
  th.buckets[to].push_back(lu);
  if (to > th.max_bucket) th.max_bucket = to;
  th.ops += 1;
}

void CoverageSolver::cover_right(Thread& th, std::uint32_t rr, const Adj& la,
                                 const Adj& ra) const {
  assert(!th.covered[rr]);
  th.covered[rr] = 1;
  th.covered_count += 1;
  th.ops += 1;
  for (std::uint32_t lu : ra[rr]) {
    std::uint32_t old = th.marg[lu];
    assert(old > 0);
    th.marg[lu] = old - 1;
    th.ops += 1;  // rr leaves V_lu
    relink(th, lu, old, old - 1);
  }
  (void)la;
}

void CoverageSolver::add_to_solution(Thread& th, std::uint32_t lu,
                                     const Adj& la, const Adj& ra) const {
  th.ops += 2;
  th.in_solution[lu] = 1;
  th.solution.push_back(lu);
  for (std::uint32_t rr : la[lu]) {
    if (!th.covered[rr]) cover_right(th, rr, la, ra);
  }
  assert(th.marg[lu] == 0);  // all of lu's neighbours are covered now
  th.gain_history.push_back(th.covered_count);
}

void CoverageSolver::revoke(Thread& th, const Adj& la, const Adj& ra) const {
  while (th.solution.size() < k_) {
    while (th.max_bucket > 0 && th.buckets[th.max_bucket].empty()) {
      --th.max_bucket;
    }
    if (th.max_bucket == 0) return;  // only zero marginals left
    std::uint32_t margin = static_cast<std::uint32_t>(th.max_bucket);
    if (!meets_threshold(th, margin)) return;
    // Largest marginal wins; ties go to the smallest original node id.
    std::uint32_t best = th.buckets[th.max_bucket][0];
    for (std::uint32_t lu : th.buckets[th.max_bucket]) {
      if (left_ids_[lu] < left_ids_[best]) best = lu;
    }
    add_to_solution(th, best, la, ra);
  }
}

void CoverageSolver::deliver_edge(Thread& th, std::uint32_t lu,
                                  std::uint32_t rr, const Adj& la,
                                  const Adj& ra) const {
  th.ops += 1;
  if (th.covered[rr]) return;
  std::uint32_t old = th.marg[lu];
  th.marg[lu] = old + 1;
  th.ops += 1;  // rr joins V_lu
  relink(th, lu, old, old + 1);
  if (th.in_solution[lu]) {
    // Coverage of the solution set grew, which lowers the threshold for
    // everyone, so the cascade must be re-checked.
    cover_right(th, rr, la, ra);
    revoke(th, la, ra);
    return;
  }
  if (th.solution.size() < k_ && meets_threshold(th, old + 1)) {
    add_to_solution(th, lu, la, ra);
    revoke(th, la, ra);
  }
}

CoverageSolver::Solution CoverageSolver::best_solution() const {
  Solution best;
  for (std::size_t i = 0; i < threads_.size(); ++i) {
    if (threads_[i].covered_count > best.value) {
      best.value = threads_[i].covered_count;
      best.thread_index = i;
    }
  }
  const Thread& th = threads_[best.thread_index];
  best.seeds.reserve(th.solution.size());
  for (std::uint32_t lu : th.solution) best.seeds.push_back(left_ids_[lu]);
  return best;
}

std::vector<NodeId> CoverageSolver::thread_solution(std::size_t i) const {
  std::vector<NodeId> out;
  out.reserve(threads_[i].solution.size());
  for (std::uint32_t lu : threads_[i].solution) out.push_back(left_ids_[lu]);
  return out;
}

std::uint64_t CoverageSolver::thread_marginal(std::size_t i, NodeId u) const {
  auto it = left_index_.find(u);
  if (it == left_index_.end()) {
    throw UnknownNode("left node " + std::to_string(u) + " not present");
  }
  return threads_[i].marg[it->second];
}

bool CoverageSolver::thread_quiescent(std::size_t i) const {
  const Thread& th = threads_[i];
  if (th.solution.size() >= k_) return true;
  for (std::uint32_t lu = 0; lu < th.marg.size(); ++lu) {
    if (th.marg[lu] >= 1 && meets_threshold(th, th.marg[lu])) return false;
  }
  return true;
}

}  // namespace dimcov
