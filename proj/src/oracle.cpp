#include "dimcov/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "dimcov/errors.hpp"
#include "dimcov/rr.hpp"

namespace dimcov {

namespace {

// Per-trial scratch reused across Monte Carlo iterations.  Stamps avoid
// clearing the arrays between trials.
struct SimScratch {
  std::vector<std::uint64_t> active_stamp;
  std::vector<std::uint64_t> choice_stamp;
  std::vector<NodeId> chosen_src;
  std::vector<NodeId> frontier;
};

constexpr NodeId kNoSrc = static_cast<NodeId>(-1);

// Draws node v's live-edge in-neighbor choice for the current trial: each
// alive incoming edge wins with its own weight, nobody with the residual.
NodeId draw_choice(const InfluenceGraph& graph, NodeId v, RandomSource& rng) {
  const double r = rng.next_unit();
  double cum = 0.0;
  for (EdgeId eid : graph.in_edges(v)) {
    const EdgeRecord& e = graph.edge(eid);
    if (!e.alive) continue;
    cum += e.param;
    if (r < cum) return e.src;
  }
  return kNoSrc;
}

std::uint64_t run_trial(const InfluenceGraph& graph,
                        std::span<const NodeId> seeds, std::uint64_t trial,
                        RandomSource& rng, SimScratch& s) {
  std::uint64_t activated = 0;
  s.frontier.clear();
  for (NodeId v : seeds) {
    if (s.active_stamp[v] == trial) continue;
    s.active_stamp[v] = trial;
    s.frontier.push_back(v);
    ++activated;
  }
  const bool ic = graph.model() == DiffusionModel::kIC;
  for (std::size_t i = 0; i < s.frontier.size(); ++i) {
    const NodeId w = s.frontier[i];
    for (EdgeId eid : graph.out_edges(w)) {
      const EdgeRecord& e = graph.edge(eid);
      if (!e.alive || s.active_stamp[e.dst] == trial) continue;
      bool fires;
      if (ic) {
        fires = rng.bernoulli(e.param);
      } else {
        if (s.choice_stamp[e.dst] != trial) {
          s.choice_stamp[e.dst] = trial;
          s.chosen_src[e.dst] = draw_choice(graph, e.dst, rng);
        }
        fires = s.chosen_src[e.dst] == w;
      }
      if (fires) {
        s.active_stamp[e.dst] = trial;
        s.frontier.push_back(e.dst);
        ++activated;
      }
    }
  }
  return activated;
}

}  // namespace

SpreadEstimate mc_spread(const InfluenceGraph& graph,
                         std::span<const NodeId> seeds, std::uint64_t trials,
                         RandomSource rng) {
  if (trials == 0) throw std::invalid_argument("mc_spread: zero trials");
  for (NodeId v : seeds) {
    if (!graph.has_node(v)) throw UnknownNode("mc_spread: unknown seed node");
  }
  SimScratch s;
  const std::size_t n = graph.node_count();
  s.active_stamp.assign(n, 0);
  s.choice_stamp.assign(n, 0);
  s.chosen_src.assign(n, kNoSrc);

  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t trial = 1; trial <= trials; ++trial) {
    const auto count =
        static_cast<double>(run_trial(graph, seeds, trial, rng, s));
    sum += count;
    sum_sq += count * count;
  }
  SpreadEstimate out;
  out.trials = trials;
  out.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var =
        std::max(0.0, (sum_sq - sum * out.mean) / static_cast<double>(trials - 1));
    out.std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return out;
}

std::vector<NodeId> greedy_im(const InfluenceGraph& graph, std::uint32_t k,
                              std::uint64_t rr_count, RandomSource rng,
                              std::uint64_t* sample_steps) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw EmptyGraph("greedy_im: graph has no nodes");
  if (rr_count == 0) throw std::invalid_argument("greedy_im: zero RR sets");

  // node -> indices of RR sets containing it
  std::vector<std::vector<std::uint32_t>> covering(n);
  std::uint64_t steps = 0;
  for (std::uint64_t i = 0; i < rr_count; ++i) {
    const auto root = static_cast<NodeId>(rng.next_below(n));
    RRSet set = sample_rr(graph, root, rng.split(i));
    steps += set.steps;
    for (NodeId v : set.members) {
      covering[v].push_back(static_cast<std::uint32_t>(i));
    }
  }
  if (sample_steps != nullptr) *sample_steps = steps;

  // Exact lazy greedy; coverage gains only decay, so a popped entry whose
  // recomputed gain still matches is globally best.
  struct Entry {
    std::uint64_t gain;
    NodeId node;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.node > b.node;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> pq(worse);
  for (NodeId v = 0; v < n; ++v) {
    pq.push({covering[v].size(), v});
  }

  std::vector<char> set_covered(rr_count, 0);
  std::vector<char> picked(n, 0);
  std::vector<NodeId> seeds;
  const std::size_t want = std::min<std::size_t>(k, n);
  while (seeds.size() < want && !pq.empty()) {
    const Entry top = pq.top();
    pq.pop();
    if (picked[top.node]) continue;
    std::uint64_t fresh = 0;
    for (std::uint32_t si : covering[top.node]) {
      if (!set_covered[si]) ++fresh;
    }
    if (fresh != top.gain) {
      pq.push({fresh, top.node});
      continue;
    }
    picked[top.node] = 1;
    seeds.push_back(top.node);
    for (std::uint32_t si : covering[top.node]) set_covered[si] = 1;
  }
  return seeds;
}

MaxCoverResult bruteforce_maxk(
    const std::vector<std::vector<std::uint32_t>>& left_neighbors,
    std::uint32_t k) {
  const std::size_t n = left_neighbors.size();
  const std::size_t pick = std::min<std::size_t>(k, n);
  MaxCoverResult best;
  if (pick == 0) return best;

  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < pick; ++i) {
    combos = combos * (n - i) / (i + 1);
    if (combos > 1'000'000) {
      throw TooLarge("bruteforce_maxk: combination count exceeds 1e6");
    }
  }

  std::uint32_t max_right = 0;
  for (const auto& adj : left_neighbors) {
    for (std::uint32_t r : adj) max_right = std::max(max_right, r + 1);
  }
  const std::size_t words = (max_right + 63) / 64;
  std::vector<std::uint64_t> masks(n * std::max<std::size_t>(words, 1), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t r : left_neighbors[i]) {
      masks[i * words + r / 64] |= std::uint64_t{1} << (r % 64);
    }
  }

  std::vector<std::uint32_t> idx(pick);
  for (std::size_t i = 0; i < pick; ++i) idx[i] = static_cast<std::uint32_t>(i);
  std::vector<std::uint64_t> acc(std::max<std::size_t>(words, 1));
  while (true) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::uint32_t i : idx) {
      for (std::size_t w = 0; w < words; ++w) acc[w] |= masks[i * words + w];
    }
    std::uint64_t value = 0;
    for (std::size_t w = 0; w < words; ++w) value += std::popcount(acc[w]);
    if (best.chosen.empty() || value > best.value) {
      best.chosen.assign(idx.begin(), idx.end());
      best.value = value;
    }
    // next combination in lexicographic order
    std::size_t j = pick;
    while (j > 0 && idx[j - 1] == n - pick + j - 1) --j;
    if (j == 0) break;
    ++idx[j - 1];
    for (std::size_t l = j; l < pick; ++l) idx[l] = idx[l - 1] + 1;
  }
  return best;
}

AvgStepsEstimate avg_steps(const InfluenceGraph& graph, std::uint64_t trials,
                           RandomSource rng) {
  if (graph.node_count() == 0) throw EmptyGraph("avg_steps: graph has no nodes");
  if (trials == 0) throw std::invalid_argument("avg_steps: zero trials");
  RRMeter meter;
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto root = static_cast<NodeId>(rng.next_below(graph.node_count()));
    RandomSource sub = rng.split(i);
    total += meter.sample_steps(graph, root, sub);
  }
  AvgStepsEstimate out;
  out.raw = static_cast<double>(total) / static_cast<double>(trials);
  const std::size_t m = graph.edge_count();
  out.fraction = m == 0 ? 0.0 : out.raw / static_cast<double>(m);
  return out;
}

}  // namespace dimcov
