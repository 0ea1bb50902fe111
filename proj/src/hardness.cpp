#include "dimcov/hardness.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "dimcov/errors.hpp"

namespace dimcov {

namespace {

void sort_dedupe(std::vector<std::uint32_t>& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

std::uint64_t intersection_size(const std::vector<std::uint32_t>& a,
                                const std::vector<std::uint32_t>& b) {
  std::uint64_t count = 0;
  auto ita = a.begin();
  auto itb = b.begin();
  while (ita != a.end() && itb != b.end()) {
    if (*ita < *itb) {
      ++ita;
    } else if (*itb < *ita) {
      ++itb;
    } else {
      ++count;
      ++ita;
      ++itb;
    }
  }
  return count;
}

void check_sets(const std::vector<std::vector<std::uint32_t>>& sets,
                std::uint32_t n, std::uint32_t m, const char* side) {
  if (sets.size() != n) {
    throw InvalidInstance(std::string(side) + " must hold exactly n sets");
  }
  for (const auto& set : sets) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] >= m) {
        throw InvalidInstance(std::string(side) +
                              " contains an element outside the universe");
      }
      if (i > 0 && set[i] <= set[i - 1]) {
        throw InvalidInstance(std::string(side) +
                              " sets must be sorted and duplicate free");
      }
    }
  }
}

std::vector<std::uint32_t> random_subset(std::uint32_t m, double p,
                                         RandomSource& rng) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t e = 0; e < m; ++e) {
    if (rng.bernoulli(p)) out.push_back(e);
  }
  if (out.empty()) out.push_back(static_cast<std::uint32_t>(rng.next_below(m)));
  return out;
}

}  // namespace

void validate_instance(const HardInstance& inst) {
  if (inst.n == 0 || inst.m == 0 || inst.t == 0) {
    throw InvalidInstance("n, m and t must all be positive");
  }
  check_sets(inst.A, inst.n, inst.m, "A");
  check_sets(inst.B, inst.n, inst.m, "B");
  for (const auto& b : inst.B) {
    if (b.size() < inst.t) {
      throw InvalidInstance("every B set needs at least t elements");
    }
  }
}

HardInstance normalize_instance(HardInstance inst) {
  for (auto& set : inst.A) sort_dedupe(set);
  for (auto& set : inst.B) sort_dedupe(set);
  for (const auto& b : inst.B) {
    if (b.empty()) throw InvalidInstance("empty B set cannot be normalized");
  }
  bool small = false;
  for (const auto& b : inst.B) small = small || b.size() < inst.t;
  if (small) {
    const std::uint32_t t = inst.t;
    auto blow_up = [t](std::vector<std::vector<std::uint32_t>>& sets) {
      for (auto& set : sets) {
        std::vector<std::uint32_t> wide;
        wide.reserve(set.size() * t);
        for (std::uint32_t e : set) {
          for (std::uint32_t s = 0; s < t; ++s) wide.push_back(e * t + s);
        }
        set = std::move(wide);
      }
    };
    blow_up(inst.A);
    blow_up(inst.B);
    inst.m *= t;
  }
  validate_instance(inst);
  return inst;
}

HardLayout::HardLayout(const HardInstance& inst)
    : n(inst.n),
      m(inst.m),
      t(inst.t),
      amp_per_element(inst.m * inst.t) {
  node_total = std::uint64_t{n} + m + std::uint64_t{m} * amp_per_element;
  if (inst.model == DiffusionModel::kLT) {
    node_total += std::uint64_t{m} * amp_per_element * n;
  }
  if (node_total > std::numeric_limits<NodeId>::max()) {
    throw TooLarge("hardness instance exceeds 32-bit node ids");
  }
}

std::vector<UpdateEvent> emit_stream(const HardInstance& inst) {
  validate_instance(inst);
  const HardLayout lay(inst);
  const bool lt = inst.model == DiffusionModel::kLT;
  const double src_w = lt ? 1.0 / static_cast<double>(inst.n) : 1.0;

  std::vector<UpdateEvent> ev;
  for (std::uint64_t i = 0; i < lay.node_total; ++i) {
    ev.push_back({EventKind::kNode, 0, 0, 0.0});
  }
  for (std::uint32_t i = 0; i < inst.n; ++i) {
    for (std::uint32_t j : inst.A[i]) {
      ev.push_back({EventKind::kEdge, lay.source(i), lay.element(j), src_w});
    }
  }
  for (std::uint32_t j = 0; j < inst.m; ++j) {
    for (std::uint32_t l = 0; l < lay.amp_per_element; ++l) {
      ev.push_back({EventKind::kEdge, lay.element(j), lay.amplifier(j, l), 1.0});
    }
  }
  if (lt) {
    for (std::uint32_t j = 0; j < inst.m; ++j) {
      for (std::uint32_t l = 0; l < lay.amp_per_element; ++l) {
        for (std::uint32_t r = 0; r < inst.n; ++r) {
          ev.push_back({EventKind::kEdge, lay.amplifier(j, l),
                        lay.booster(j, l, r), 1.0});
        }
      }
    }
  }

  std::vector<char> present(inst.m, 1);
  for (std::uint32_t tau = 0; tau < inst.n; ++tau) {
    for (std::uint32_t j = 0; j < inst.m; ++j) {
      if (!present[j]) continue;
      for (std::uint32_t l = 0; l < lay.amp_per_element; ++l) {
        ev.push_back({EventKind::kDel, lay.element(j), lay.amplifier(j, l), 0.0});
      }
      present[j] = 0;
    }
    for (std::uint32_t j : inst.B[tau]) {
      for (std::uint32_t l = 0; l < lay.amp_per_element; ++l) {
        ev.push_back({EventKind::kEdge, lay.element(j), lay.amplifier(j, l), 1.0});
      }
      present[j] = 1;
    }
    ev.push_back({EventKind::kQuery, 0, 0, 0.0});
  }
  return ev;
}

double exact_spread(const HardInstance& inst, std::uint32_t epoch,
                    std::uint32_t seed_index) {
  if (epoch >= inst.n) throw BadEpoch("epoch index out of range");
  if (seed_index >= inst.n) throw BadSeed("seed index out of range");
  const auto& a = inst.A[seed_index];
  const auto& b = inst.B[epoch];
  const double inter = static_cast<double>(intersection_size(a, b));
  const double amp = static_cast<double>(inst.m) * inst.t;
  if (inst.model == DiffusionModel::kIC) {
    return 1.0 + static_cast<double>(a.size()) + inter * amp;
  }
  const double n = inst.n;
  const double per_hit = amp + amp * n;  // amplifiers plus their boosters
  return 1.0 + (static_cast<double>(a.size()) + inter * per_hit) / n;
}

std::vector<double> exact_best_per_epoch(const HardInstance& inst) {
  validate_instance(inst);
  std::vector<double> best(inst.n, 0.0);
  for (std::uint32_t tau = 0; tau < inst.n; ++tau) {
    for (std::uint32_t i = 0; i < inst.n; ++i) {
      best[tau] = std::max(best[tau], exact_spread(inst, tau, i));
    }
  }
  return best;
}

bool decide(const HardInstance& inst, std::span<const double> best_per_epoch) {
  if (best_per_epoch.size() != inst.n) {
    throw InvalidInstance("need one best-spread value per epoch");
  }
  for (std::uint32_t tau = 0; tau < inst.n; ++tau) {
    const double bar =
        2.0 * static_cast<double>(inst.m) * static_cast<double>(inst.B[tau].size());
    if (best_per_epoch[tau] > bar) return true;
  }
  return false;
}

HardInstance make_yes_instance(std::uint32_t n, std::uint32_t m,
                               std::uint32_t t, DiffusionModel model,
                               RandomSource rng) {
  if (t < 2) {
    throw InvalidInstance("yes-instances need t >= 2 to clear the threshold");
  }
  if (n == 0 || m == 0) throw InvalidInstance("n and m must be positive");
  HardInstance inst;
  inst.n = n;
  inst.m = m;
  inst.t = t;
  inst.model = model;
  for (std::uint32_t i = 0; i < n; ++i) {
    inst.A.push_back(random_subset(m, 0.5, rng));
  }
  for (std::uint32_t tau = 0; tau < n; ++tau) {
    inst.B.push_back(random_subset(m, 0.3, rng));
  }
  const auto i_star = static_cast<std::uint32_t>(rng.next_below(n));
  const auto tau_star = static_cast<std::uint32_t>(rng.next_below(n));
  std::vector<std::uint32_t> planted;
  for (std::uint32_t e : inst.A[i_star]) {
    if (rng.bernoulli(0.6)) planted.push_back(e);
  }
  if (planted.empty()) planted.push_back(inst.A[i_star].front());
  inst.B[tau_star] = std::move(planted);
  return normalize_instance(std::move(inst));
}

HardInstance make_no_instance(std::uint32_t n, std::uint32_t m,
                              std::uint32_t t, DiffusionModel model,
                              RandomSource rng) {
  if (n == 0 || m == 0 || t == 0) {
    throw InvalidInstance("n, m and t must all be positive");
  }
  HardInstance inst;
  inst.n = n;
  inst.m = m;
  inst.t = t;
  inst.model = model;
  for (std::uint32_t i = 0; i < n; ++i) {
    inst.A.push_back(random_subset(m, 0.5, rng));
  }
  for (std::uint32_t tau = 0; tau < n; ++tau) {
    inst.B.push_back(random_subset(m, 0.5, rng));
  }
  // Trim A-side sets until every pair sits strictly under the no-side margin
  // t * |A cut B| < |B|.  Removals only shrink other intersections, so one
  // pass settles everything.
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t tau = 0; tau < n; ++tau) {
      auto& a = inst.A[i];
      const auto& b = inst.B[tau];
      while (std::uint64_t{t} * intersection_size(a, b) >= b.size()) {
        bool removed = false;
        for (std::size_t p = a.size(); p-- > 0;) {
          if (std::binary_search(b.begin(), b.end(), a[p])) {
            a.erase(a.begin() + static_cast<std::ptrdiff_t>(p));
            removed = true;
            break;
          }
        }
        if (!removed) break;  // intersection already empty, |B| must be tiny
      }
    }
  }
  return normalize_instance(std::move(inst));
}

}  // namespace dimcov
