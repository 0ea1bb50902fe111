#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dimcov/graph.hpp"
#include "dimcov/random.hpp"
#include "dimcov/stream.hpp"

namespace dimcov {

// Layered stress instances whose influence spread has a closed form.  Each
// instance encodes n set pairs (A_i, B_tau) over a ground universe [0, m):
// seeding the i-th source in epoch tau is worth a large bonus for every
// element of A_i that also lies in B_tau.  The update stream swaps the
// B-side wiring between epochs, so a maintenance algorithm has to keep its
// answer fresh while the bonus structure shifts under it.
//
// Node id layout of the emitted stream, in arrival order:
//   sources        s_i          = i                        i in [0, n)
//   elements       e_j          = n + j                    j in [0, m)
//   amplifiers     a_{j,l}      = n + m + j*m*t + l        l in [0, m*t)
//   boosters (LT)  b_{j,l,r}    = n + m + m*m*t + (j*m*t + l)*n + r
//
// IC edges all carry probability 1.  Under LT, source->element edges weigh
// 1/n and everything downstream weighs 1, which keeps every in-weight sum
// at most 1 while preserving the decision gap.

struct HardInstance {
  std::uint32_t n = 0;  // sources, also the epoch count
  std::uint32_t m = 0;  // ground universe size
  std::uint32_t t = 0;  // gap parameter
  DiffusionModel model = DiffusionModel::kIC;
  std::vector<std::vector<std::uint32_t>> A;  // n subsets of [0, m)
  std::vector<std::vector<std::uint32_t>> B;  // n subsets, each of size >= t
};

// Structural checks every instance must pass before use: set counts match n,
// elements lie in [0, m), sets are sorted and duplicate free, every B_tau has
// at least t elements.  Errors: InvalidInstance.
void validate_instance(const HardInstance& inst);

// Sorts and dedupes the sets; when some B_tau is smaller than t, blows the
// universe up by a factor of t (element e becomes {e*t, .., e*t + t - 1}) so
// that every B_tau reaches size t without changing any intersection ratio.
// Errors: InvalidInstance on an empty B_tau, which no blow-up can fix.
HardInstance normalize_instance(HardInstance inst);

// Node ids and counts for an instance's emitted stream.
struct HardLayout {
  explicit HardLayout(const HardInstance& inst);

  NodeId source(std::uint32_t i) const { return i; }
  NodeId element(std::uint32_t j) const { return n + j; }
  NodeId amplifier(std::uint32_t j, std::uint32_t l) const {
    return n + m + j * amp_per_element + l;
  }
  NodeId booster(std::uint32_t j, std::uint32_t l, std::uint32_t r) const {
    return n + m + m * amp_per_element + (j * amp_per_element + l) * n + r;
  }

  std::uint32_t n, m, t;
  std::uint32_t amp_per_element;  // m * t
  std::uint64_t node_total;
};

// Full update stream: node arrivals, the static wiring, then n epochs of
// element-to-amplifier rewiring, each closed by a query.  The instance must
// already be valid.
std::vector<UpdateEvent> emit_stream(const HardInstance& inst);

// Closed-form spread of seeding source i during epoch tau.
// Errors: BadEpoch, BadSeed.
double exact_spread(const HardInstance& inst, std::uint32_t epoch,
                    std::uint32_t seed_index);

// Best single-seed spread per epoch, straight from the closed form.
std::vector<double> exact_best_per_epoch(const HardInstance& inst);

// Decision rule: accept iff some epoch's best spread strictly exceeds
// 2 * m * |B_tau|.  Errors: InvalidInstance when the vector length is not n.
bool decide(const HardInstance& inst, std::span<const double> best_per_epoch);

// Random planted instances.  A yes-instance hides one pair with
// B_tau contained in A_i, which forces a spread above the threshold whenever
// t >= 2 (required; InvalidInstance otherwise).  A no-instance trims every
// intersection until t * |A_i cut B_tau| < |B_tau|, which pins every epoch
// strictly below the threshold.  Both return normalized instances.
HardInstance make_yes_instance(std::uint32_t n, std::uint32_t m,
                               std::uint32_t t, DiffusionModel model,
                               RandomSource rng);
HardInstance make_no_instance(std::uint32_t n, std::uint32_t m,
                              std::uint32_t t, DiffusionModel model,
                              RandomSource rng);

}  // namespace dimcov
