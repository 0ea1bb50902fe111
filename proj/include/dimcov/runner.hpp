#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dimcov/engine.hpp"
#include "dimcov/stream.hpp"

namespace dimcov {

// Drives a parsed update stream through either the incremental engine or the
// recompute-from-scratch baseline and collects one record per query plus a
// run summary.  Reports serialize to JSON lines; all fields except wall-clock
// timings are deterministic for a fixed stream, configuration and seed.

struct QueryRecord {
  std::uint64_t update_index = 0;  // updates applied before this query
  std::vector<NodeId> seeds;
  double spread = 0.0;
  double wall_ms = 0.0;
};

struct RunSummary {
  std::uint64_t updates = 0;
  std::uint64_t total_steps = 0;
  double steps_per_update = 0.0;
  std::uint64_t rebuilds = 0;
  std::uint64_t phases = 0;
  std::uint64_t iterations = 0;
  double wall_ms = 0.0;
};

struct RunReport {
  std::vector<QueryRecord> queries;
  RunSummary summary;
};

// Errors: BadConfig on a `del` event (the engine never deletes), plus
// anything the engine itself throws.
RunReport run_engine(const EngineConfig& config,
                     std::span<const UpdateEvent> events);

struct BaselineConfig {
  std::uint32_t k = 1;
  double epsilon = 0.2;
  double delta = 0.1;
  double c = 25.0;
  DiffusionModel model = DiffusionModel::kIC;
  std::uint64_t rng_seed = 0;
  std::uint64_t rr_count = 0;     // 0 derives the count from c, epsilon, delta
  std::uint64_t mc_trials = 10000;  // spread evaluation per query
};

// Recomputes seeds from scratch at every query (fresh RR sample plus greedy)
// and evaluates their spread by Monte Carlo.  Handles `del` events.
RunReport run_baseline(const BaselineConfig& config,
                       std::span<const UpdateEvent> events);

// One JSON object per line: every query record, then the summary.  Timing
// fields are emitted only when `include_timing` is set so that default
// reports are byte-stable across runs.
void write_report(const RunReport& report, std::ostream& out,
                  bool include_timing);

}  // namespace dimcov
