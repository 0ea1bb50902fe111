#include "dimcov/runner.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "json.hpp"

#include "dimcov/errors.hpp"
#include "dimcov/oracle.hpp"

namespace dimcov {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  const auto d = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(d).count();
}

}  // namespace

RunReport run_engine(const EngineConfig& config,
                     std::span<const UpdateEvent> events) {
  const auto run_start = std::chrono::steady_clock::now();
  Engine engine(config);
  RunReport report;
  for (const UpdateEvent& ev : events) {
    switch (ev.kind) {
      case EventKind::kNode:
        engine.insert_node();
        break;
      case EventKind::kEdge:
        engine.insert_edge(ev.u, ev.v, ev.param);
        break;
      case EventKind::kDel:
        throw BadConfig("edge deletion requires baseline mode");
      case EventKind::kQuery: {
        const auto q_start = std::chrono::steady_clock::now();
        Engine::QueryResult qr = engine.query();
        QueryRecord rec;
        rec.update_index = engine.update_count();
        rec.seeds = std::move(qr.seeds);
        rec.spread = qr.spread_estimate;
        rec.wall_ms = ms_since(q_start);
        report.queries.push_back(std::move(rec));
        break;
      }
    }
  }
  RunSummary& s = report.summary;
  s.updates = engine.update_count();
  s.total_steps = engine.total_steps();
  s.steps_per_update =
      s.updates == 0 ? 0.0
                     : static_cast<double>(s.total_steps) /
                           static_cast<double>(s.updates);
  s.rebuilds = engine.rebuild_count();
  s.phases = engine.phase_count();
  s.iterations = engine.iteration_count();
  s.wall_ms = ms_since(run_start);
  return report;
}

RunReport run_baseline(const BaselineConfig& config,
                       std::span<const UpdateEvent> events) {
  const auto run_start = std::chrono::steady_clock::now();
  InfluenceGraph graph(config.model);
  RandomSource master(config.rng_seed);
  RunReport report;
  std::uint64_t updates = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t queries = 0;
  for (const UpdateEvent& ev : events) {
    switch (ev.kind) {
      case EventKind::kNode:
        graph.add_node();
        ++updates;
        break;
      case EventKind::kEdge:
        graph.add_edge(ev.u, ev.v, ev.param);
        ++updates;
        break;
      case EventKind::kDel:
        graph.remove_edge(ev.u, ev.v);
        ++updates;
        break;
      case EventKind::kQuery: {
        const auto q_start = std::chrono::steady_clock::now();
        QueryRecord rec;
        rec.update_index = updates;
        if (graph.node_count() > 0) {
          std::uint64_t rr = config.rr_count;
          if (rr == 0) {
            const double n = std::max<double>(2.0, graph.node_count());
            rr = static_cast<std::uint64_t>(std::ceil(
                config.c / (config.epsilon * config.epsilon) * config.k *
                std::log(n / config.delta)));
          }
          std::uint64_t steps = 0;
          rec.seeds = greedy_im(graph, config.k, rr,
                                master.split(1, queries), &steps);
          total_steps += steps;
          rec.spread = mc_spread(graph, rec.seeds, config.mc_trials,
                                 master.split(2, queries))
                           .mean;
        }
        rec.wall_ms = ms_since(q_start);
        report.queries.push_back(std::move(rec));
        ++queries;
        break;
      }
    }
  }
  RunSummary& s = report.summary;
  s.updates = updates;
  s.total_steps = total_steps;
  s.steps_per_update =
      updates == 0 ? 0.0
                   : static_cast<double>(total_steps) /
                         static_cast<double>(updates);
  s.rebuilds = queries;  // every query recomputes from scratch
  s.phases = 0;
  s.iterations = queries;
  s.wall_ms = ms_since(run_start);
  return report;
}

void write_report(const RunReport& report, std::ostream& out,
                  bool include_timing) {
  using nlohmann::json;
  for (const QueryRecord& rec : report.queries) {
    json line;
    line["type"] = "query";
    line["update"] = rec.update_index;
    line["seeds"] = rec.seeds;
    line["spread"] = rec.spread;
    if (include_timing) line["wall_ms"] = rec.wall_ms;
    out << line.dump() << '\n';
  }
  json line;
  line["type"] = "summary";
  line["updates"] = report.summary.updates;
  line["total_steps"] = report.summary.total_steps;
  line["steps_per_update"] = report.summary.steps_per_update;
  line["rebuilds"] = report.summary.rebuilds;
  line["phases"] = report.summary.phases;
  line["iterations"] = report.summary.iterations;
  if (include_timing) line["wall_ms"] = report.summary.wall_ms;
  out << line.dump() << '\n';
}

}  // namespace dimcov
