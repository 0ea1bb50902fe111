#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dimcov/engine.hpp"
#include "dimcov/errors.hpp"
#include "dimcov/runner.hpp"
#include "dimcov/stream.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{
      "Streaming influence maximization: incremental engine and "
      "recompute baseline over text update streams"};

  std::string model_name = "ic";
  std::string mode = "engine";
  std::string stream_path;
  std::string report_path = "-";
  std::uint32_t k = 1;
  double epsilon = 0.2;
  double delta = 0.1;
  double c = 25.0;
  std::uint64_t seed = 0;
  std::uint64_t mc_trials = 10000;
  std::uint64_t rr_count = 0;
  bool timing = false;

  app.add_option("--model", model_name, "Diffusion model")
      ->check(CLI::IsMember({"ic", "lt"}));
  app.add_option("--k", k, "Seed set size")->check(CLI::PositiveNumber);
  app.add_option("--epsilon", epsilon, "Approximation slack");
  app.add_option("--delta", delta, "Failure probability");
  app.add_option("--c", c, "Sample size constant");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--mode", mode, "Execution mode")
      ->check(CLI::IsMember({"engine", "baseline"}));
  app.add_option("--stream", stream_path, "Update stream file")->required();
  app.add_option("--report", report_path, "Report file, '-' for stdout");
  app.add_option("--mc-trials", mc_trials,
                 "Monte Carlo trials per baseline query");
  app.add_option("--rr-count", rr_count,
                 "RR sets per baseline query, 0 derives it from c");
  app.add_flag("--timing", timing, "Include wall-clock fields in the report");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(stream_path);
  if (!in) {
    std::cerr << "cannot open stream file: " << stream_path << "\n";
    return 1;
  }
  std::vector<dimcov::UpdateEvent> events;
  try {
    events = dimcov::parse_stream(in);
  } catch (const dimcov::ParseError& e) {
    std::cerr << stream_path << ": " << e.what() << "\n";
    return 2;
  }

  const auto model = model_name == "lt" ? dimcov::DiffusionModel::kLT
                                        : dimcov::DiffusionModel::kIC;
  dimcov::RunReport report;
  if (mode == "engine") {
    dimcov::EngineConfig cfg;
    cfg.k = k;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.c = c;
    cfg.model = model;
    cfg.rng_seed = seed;
    report = dimcov::run_engine(cfg, events);
  } else {
    dimcov::BaselineConfig cfg;
    cfg.k = k;
    cfg.epsilon = epsilon;
    cfg.delta = delta;
    cfg.c = c;
    cfg.model = model;
    cfg.rng_seed = seed;
    cfg.rr_count = rr_count;
    cfg.mc_trials = mc_trials;
    report = dimcov::run_baseline(cfg, events);
  }

  if (report_path == "-") {
    dimcov::write_report(report, std::cout, timing);
  } else {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot open report file: " << report_path << "\n";
      return 1;
    }
    dimcov::write_report(report, out, timing);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
