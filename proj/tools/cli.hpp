#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace blotto::cli {

struct RunConfig {
  std::string command;
  std::filesystem::path graph;
  std::string horizon = "longterm";  // intrinsic | tau:<k> | longterm
  double budget = 1.0;
  std::uint64_t seed = 42;
  std::uint64_t trials = 100'000;
  std::filesystem::path out;   // bulk artifact destination (sample dump)
  std::string format = "json";  // bulk dump format: json | csv
  bool auto_loop = true;
  unsigned threads = 1;
  bool deterministic = true;

  std::uint64_t sample_count = 1000;          // sample
  std::string opponent = "corpus";            // evaluate
  std::filesystem::path x_file, y_file;       // simulate
  double epsilon = 0.01;                      // poc
  std::filesystem::path density_out;          // distance: CSV path prefix
  std::size_t bins = 200;                     // distance
};

struct CommandResult {
  nlohmann::json report;
  bool ok = true;
};

CommandResult cmd_value(const RunConfig& cfg);
CommandResult cmd_sample(const RunConfig& cfg);
CommandResult cmd_evaluate(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_distance(const RunConfig& cfg);
CommandResult cmd_poc(const RunConfig& cfg);
CommandResult cmd_summary(const RunConfig& cfg);

// Dispatch on cfg.command.
CommandResult run(const RunConfig& cfg);

}  // namespace blotto::cli
