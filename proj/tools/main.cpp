#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "blotto/version.hpp"
#include "cli.hpp"

namespace {

void add_common_options(CLI::App* cmd, blotto::cli::RunConfig& cfg,
                        bool needs_graph) {
  if (needs_graph) {
    cmd->add_option("--graph", cfg.graph, "edge-list file ('u v' per line)")
        ->required()
        ->check(CLI::ExistingFile);
  }
  cmd->add_option("--horizon", cfg.horizon, "intrinsic | tau:<k> | longterm");
  cmd->add_option("--budget", cfg.budget, "campaign budget B")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "RNG seed")->envname("BLOTTO_SEED");
  cmd->add_option("--trials", cfg.trials, "Monte Carlo trials");
  cmd->add_option("--out", cfg.out, "bulk artifact destination");
  cmd->add_option("--format", cfg.format, "bulk dump format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("!--no-auto-loops", cfg.auto_loop,
                "do not add missing self-loops on load");
  cmd->add_option("--threads", cfg.threads, "worker threads");
  cmd->add_flag("--deterministic,!--no-deterministic", cfg.deterministic,
                "order-independent reductions (always on; flag kept for "
                "compatibility)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strategic budget allocation on social graphs"};
  app.set_version_flag("--version", blotto::kVersion);
  app.require_subcommand(1);

  blotto::cli::RunConfig cfg;

  auto* value = app.add_subcommand(
      "value", "node valuations and marginal supports for a horizon");
  add_common_options(value, cfg, true);

  auto* sample =
      app.add_subcommand("sample", "draw equilibrium allocations to a file");
  add_common_options(sample, cfg, true);
  sample->add_option("--count", cfg.sample_count, "number of draws");
  cfg.format = "json";

  auto* evaluate = app.add_subcommand(
      "evaluate", "estimate the sampler's payoff against pure strategies");
  add_common_options(evaluate, cfg, true);
  evaluate->add_option(
      "--opponent", cfg.opponent,
      "corpus | uniform | vertices | random | beat-pure | <allocation file>");

  auto* simulate = app.add_subcommand(
      "simulate", "voter-model Monte Carlo against the exact matrix value");
  add_common_options(simulate, cfg, true);
  simulate->add_option("--x", cfg.x_file, "campaign X allocation file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--y", cfg.y_file, "campaign Y allocation file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* distance = app.add_subcommand(
      "distance", "intrinsic-vs-network strategy distance diagnostics");
  add_common_options(distance, cfg, true);
  distance->add_option("--density-out", cfg.density_out,
                       "path prefix for per-degree density CSVs");
  distance->add_option("--bins", cfg.bins, "histogram bins");

  auto* poc = app.add_subcommand(
      "poc", "price-of-competition demonstration table");
  add_common_options(poc, cfg, false);
  poc->add_option("--epsilon", cfg.epsilon, "cooperative spend")
      ->check(CLI::PositiveNumber);

  auto* summary = app.add_subcommand("summary", "graph summary report");
  add_common_options(summary, cfg, true);

  CLI11_PARSE(app, argc, argv);

  for (const CLI::App* sub :
       {value, sample, evaluate, simulate, distance, poc, summary}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }

  // sample defaults its dump to CSV; everything else reports JSON
  if (cfg.command == "sample" && sample->get_option("--format")->empty()) {
    cfg.format = "csv";
  }

  try {
    const blotto::cli::CommandResult result = blotto::cli::run(cfg);
    std::cout << result.report.dump(2) << "\n";
    if (!cfg.out.empty() && cfg.command != "sample") {
      std::ofstream out(cfg.out);
      out << result.report.dump(2) << "\n";
    }
    return result.ok ? 0 : 1;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", e.what()}, {"command", cfg.command}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
}
