#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "config.hpp"
#include "output.hpp"

namespace qdwg::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int regime = 2;
inline constexpr int numerical = 3;
}  // namespace exit_code

struct CommandResult {
  int exit_code = exit_code::ok;
  std::optional<CsvTable> table;  // absent for pure reports
  std::string summary;            // human-readable, goes to stdout
  std::string report;             // extra text file next to the CSV, if any
  std::vector<PlotSeries> plot;
  std::string plot_title, plot_x, plot_y;
};

struct CommandContext {
  ExperimentConfig config;
  unsigned jobs = 1;
};

using Command = std::function<CommandResult(const CommandContext&)>;

/// Subcommand name → implementation, in the order the help text lists them.
const std::vector<std::pair<std::string, Command>>& commands();

CommandResult cmd_validate(const CommandContext& ctx);
CommandResult cmd_cz(const CommandContext& ctx);
CommandResult cmd_null_gate(const CommandContext& ctx);
CommandResult cmd_graph(const CommandContext& ctx);
CommandResult cmd_ncz(const CommandContext& ctx);
CommandResult cmd_cluster(const CommandContext& ctx);
CommandResult cmd_decay_sweep(const CommandContext& ctx);
CommandResult cmd_scaling(const CommandContext& ctx);
CommandResult cmd_fock_check(const CommandContext& ctx);

}  // namespace qdwg::cli
