// qdwg: run one experiment from a JSON config, write CSV (+ optional SVG)
// under --out and a summary to stdout.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "qdwg/error.hpp"

#ifndef QDWG_VERSION
#define QDWG_VERSION "unknown"
#endif

using namespace qdwg::cli;

namespace {

std::string hex64(std::uint64_t h) { return fmt::format("{:016x}", h); }

int run(const std::string& name, const Command& command, const std::string& config_path,
        const std::optional<std::string>& out_dir, const std::optional<std::string>& tier,
        const std::optional<std::uint64_t>& seed, bool plot, unsigned jobs) {
  CommandContext ctx;
  ctx.config = load_config(config_path);
  if (tier) ctx.config.tier = qdwg::parse_tier(*tier);
  if (seed) ctx.config.rng_seed = *seed;
  if (out_dir) ctx.config.output.dir = *out_dir;
  if (plot) ctx.config.output.plot = true;
  ctx.jobs = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());

  const CommandResult r = command(ctx);
  std::cout << r.summary << std::flush;

  const std::filesystem::path dir = ctx.config.output.dir;
  std::string stem = name;
  std::replace(stem.begin(), stem.end(), '-', '_');
  if (r.table) {
    RunMetadata meta;
    meta.version = QDWG_VERSION;
    meta.command = name;
    // hash of the effective config, overrides included
    meta.config_hash = hex64(fnv1a64(to_json(ctx.config).dump()));
    meta.tier = std::string(qdwg::to_string(ctx.config.tier));
    meta.fock_cutoff = ctx.config.fock_cutoff;
    meta.seed = ctx.config.rng_seed;
    write_text(dir / (stem + ".csv"), r.table->render(meta));
    write_text(dir / (stem + ".config.json"), to_json(ctx.config).dump(2) + "\n");
  }
  if (!r.report.empty()) write_text(dir / (stem + ".txt"), r.report);
  if (ctx.config.output.plot && !r.plot.empty())
    write_text(dir / (stem + ".svg"), svg_plot(r.plot, r.plot_title, r.plot_x, r.plot_y));
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-dot / waveguide gate simulator"};
  app.set_version_flag("--version", QDWG_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir, tier;
  std::optional<std::uint64_t> seed;
  bool plot = false;
  unsigned jobs = 0;
  std::string chosen;
  const Command* chosen_cmd = nullptr;

  for (const auto& [name, command] : commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--tier", tier, "model tier")->check(CLI::IsMember({"full", "eff1", "eff"}));
    sub->add_option("--seed", seed, "RNG seed (overrides rng_seed)");
    sub->add_flag("--plot", plot, "also write an SVG plot");
    sub->add_option("--jobs", jobs, "worker threads, 0 = all cores");
    sub->callback([&, n = name, c = &command] {
      chosen = n;
      chosen_cmd = c;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  spdlog::set_level(spdlog::level::warn);
  try {
    return run(chosen, *chosen_cmd, config_path, out_dir, tier, seed, plot, jobs);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const qdwg::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_code::numerical;
  } catch (const qdwg::LeakageError& e) {
    std::cerr << "leakage: " << e.what() << "\n";
    return exit_code::numerical;
  } catch (const std::length_error& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return exit_code::numerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::numerical;
  }
}
