#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "fowt/commands.hpp"
#include "fowt/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Floating wind turbine platform-pitch compensation toolkit"};
  app.set_version_flag("--version", std::string(fowt::kToolName) + " " + fowt::kVersion);
  app.require_subcommand(1);

  fowt::CommandContext ctx;
  std::string config, out = "out", series;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config, "run configuration (INI)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "override [run] seed");
  };

  CLI::App* tune = app.add_subcommand("tune", "synthesize kP, kI, kBeta, kTauG and export them");
  CLI::App* analyze = app.add_subcommand("analyze", "NMPZ conditions, transfer zeros and closed-loop modes");
  CLI::App* simulate = app.add_subcommand("simulate", "time-domain simulation of the closed loop");
  CLI::App* bode = app.add_subcommand("bode", "frequency responses of the reduced and full models");
  CLI::App* fatigue = app.add_subcommand("fatigue", "rainflow, DEL and Miner damage of a saved series");
  CLI::App* campaign = app.add_subcommand("campaign", "wind-speed x strategy grid of simulations");
  for (CLI::App* sub : {tune, analyze, simulate, bode, fatigue, campaign}) add_common(sub);
  fatigue->add_option("series,--series", series, "time series CSV written by simulate")
      ->required()
      ->check(CLI::ExistingFile);
  campaign->add_option("-j,--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  ctx.config = config;
  ctx.out = out;
  ctx.series = series;
  ctx.jobs = jobs;
  if (chosen->count("--seed")) ctx.seed = seed;
  return fowt::run_command(chosen->get_name(), ctx);
}
