#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fowt/config.hpp"
#include "fowt/csv.hpp"
#include "fowt/model.hpp"
#include "fowt/timeseries.hpp"

namespace fowt {

struct CommandContext {
  std::filesystem::path config;
  std::filesystem::path out{"out"};
  std::optional<std::uint64_t> seed;
  unsigned jobs{1};
  std::filesystem::path series;  ///< input for the fatigue command
  std::ostream* report{nullptr};  ///< defaults to std::cout
  std::ostream* diagnostics{nullptr};  ///< defaults to std::cerr
};

OutputHeader make_header(const RunConfig& cfg);

int cmd_tune(const CommandContext& ctx);
int cmd_analyze(const CommandContext& ctx);
int cmd_simulate(const CommandContext& ctx);
int cmd_bode(const CommandContext& ctx);
int cmd_fatigue(const CommandContext& ctx);
int cmd_campaign(const CommandContext& ctx);

/// Dispatches by subcommand name; hard errors are reported on diagnostics
/// and turn into a nonzero exit code.
int run_command(const std::string& name, const CommandContext& ctx);

struct FatigueSummary {
  double del{0};
  double n_ref{0};
  double damage{0};
  double total_cycles{0};
  std::vector<Cycle> cycles;
};

/// Rainflow, DEL and Miner damage of `values` (SI units) over `duration` s.
FatigueSummary fatigue_summary(const Eigen::VectorXd& values, double duration, const FatigueSettings& settings);

struct CaseResult {
  int id{0};
  double wind_speed{0};
  std::string strategy;
  bool speed_specific_sensitivities{false};
  ControlGainsd gains;
  bool stable{false};
  double max_real_eigenvalue{0};
  std::optional<double> diverged_at;
  std::map<std::string, ChannelStats> stats;
  FatigueSummary fatigue;
  std::string error;
};

/// Runs every (wind speed, strategy) cell on `jobs` worker threads. Results
/// are ordered by case id (speed-major). Per-case files go to case_dir when
/// it is non-empty.
std::vector<CaseResult> run_campaign(const RunConfig& cfg, unsigned jobs, const std::filesystem::path& case_dir);

}  // namespace fowt
