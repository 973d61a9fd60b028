#include "fowt/commands.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fowt/errors.hpp"
#include "fowt/fatigue.hpp"
#include "fowt/freq.hpp"
#include "fowt/gains.hpp"
#include "fowt/sim.hpp"
#include "fowt/stability.hpp"
#include "fowt/units.hpp"
#include "fowt/version.hpp"

namespace fowt {

namespace {

std::ostream& report_stream(const CommandContext& ctx) { return ctx.report ? *ctx.report : std::cout; }
std::ostream& diag_stream(const CommandContext& ctx) { return ctx.diagnostics ? *ctx.diagnostics : std::cerr; }

RunConfig load(const CommandContext& ctx) {
  if (ctx.config.empty()) throw ConfigError("--config is required");
  RunConfig cfg = load_run_config(ctx.config, ctx.seed);
  for (const auto& w : cfg.warnings) diag_stream(ctx) << "warning: " << w << "\n";
  return cfg;
}

std::string fmt(double v) { return format_number(v); }

std::string complex_text(const std::complex<double>& z) {
  std::ostringstream s;
  s << std::setprecision(6) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "j";
  return s.str();
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string verdict(const ModalReport<double>& rep) {
  return rep.stable ? "stable" : rep.marginal ? "marginal" : "unstable";
}

struct ResolvedGains {
  ControlGainsd gains;
  StateSpaced closed;
};

ResolvedGains resolve(const RunConfig& cfg) {
  const ControlGainsd g = synthesize_gains(cfg.structure, cfg.sens, cfg, cfg.strategy);
  return {g, build_closed_loop(cfg.structure, cfg.sens, g)};
}

std::vector<std::pair<std::string, std::string>> stats_columns() {
  return {{"channel", "-"}, {"unit", "-"}, {"min", "unit"}, {"mean", "unit"}, {"max", "unit"}, {"std", "unit"}};
}

void write_stats(const std::filesystem::path& path, const TimeSeries& ts, double t_start, OutputHeader header) {
  header.extra.emplace_back("stats_start_s", fmt(t_start));
  CsvWriter w(path, header);
  w.columns(stats_columns());
  for (const auto& c : ts.channels()) {
    const ChannelStats st = channel_stats(ts, c.name, t_start);
    const ColumnSpec d = display_column(c);
    w.row(std::vector<std::string>{c.name, d.unit, fmt(st.min * d.scale), fmt(st.mean * d.scale),
                                   fmt(st.max * d.scale), fmt(st.stddev * d.scale)});
  }
  w.close();
}

double stats_window_start(const TimeSeries& ts, double requested, std::vector<std::string>& warnings) {
  const double end = ts.size() ? ts.time(ts.size() - 1) : 0.0;
  if (requested >= end) {
    warnings.push_back("statistics window start is beyond the end of the run; using the whole record");
    return ts.t0();
  }
  return requested;
}

}  // namespace

OutputHeader make_header(const RunConfig& cfg) {
  OutputHeader h;
  h.config_hash = hex64(config_hash(cfg));
  h.parameter_set = cfg.parameter_set;
  h.seed = cfg.seed;
  return h;
}

FatigueSummary fatigue_summary(const Eigen::VectorXd& values, double duration, const FatigueSettings& settings) {
  FatigueSummary f;
  f.n_ref = settings.reference_cycles(duration);
  if (values.size() >= 2) f.cycles = rainflow(values, RainflowOptions{settings.hysteresis});
  f.total_cycles = total_count(f.cycles);
  f.del = damage_equivalent_load(f.cycles, settings.m, f.n_ref);
  f.damage = miner_damage(f.cycles, settings.curve, settings.section_modulus, settings.lifetime_scale);
  return f;
}

// ---------------------------------------------------------------------------

int cmd_tune(const CommandContext& ctx) {
  const RunConfig cfg = load(ctx);
  const auto [g, closed] = resolve(cfg);
  const auto& p = cfg.structure;
  const auto rot = rotor_summary(p, cfg.sens, g.kP, g.kI);
  const auto plt = platform_summary(p, cfg.sens, g.kBeta);
  const double natural = natural_platform_zeta(p, cfg.sens);
  const ModalReport<double> modes = modal_report(closed.A());
  const auto platform_mode = nearest_oscillatory_mode(modes, plt.nu);

  std::ostream& out = report_stream(ctx);
  out << "parameter set: " << cfg.parameter_set << "\n";
  out << "strategy:      " << cfg.strategy.label() << "\n";
  out << std::setprecision(8);
  out << "kP    = " << g.kP << " s\n";
  out << "kI    = " << g.kI << "\n";
  out << "kBeta = " << g.kBeta << " s\n";
  out << "kTauG = " << g.kTauG << " N m s/rad\n";
  if (rot.degenerate)
    out << "rotor:    degenerate (kI gives no real band-pass)\n";
  else
    out << "rotor:    nu_rot = " << rot.nu << " rad/s, zeta_rot = " << rot.zeta << "\n";
  out << "platform: nu_plt = " << plt.nu << " rad/s, zeta_plt = " << plt.zeta << " (natural " << natural << ")\n";
  if (platform_mode)
    out << "coupled platform mode: nu = " << platform_mode->nu << " rad/s, zeta = " << platform_mode->zeta << "\n";

  std::filesystem::create_directories(ctx.out);
  {
    std::ofstream ini(ctx.out / "gains.ini", std::ios::binary | std::ios::trunc);
    ini << "# " << kToolName << " " << kVersion << " config_hash = " << hex64(config_hash(cfg))
        << " parameter_set = " << cfg.parameter_set << "\n";
    ini << export_gains(g);
    if (!ini) throw ConfigError("cannot write gains.ini");
  }
  CsvWriter w(ctx.out / "gains.csv", make_header(cfg));
  w.columns({{"quantity", "-"}, {"value", "SI"}, {"unit", "-"}});
  w.row(std::vector<std::string>{"kP", fmt(g.kP), "s"});
  w.row(std::vector<std::string>{"kI", fmt(g.kI), "-"});
  w.row(std::vector<std::string>{"kBeta", fmt(g.kBeta), "s"});
  w.row(std::vector<std::string>{"kTauG", fmt(g.kTauG), "N m s/rad"});
  w.row(std::vector<std::string>{"nu_rot", fmt(rot.nu), "rad/s"});
  w.row(std::vector<std::string>{"zeta_rot", fmt(rot.zeta), "-"});
  w.row(std::vector<std::string>{"nu_plt", fmt(plt.nu), "rad/s"});
  w.row(std::vector<std::string>{"zeta_plt", fmt(plt.zeta), "-"});
  w.row(std::vector<std::string>{"zeta_plt_natural", fmt(natural), "-"});
  if (platform_mode) {
    w.row(std::vector<std::string>{"coupled_platform_nu", fmt(platform_mode->nu), "rad/s"});
    w.row(std::vector<std::string>{"coupled_platform_zeta", fmt(platform_mode->zeta), "-"});
  }
  w.close();
  return 0;
}

int cmd_analyze(const CommandContext& ctx) {
  const RunConfig cfg = load(ctx);
  const auto [g, closed] = resolve(cfg);
  const auto& p = cfg.structure;
  const auto phi_c = nmpz_phi_condition(cfg.sens);
  const auto omega_c = nmpz_omega_condition(p, cfg.sens, g.kTauG);
  const auto n31 = roots_companion(numerator_phi(p, cfg.sens));
  const auto n21 = roots_companion(numerator_omega(p, cfg.sens, g.kTauG));
  const ModalReport<double> rep = modal_report(closed.A());

  std::ostream& out = report_stream(ctx);
  out << std::setprecision(6);
  out << "parameter set: " << cfg.parameter_set << "\n";
  out << "gains: kP = " << g.kP << ", kI = " << g.kI << ", kBeta = " << g.kBeta << ", kTauG = " << g.kTauG << "\n";
  out << "NMPZ beta->phi:   " << bool_text(phi_c.holds) << (phi_c.near_boundary ? " (near boundary)" : "")
      << "  [" << phi_c.lhs << " < " << phi_c.rhs << "]\n";
  out << "NMPZ beta->omega: " << bool_text(omega_c.holds) << (omega_c.near_boundary ? " (near boundary)" : "")
      << "  [" << omega_c.lhs << " < " << omega_c.rhs << "]\n";
  out << "N31 roots:";
  for (const auto& z : n31) out << "  " << complex_text(z);
  out << "\nN21 roots:";
  for (const auto& z : n21) out << "  " << complex_text(z);
  out << "\nclosed-loop modes:\n";
  for (const auto& m : rep.modes)
    out << "  lambda = " << complex_text(m.eigenvalue) << "  nu = " << m.nu << " rad/s  zeta = " << m.zeta
        << (m.oscillatory ? "" : "  (real)") << "\n";
  out << "verdict: " << verdict(rep) << "\n";

  const OutputHeader h = make_header(cfg);
  CsvWriter w(ctx.out / "analysis.csv", h);
  w.columns({{"quantity", "-"}, {"value", "-"}});
  w.row(std::vector<std::string>{"nmpz_phi", bool_text(phi_c.holds)});
  w.row(std::vector<std::string>{"nmpz_phi_near_boundary", bool_text(phi_c.near_boundary)});
  w.row(std::vector<std::string>{"nmpz_omega", bool_text(omega_c.holds)});
  w.row(std::vector<std::string>{"nmpz_omega_near_boundary", bool_text(omega_c.near_boundary)});
  w.row(std::vector<std::string>{"kP", fmt(g.kP)});
  w.row(std::vector<std::string>{"kI", fmt(g.kI)});
  w.row(std::vector<std::string>{"kBeta", fmt(g.kBeta)});
  w.row(std::vector<std::string>{"kTauG", fmt(g.kTauG)});
  w.row(std::vector<std::string>{"max_real_eigenvalue", fmt(rep.max_real_part)});
  w.row(std::vector<std::string>{"verdict", verdict(rep)});
  w.close();

  CsvWriter r(ctx.out / "roots.csv", h);
  r.columns({{"set", "-"}, {"real", "1/s"}, {"imag", "1/s"}, {"nu", "rad/s"}, {"zeta", "-"}});
  auto put = [&](const std::string& set, const std::complex<double>& z) {
    const double nu = std::abs(z);
    r.row(std::vector<std::string>{set, fmt(z.real()), fmt(z.imag()), fmt(nu),
                                   fmt(nu > 0 ? -z.real() / nu : std::nan(""))});
  };
  for (const auto& z : n31) put("N31", z);
  for (const auto& z : n21) put("N21", z);
  for (const auto& z : rep.eigenvalues) put("closed_loop", z);
  r.close();
  return 0;
}

int cmd_simulate(const CommandContext& ctx) {
  const RunConfig cfg = load(ctx);
  const auto [g, closed] = resolve(cfg);
  TimeSeries ts = simulate(closed, cfg.disturbances, cfg.sim);
  std::vector<std::string> warnings = ts.warnings;
  const double t_start = stats_window_start(ts, cfg.stats_start, warnings);
  for (const auto& w : warnings) diag_stream(ctx) << "warning: " << w << "\n";

  OutputHeader h = make_header(cfg);
  h.extra.emplace_back("gains", "kP=" + fmt(g.kP) + " kI=" + fmt(g.kI) + " kBeta=" + fmt(g.kBeta) + " kTauG=" + fmt(g.kTauG));
  if (ts.diverged_at) h.extra.emplace_back("diverged_at_s", fmt(*ts.diverged_at));
  write_timeseries(ctx.out / "simulation.csv", ts, h);
  write_stats(ctx.out / "summary.csv", ts, t_start, h);
  report_stream(ctx) << "wrote " << (ctx.out / "simulation.csv").string() << " (" << ts.size() << " samples"
                     << (ts.diverged_at ? ", diverged" : "") << ")\n";
  return 0;
}

int cmd_bode(const CommandContext& ctx) {
  const RunConfig cfg = load(ctx);
  const auto [g, closed] = resolve(cfg);
  const auto& p = cfg.structure;
  VectorX<double> grid;
  const auto lo = cfg.doc.get("bode", "nu_min");
  const auto hi = cfg.doc.get("bode", "nu_max");
  if (lo || hi) {
    if (!lo || !hi) throw ConfigError("[bode] needs both nu_min and nu_max");
    const auto n = cfg.doc.get("bode", "points");
    grid = log_grid(parse_quantity(*lo), parse_quantity(*hi), n ? Eigen::Index(parse_quantity(*n)) : 400);
  } else {
    grid = default_grid(p);
  }

  const OutputHeader h = make_header(cfg);
  auto emit = [&](const std::string& file, const FrequencyResponse<double>& fr) {
    OutputHeader hh = h;
    hh.extra.emplace_back("pair", fr.label);
    if (fr.degenerate) hh.extra.emplace_back("degenerate", "true");
    CsvWriter w(ctx.out / file, hh);
    w.columns({{"nu", "rad/s"}, {"magnitude", "dB"}, {"phase", "deg"}});
    const VectorX<double> db = magnitude_db(fr);
    for (Eigen::Index i = 0; i < fr.nu.size(); ++i)
      w.row(std::vector<double>{fr.nu(i), db(i), units::rad_to_deg(fr.phase(i))});
    w.close();
  };
  emit("bode_gplt_wave.csv", bode_gplt(p, cfg.sens, g.kBeta, grid, PlatformInput::wave));
  emit("bode_gplt_natural_wave.csv", bode_gplt(p, cfg.sens, 0.0, grid, PlatformInput::wave));
  emit("bode_grot.csv", bode_grot(p, cfg.sens, g.kP, g.kI, grid));
  emit("bode_phi_w.csv", bode_entry(closed, kPhi, kWave, grid));
  emit("bode_phi_beta.csv", bode_entry(closed, kPhi, kBetaOl, grid));
  emit("bode_omega_beta.csv", bode_entry(closed, kOmega, kBetaOl, grid));
  emit("bode_omega_v.csv", bode_entry(closed, kOmega, kWind, grid));
  const auto band = damped_band(p);
  report_stream(ctx) << "damped band: [" << band.first << ", " << band.second << "] rad/s; wrote 7 files to "
                     << ctx.out.string() << "\n";
  return 0;
}

int cmd_fatigue(const CommandContext& ctx) {
  const RunConfig cfg = load(ctx);
  if (ctx.series.empty()) throw ConfigError("fatigue needs an input series file");
  const TimeSeries ts = read_timeseries(ctx.series);
  std::vector<std::string> warnings;
  const double t_start = stats_window_start(ts, cfg.stats_start, warnings);
  for (const auto& w : warnings) diag_stream(ctx) << "warning: " << w << "\n";
  const Eigen::VectorXd x = window(ts, cfg.fatigue.channel, t_start);
  const double duration = static_cast<double>(std::max<Eigen::Index>(x.size() - 1, 0)) * ts.dt();
  const FatigueSummary f = fatigue_summary(x, duration, cfg.fatigue);
  const std::string unit = ts.channel(cfg.fatigue.channel).unit;

  OutputHeader h = make_header(cfg);
  h.extra.emplace_back("series", ctx.series.filename().string());
  h.extra.emplace_back("channel", cfg.fatigue.channel);
  CsvWriter c(ctx.out / "cycles.csv", h);
  c.columns({{"range", unit}, {"mean", unit}, {"count", "-"}});
  for (const auto& cy : f.cycles) c.row(std::vector<double>{cy.range, cy.mean, cy.count});
  c.close();

  CsvWriter s(ctx.out / "fatigue.csv", h);
  s.columns({{"quantity", "-"}, {"value", "-"}, {"unit", "-"}});
  s.row(std::vector<std::string>{"del", fmt(f.del), unit});
  s.row(std::vector<std::string>{"m", fmt(cfg.fatigue.m), "-"});
  s.row(std::vector<std::string>{"n_ref", fmt(f.n_ref), "-"});
  s.row(std::vector<std::string>{"cycles", fmt(f.total_cycles), "-"});
  s.row(std::vector<std::string>{"damage", fmt(f.damage), "-"});
  s.close();
  report_stream(ctx) << std::setprecision(6) << "DEL = " << f.del << " " << unit << ", damage = " << f.damage
                     << " over " << f.total_cycles << " cycles\n";
  return 0;
}

// ---------------------------------------------------------------------------

namespace {

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
  return s;
}

CaseResult run_case(const RunConfig& cfg, int id, std::size_t speed_index, double speed, const StrategySpec& strat,
                    const std::filesystem::path& case_dir) {
  CaseResult r;
  r.id = id;
  r.wind_speed = speed;
  r.strategy = strat.label();
  try {
    const AeroSensitivitiesd sens = sensitivities_for_speed(cfg, speed, &r.speed_specific_sensitivities);
    r.gains = synthesize_gains(cfg.structure, sens, cfg, strat);
    const StateSpaced closed = build_closed_loop(cfg.structure, sens, r.gains);
    const ModalReport<double> rep = modal_report(closed.A());
    r.stable = rep.stable;
    r.max_real_eigenvalue = rep.max_real_part;

    std::vector<DisturbanceSpec> dist = reseeded(cfg, cfg.seed.value_or(0) + speed_index);
    if (!cfg.campaign.wind_file_pattern.empty()) {
      const std::string file = replace_all(cfg.campaign.wind_file_pattern, "{speed}", format_number(speed));
      dist.push_back(WindFile{(cfg.base_dir / file).string(), true});
    }
    const TimeSeries ts = simulate(closed, dist, cfg.sim);
    r.diverged_at = ts.diverged_at;
    std::vector<std::string> ignored;
    const double t_start = stats_window_start(ts, cfg.stats_start, ignored);
    for (const auto& c : ts.channels()) r.stats[c.name] = channel_stats(ts, c.name, t_start);
    const Eigen::VectorXd x = window(ts, cfg.fatigue.channel, t_start);
    r.fatigue = fatigue_summary(x, static_cast<double>(std::max<Eigen::Index>(x.size() - 1, 0)) * ts.dt(), cfg.fatigue);

    if (!case_dir.empty()) {
      OutputHeader h = make_header(cfg);
      h.seed = cfg.seed ? std::optional<std::uint64_t>(*cfg.seed + speed_index) : std::nullopt;
      h.extra.emplace_back("case_id", std::to_string(id));
      h.extra.emplace_back("wind_speed", format_number(speed));
      h.extra.emplace_back("strategy", r.strategy);
      std::ostringstream name;
      name << "case_" << std::setw(3) << std::setfill('0') << id;
      write_stats(case_dir / (name.str() + ".csv"), ts, t_start, h);
      if (cfg.campaign.save_series) write_timeseries(case_dir / (name.str() + "_series.csv"), ts, h);
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<CaseResult> run_campaign(const RunConfig& cfg, unsigned jobs, const std::filesystem::path& case_dir) {
  std::vector<double> speeds = cfg.campaign.wind_speeds;
  if (speeds.empty()) speeds.push_back(cfg.wind_speed);
  std::vector<StrategySpec> strategies = cfg.campaign.strategies;
  if (strategies.empty()) strategies.push_back(cfg.strategy);

  struct Cell {
    std::size_t speed_index;
    StrategySpec strategy;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < speeds.size(); ++i)
    for (const auto& s : strategies) cells.push_back({i, s});

  std::vector<CaseResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++)
      results[k] = run_case(cfg, static_cast<int>(k), cells[k].speed_index, speeds[cells[k].speed_index],
                            cells[k].strategy, case_dir);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }
  return results;
}

int cmd_campaign(const CommandContext& ctx) {
  const RunConfig cfg = load(ctx);
  const std::vector<CaseResult> results = run_campaign(cfg, ctx.jobs, ctx.out / "cases");

  CsvWriter w(ctx.out / "campaign.csv", make_header(cfg));
  w.columns({{"case_id", "-"},
             {"wind_speed", "m/s"},
             {"strategy", "-"},
             {"sensitivities", "-"},
             {"kP", "s"},
             {"kI", "-"},
             {"kBeta", "s"},
             {"kTauG", "N m s/rad"},
             {"stable", "-"},
             {"max_real_eigenvalue", "1/s"},
             {"diverged", "-"},
             {"diverged_at", "s"},
             {"phi_mean", "deg"},
             {"phi_std", "deg"},
             {"phi_max", "deg"},
             {"tower_moment_mean", "N m"},
             {"tower_moment_std", "N m"},
             {"power_mean", "W"},
             {"del", "N m"},
             {"damage", "-"},
             {"error", "-"}});
  const double deg = units::rad_to_deg(1.0);
  int failures = 0;
  for (const auto& r : results) {
    auto stat = [&](const char* ch, double ChannelStats::*field, double scale) {
      const auto it = r.stats.find(ch);
      return it == r.stats.end() ? std::string("nan") : fmt(it->second.*field * scale);
    };
    if (!r.error.empty()) ++failures;
    w.row(std::vector<std::string>{std::to_string(r.id),
                                   fmt(r.wind_speed),
                                   r.strategy,
                                   r.speed_specific_sensitivities ? "speed" : "base",
                                   fmt(r.gains.kP),
                                   fmt(r.gains.kI),
                                   fmt(r.gains.kBeta),
                                   fmt(r.gains.kTauG),
                                   bool_text(r.stable),
                                   fmt(r.max_real_eigenvalue),
                                   bool_text(r.diverged_at.has_value()),
                                   r.diverged_at ? fmt(*r.diverged_at) : std::string("nan"),
                                   stat("phi", &ChannelStats::mean, deg),
                                   stat("phi", &ChannelStats::stddev, deg),
                                   stat("phi", &ChannelStats::max, deg),
                                   stat("tower_moment", &ChannelStats::mean, 1.0),
                                   stat("tower_moment", &ChannelStats::stddev, 1.0),
                                   stat("power", &ChannelStats::mean, 1.0),
                                   r.error.empty() ? fmt(r.fatigue.del) : std::string("nan"),
                                   r.error.empty() ? fmt(r.fatigue.damage) : std::string("nan"),
                                   r.error});
  }
  w.close();
  for (const auto& r : results) {
    if (!r.error.empty()) diag_stream(ctx) << "warning: case " << r.id << ": " << r.error << "\n";
    if (r.diverged_at) diag_stream(ctx) << "warning: case " << r.id << " diverged at t = " << *r.diverged_at << " s\n";
  }
  report_stream(ctx) << "campaign: " << results.size() << " cases";
  if (failures) report_stream(ctx) << " (" << failures << " failed)";
  report_stream(ctx) << ", summary in " << (ctx.out / "campaign.csv").string() << "\n";
  return 0;
}

int run_command(const std::string& name, const CommandContext& ctx) {
  try {
    if (name == "tune") return cmd_tune(ctx);
    if (name == "analyze") return cmd_analyze(ctx);
    if (name == "simulate") return cmd_simulate(ctx);
    if (name == "bode") return cmd_bode(ctx);
    if (name == "fatigue") return cmd_fatigue(ctx);
    if (name == "campaign") return cmd_campaign(ctx);
    diag_stream(ctx) << "error: unknown subcommand '" << name << "'\n";
    return 2;
  } catch (const GainSingularity& e) {
    diag_stream(ctx) << "error: gain singularity: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    diag_stream(ctx) << "error: config: " << e.what() << "\n";
  } catch (const std::exception& e) {
    diag_stream(ctx) << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace fowt
