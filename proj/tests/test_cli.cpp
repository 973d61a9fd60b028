#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fowt/commands.hpp"
#include "fowt/csv.hpp"

using namespace fowt;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fowt_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "run.ini";
  std::ofstream(p) << "param_dir = " << FOWT_DEFAULT_PARAM_DIR << "\n" << body;
  return p;
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::string& cmd, CommandContext ctx) {
  std::ostringstream o, e;
  ctx.report = &o;
  ctx.diagnostics = &e;
  const int code = run_command(cmd, ctx);
  return {code, o.str(), e.str()};
}
}  // namespace

TEST_CASE("analyze reports table 3 as unstable") {
  const fs::path dir = scratch("analyze");
  CommandContext ctx;
  ctx.config = write_config(dir, "use = table3\n[control]\nnu_rot = 0.218547 rad/s\n");
  ctx.out = dir / "out";
  const Run r = run("analyze", ctx);
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: unstable") != std::string::npos);
  CHECK(slurp(dir / "out" / "analysis.csv").find("verdict,unstable") != std::string::npos);
}

TEST_CASE("tune with strategy none reports kBeta = 0") {
  const fs::path dir = scratch("tune");
  CommandContext ctx;
  ctx.config = write_config(dir, "use = umaine-iea15\n[control]\nstrategy = none\n");
  ctx.out = dir / "out";
  const Run r = run("tune", ctx);
  CHECK(r.code == 0);
  CHECK(r.out.find("kBeta = 0 s") != std::string::npos);
  CHECK(slurp(dir / "out" / "gains.ini").find("kBeta = 0") != std::string::npos);
}

TEST_CASE("bode writes monotone frequency columns") {
  const fs::path dir = scratch("bode");
  CommandContext ctx;
  ctx.config = write_config(dir, "use = umaine-iea15\n[control]\nstrategy = zeta-fixed:0.1\n");
  ctx.out = dir / "out";
  REQUIRE(run("bode", ctx).code == 0);
  for (const char* f : {"bode_gplt_wave.csv", "bode_grot.csv", "bode_phi_w.csv", "bode_omega_v.csv"}) {
    std::ifstream in(dir / "out" / f);
    std::string line;
    double prev = 0;
    int rows = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (!header_seen) {
        CHECK(line == "nu [rad/s],magnitude [dB],phase [deg]");
        header_seen = true;
        continue;
      }
      const double nu = std::stod(line.substr(0, line.find(',')));
      CHECK(nu > prev);
      prev = nu;
      ++rows;
    }
    CHECK(rows == 400);
  }
}

TEST_CASE("simulate then fatigue, with headers") {
  const fs::path dir = scratch("simfat");
  CommandContext ctx;
  ctx.config = write_config(dir,
                            "use = umaine-iea15\n[control]\nstrategy = zeta-fixed:0.1\n"
                            "[disturbance.w]\nkind = mono-wave\nheight = 1.5 m\nperiod = 28.75 s\n"
                            "[simulation]\nduration = 400\n[output]\nstats_start = 100\n");
  ctx.out = dir / "out";
  REQUIRE(run("simulate", ctx).code == 0);
  const std::string sim = slurp(dir / "out" / "simulation.csv");
  CHECK(sim.rfind("# tool = fowtctl 1.0.0\n# config_hash = ", 0) == 0);
  CHECK(sim.find("# parameter_set = umaine-iea15\n") != std::string::npos);
  CHECK(sim.find("# seed = none\n") != std::string::npos);
  CHECK(sim.find("t [s],theta [deg],omega [rpm],phi [deg]") != std::string::npos);

  ctx.series = dir / "out" / "simulation.csv";
  const Run r = run("fatigue", ctx);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "out" / "cycles.csv"));
  CHECK(slurp(dir / "out" / "fatigue.csv").find("del,") != std::string::npos);

  // the series round-trips into SI units
  const TimeSeries ts = read_timeseries(dir / "out" / "simulation.csv");
  CHECK(ts.channel("phi").unit == "rad");
  CHECK(ts.channel("omega").unit == "rad/s");
}

TEST_CASE("campaign has one row per cell and is deterministic") {
  const fs::path dir = scratch("campaign");
  CommandContext ctx;
  ctx.config = write_config(dir,
                            "use = umaine-iea15\n[run]\nseed = 11\n"
                            "[disturbance.sea]\nkind = jonswap-wave\nhs = 1.5 m\ntp = 11 s\ngamma = 2\n"
                            "[simulation]\ndt = 0.1\nduration = 300\n[output]\nstats_start = 50\n"
                            "[campaign]\nwind_speeds = 12, 18, 24\nstrategies = zeta-fixed:0.1, reference\n");
  ctx.out = dir / "a";
  ctx.jobs = 4;
  REQUIRE(run("campaign", ctx).code == 0);
  ctx.out = dir / "b";
  ctx.jobs = 1;
  REQUIRE(run("campaign", ctx).code == 0);
  const std::string a = slurp(dir / "a" / "campaign.csv");
  CHECK(a == slurp(dir / "b" / "campaign.csv"));
  for (int i = 0; i < 6; ++i) {
    const std::string f = "case_00" + std::to_string(i) + ".csv";
    CHECK(slurp(dir / "a" / "cases" / f) == slurp(dir / "b" / "cases" / f));
  }
  std::istringstream in(a);
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#' && line.rfind("case_id", 0) != 0) ++rows;
  CHECK(rows == 6);

  ctx.seed = 12;
  ctx.out = dir / "c";
  REQUIRE(run("campaign", ctx).code == 0);
  CHECK(slurp(dir / "c" / "campaign.csv") != a);
}

TEST_CASE("hard errors give a nonzero exit code") {
  const fs::path dir = scratch("errors");
  CommandContext ctx;
  ctx.config = dir / "absent.ini";
  ctx.out = dir / "out";
  Run r = run("analyze", ctx);
  CHECK(r.code != 0);
  CHECK(r.err.find("error") != std::string::npos);

  ctx.config = write_config(dir, "use = does-not-exist\n");
  CHECK(run("tune", ctx).code != 0);

  ctx.config = write_config(dir, "use = umaine-iea15\n[sensitivities]\ndFa_dBeta = 0\n[control]\nstrategy = zeta-fixed:0.1\n");
  r = run("tune", ctx);
  CHECK(r.code != 0);
  CHECK(r.err.find("gain singularity") != std::string::npos);

  CHECK(run("frobnicate", ctx).code != 0);
}
