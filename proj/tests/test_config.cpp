#include <doctest.h>

#include <fstream>

#include "fowt/config.hpp"
#include "fowt/errors.hpp"
#include "fowt/sim.hpp"
#include "fowt/units.hpp"

using namespace fowt;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fowt_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}
void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* kBase = R"(
[structure]
Ng = 1
Jr = 3.12456272e8 kg.m^2
Jt = 2.95e11 kg.m^2
Dt = 0
Kt = 1.409e10 N.m/rad
ht = 150 m

[sensitivities]
dTa_dV = 2980.9 kN.s
dFa_dV = 354.8 kN.s.m^-1
dTa_dOmega = -58597.1 kN.m.s.rad^-1
dFa_dOmega = -5658.0 kN.s.rad^-1
dTa_dBeta = -152347.8 kN.m.rad^-1
dFa_dBeta = -16052.2 kN.rad^-1
dTw_dW = 4e7
)";
}  // namespace

TEST_CASE("quantities") {
  CHECK(parse_quantity("2980.9 kN.s") == doctest::Approx(2980.9e3));
  CHECK(parse_quantity("-5658.0 kN.s.rad^-1") == doctest::Approx(-5658.0e3));
  CHECK(parse_quantity("5 deg") == doctest::Approx(units::deg_to_rad(5.0)));
  CHECK(parse_quantity("7.56 rpm") == doctest::Approx(7.56 * 2 * std::numbers::pi / 60));
  CHECK(parse_quantity("19.62 MN.m") == doctest::Approx(19.62e6));
  CHECK(parse_quantity("83.4 MPa") == doctest::Approx(83.4e6));
  CHECK(parse_quantity("3") == 3.0);
  CHECK_THROWS_AS(parse_quantity("3 furlongs"), ConfigError);
  CHECK_THROWS_AS(parse_quantity("abc"), ConfigError);
  CHECK(split_list("12, 13 ,14") == std::vector<std::string>{"12", "13", "14"});
}

TEST_CASE("INI parsing") {
  const auto d = IniDocument::parse("top = 1\n[a]\nx = 2 # note\n; comment\n[a.b]\ny = z\n");
  CHECK(*d.get("", "top") == "1");
  CHECK(*d.get("a", "x") == "2");
  CHECK(d.sections_with_prefix("a").size() == 2);
  CHECK_FALSE(d.get("a", "missing"));
  CHECK_THROWS_AS(IniDocument::parse("[a\nx=1\n"), ConfigError);
}

TEST_CASE("parameter sets through use") {
  const fs::path dir = scratch("use");
  fs::create_directories(dir / "params");
  write(dir / "params" / "base.ini", kBase);
  write(dir / "params" / "variant.ini", "use = base\n[sensitivities]\ndTa_dV = 3000 kN.s\n");
  write(dir / "run.ini", "param_dir = params\nuse = variant\n[control]\nstrategy = zeta-fixed:0.25\n");
  const RunConfig cfg = load_run_config(dir / "run.ini");
  CHECK(cfg.parameter_set == "base+variant");
  CHECK(cfg.sens.dTa_dV == doctest::Approx(3.0e6));
  CHECK(cfg.sens.dFa_dV == doctest::Approx(354.8e3));
  CHECK(cfg.strategy.kind == Strategy::zeta_fixed);
  CHECK(cfg.strategy.zeta_plt == 0.25);

  write(dir / "missing.ini", "param_dir = params\nuse = nowhere\n");
  CHECK_THROWS_AS(load_run_config(dir / "missing.ini"), ConfigError);
}

TEST_CASE("stochastic disturbances need a seed") {
  const fs::path dir = scratch("seed");
  write(dir / "run.ini", std::string(kBase) + "[disturbance.sea]\nkind = jonswap-wave\nhs = 1.5\ntp = 11\n");
  CHECK_THROWS_AS(load_run_config(dir / "run.ini"), ConfigError);
  const RunConfig a = load_run_config(dir / "run.ini", 5);
  CHECK(std::get<JonswapWave>(a.disturbances[0]).seed == 5);
  const RunConfig b = load_run_config(dir / "run.ini", 6);
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a) == config_hash(load_run_config(dir / "run.ini", 5)));
  CHECK(std::get<JonswapWave>(reseeded(a, 40)[0]).seed == 40);
}

TEST_CASE("strategy parsing") {
  CHECK(StrategySpec::parse("none", 0.1).kind == Strategy::none);
  CHECK(StrategySpec::parse("reference", 0.1).kind == Strategy::reference);
  const auto z = StrategySpec::parse("zeta-fixed", 0.3);
  CHECK(z.zeta_plt == 0.3);
  CHECK(StrategySpec::parse("zeta-fixed 0.25", 0.1).zeta_plt == 0.25);
  CHECK(StrategySpec::parse(z.label(), 0.1).zeta_plt == 0.3);
  CHECK_THROWS_AS(StrategySpec::parse("bogus", 0.1), ConfigError);
}

TEST_CASE("gains: none strategy, overrides and export round trip") {
  const fs::path dir = scratch("gains");
  write(dir / "none.ini", std::string(kBase) + "[control]\nstrategy = none\n");
  const RunConfig none = load_run_config(dir / "none.ini");
  const ControlGainsd g0 = synthesize_gains(none.structure, none.sens, none, none.strategy);
  CHECK(g0.kBeta == 0.0);
  CHECK(g0.kTauG == 0.0);

  write(dir / "zeta.ini", std::string(kBase) + "[control]\nstrategy = zeta-fixed:0.1\n[disturbance.w]\nkind = mono-wave\nheight = 1.5\nperiod = 28.75\n[simulation]\nduration = 60\n");
  const RunConfig cfg = load_run_config(dir / "zeta.ini");
  const ControlGainsd g = synthesize_gains(cfg.structure, cfg.sens, cfg, cfg.strategy);
  std::ifstream in(dir / "zeta.ini");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  write(dir / "pinned.ini", text + export_gains(g));
  const RunConfig pinned = load_run_config(dir / "pinned.ini");
  const ControlGainsd g2 = synthesize_gains(pinned.structure, pinned.sens, pinned, pinned.strategy);
  CHECK(g2 == g);
  const TimeSeries a = simulate(build_closed_loop(cfg.structure, cfg.sens, g), cfg.disturbances, cfg.sim);
  const TimeSeries b = simulate(build_closed_loop(pinned.structure, pinned.sens, g2), pinned.disturbances, pinned.sim);
  CHECK(a["phi"] == b["phi"]);
  CHECK(a["tower_moment"] == b["tower_moment"]);
}

TEST_CASE("structural invariants are enforced on load") {
  const fs::path dir = scratch("invariants");
  std::string text = kBase;
  text.replace(text.find("ht = 150 m"), 10, "ht = 0 m");
  write(dir / "run.ini", text);
  CHECK_THROWS_AS(load_run_config(dir / "run.ini"), ConfigError);
}

TEST_CASE("speed-specific sensitivities") {
  const fs::path dir = scratch("speeds");
  write(dir / "run.ini", std::string(kBase) + "[sensitivities.14]\ndTa_dV = 1000 kN.s\n");
  const RunConfig cfg = load_run_config(dir / "run.ini");
  bool found = false;
  CHECK(sensitivities_for_speed(cfg, 14.0, &found).dTa_dV == doctest::Approx(1e6));
  CHECK(found);
  CHECK(sensitivities_for_speed(cfg, 15.0, &found).dTa_dV == doctest::Approx(2980.9e3));
  CHECK_FALSE(found);
}

TEST_CASE("hashing") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}
