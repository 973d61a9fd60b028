#include "fowt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fowt/csv.hpp"
#include "fowt/errors.hpp"
#include "fowt/units.hpp"

#ifndef FOWT_DEFAULT_PARAM_DIR
#define FOWT_DEFAULT_PARAM_DIR "params"
#endif

namespace fowt {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if ((line[i] == '#' || line[i] == ';') && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t'))
      return line.substr(0, i);
  }
  return line;
}

bool parse_double(std::string_view s, double& out, std::size_t& used) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc()) return false;
  used = static_cast<std::size_t>(res.ptr - s.data());
  return true;
}

double base_unit(std::string_view tok) {
  static const std::map<std::string, double, std::less<>> table = {
      {"1", 1.0},    {"-", 1.0},      {"N", 1.0},      {"kN", 1e3},    {"MN", 1e6},     {"GN", 1e9},
      {"Nm", 1.0},   {"kNm", 1e3},    {"MNm", 1e6},    {"m", 1.0},     {"km", 1e3},     {"s", 1.0},
      {"rad", 1.0},  {"deg", units::deg_to_rad(1.0)},  {"rpm", units::rpm_to_rad_s(1.0)},
      {"kg", 1.0},   {"t", 1e3},      {"Pa", 1.0},     {"kPa", 1e3},   {"MPa", 1e6},    {"GPa", 1e9},
      {"W", 1.0},    {"kW", 1e3},     {"MW", 1e6},     {"Hz", 1.0},
  };
  const auto it = table.find(tok);
  if (it == table.end()) throw ConfigError("unknown unit '" + std::string(tok) + "'");
  return it->second;
}

bool truthy(const std::string& v) {
  std::string s = v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

}  // namespace

double unit_factor(std::string_view unit) {
  unit = trim(unit);
  if (unit.empty()) return 1.0;
  double factor = 1.0;
  bool denominator = false;
  std::size_t i = 0;
  while (i < unit.size()) {
    const char c = unit[i];
    if (c == '.' || c == '*' || c == ' ') {
      ++i;
      continue;
    }
    if (c == '/') {
      denominator = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < unit.size() && unit[j] != '.' && unit[j] != '*' && unit[j] != '/' && unit[j] != ' ') ++j;
    std::string_view tok = unit.substr(i, j - i);
    int exponent = 1;
    if (const auto caret = tok.find('^'); caret != std::string_view::npos) {
      std::string e(tok.substr(caret + 1));
      e.erase(std::remove_if(e.begin(), e.end(), [](char ch) { return ch == '{' || ch == '}'; }), e.end());
      const auto res = std::from_chars(e.data(), e.data() + e.size(), exponent);
      if (res.ec != std::errc() || res.ptr != e.data() + e.size())
        throw ConfigError("bad exponent in unit '" + std::string(unit) + "'");
      tok = tok.substr(0, caret);
    }
    const double f = std::pow(base_unit(tok), exponent);
    factor = denominator ? factor / f : factor * f;
    i = j;
  }
  return factor;
}

double parse_quantity(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  std::size_t used = 0;
  if (!parse_double(text, v, used)) throw ConfigError("expected a number, got '" + std::string(text) + "'");
  if (!text.empty() && text.front() == '+') ++used;
  return v * unit_factor(text.substr(used));
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(sep, start);
    const auto piece = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

struct IniLoader {
  std::filesystem::path param_dir;
  int depth{0};

  static void merge_section(IniDocument::Section& into, const IniDocument::Section& from) {
    for (const auto& [k, v] : from) into[k] = v;
  }

  std::filesystem::path resolve(const std::string& name, const std::filesystem::path& including_dir) const {
    const bool is_path = name.find('/') != std::string::npos ||
                         (name.size() > 4 && name.compare(name.size() - 4, 4, ".ini") == 0);
    std::filesystem::path p = is_path ? including_dir / name : param_dir / (name + ".ini");
    if (!std::filesystem::exists(p)) throw ConfigError("unresolved parameter set '" + name + "' (" + p.string() + ")");
    return p;
  }

  void read(IniDocument& doc, const std::filesystem::path& file) {
    if (++depth > 16) throw ConfigError("include depth exceeded at " + file.string());
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config " + file.string());
    const std::filesystem::path dir = file.parent_path();
    std::string section;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      const std::string line(trim(strip_comment(raw)));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": bad section");
        section = std::string(trim(std::string_view(line).substr(1, line.size() - 2)));
        doc.sections_[section];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": expected key = value");
      const std::string key(trim(std::string_view(line).substr(0, eq)));
      const std::string value(trim(std::string_view(line).substr(eq + 1)));
      if (key.empty()) throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": empty key");
      if (key == "use") {
        include(doc, section, value, dir);
      } else if (key == "param_dir" && section.empty()) {
        param_dir = dir / value;
      } else {
        doc.sections_[section][key] = value;
      }
    }
    --depth;
  }

  void include(IniDocument& doc, const std::string& section, const std::string& name,
               const std::filesystem::path& dir) {
    const std::filesystem::path p = resolve(name, dir);
    IniDocument sub;
    read(sub, p);
    doc.used_.insert(doc.used_.end(), sub.used_.begin(), sub.used_.end());
    doc.used_.push_back(p.stem().string());
    if (section.empty()) {
      for (const auto& [name_s, sec] : sub.sections_)
        if (!name_s.empty()) merge_section(doc.sections_[name_s], sec);
    } else {
      const std::string base = section.substr(0, section.find('.'));
      const auto it = sub.sections_.find(base);
      if (it == sub.sections_.end())
        throw ConfigError("parameter set '" + name + "' has no [" + base + "] section");
      merge_section(doc.sections_[section], it->second);
    }
  }
};

IniDocument IniDocument::parse(std::string_view text, const std::string& source) {
  IniDocument doc;
  doc.source_ = source;
  std::istringstream in{std::string(text)};
  std::string section, raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line(trim(strip_comment(raw)));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source + ":" + std::to_string(lineno) + ": bad section");
      section = std::string(trim(std::string_view(line).substr(1, line.size() - 2)));
      doc.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
    doc.sections_[section][std::string(trim(std::string_view(line).substr(0, eq)))] =
        std::string(trim(std::string_view(line).substr(eq + 1)));
  }
  return doc;
}

IniDocument IniDocument::load(const std::filesystem::path& file, const std::filesystem::path& param_dir) {
  IniLoader loader{param_dir};
  IniDocument doc;
  doc.source_ = file.string();
  loader.read(doc, file);
  return doc;
}

bool IniDocument::has(const std::string& section, const std::string& key) const { return get(section, key).has_value(); }

std::optional<std::string> IniDocument::get(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

void IniDocument::set(const std::string& section, const std::string& key, std::string value) {
  sections_[section][key] = std::move(value);
}

std::vector<std::string> IniDocument::sections_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [name, sec] : sections_)
    if (name == prefix || name.rfind(prefix + ".", 0) == 0) out.push_back(name);
  return out;
}

std::string IniDocument::canonical() const {
  std::string out;
  for (const auto& [name, sec] : sections_) {
    out += "[" + name + "]\n";
    for (const auto& [k, v] : sec) out += k + "=" + v + "\n";
  }
  return out;
}

std::filesystem::path default_param_dir() {
  if (const char* env = std::getenv("FOWT_PARAMS"); env && *env) return env;
  return FOWT_DEFAULT_PARAM_DIR;
}

// ---------------------------------------------------------------------------

StrategySpec StrategySpec::parse(std::string_view text, double default_zeta) {
  std::string t(trim(text));
  std::replace(t.begin(), t.end(), ' ', ':');
  const auto colon = t.find(':');
  const std::string head = t.substr(0, colon);
  StrategySpec s;
  s.zeta_plt = default_zeta;
  if (head == "none") {
    s.kind = Strategy::none;
  } else if (head == "reference") {
    s.kind = Strategy::reference;
  } else if (head == "zeta-fixed") {
    s.kind = Strategy::zeta_fixed;
    if (colon != std::string::npos) s.zeta_plt = parse_quantity(std::string_view(t).substr(colon + 1));
    if (!(s.zeta_plt > 0)) throw ConfigError("zeta-fixed strategy needs zeta_plt > 0");
  } else {
    throw ConfigError("unknown strategy '" + std::string(text) + "' (zeta-fixed, reference, none)");
  }
  return s;
}

std::string StrategySpec::label() const {
  switch (kind) {
    case Strategy::zeta_fixed:
      return "zeta-fixed:" + format_number(zeta_plt);
    case Strategy::reference:
      return "reference";
    case Strategy::none:
      break;
  }
  return "none";
}

double FatigueSettings::reference_cycles(double duration) const {
  if (n_ref) return *n_ref;
  return f_ref * duration;
}

namespace {

class Reader {
 public:
  explicit Reader(const IniDocument& d) : doc_(d) {}

  std::optional<double> opt(const std::string& sec, const std::string& key) const {
    const auto v = doc_.get(sec, key);
    if (!v) return std::nullopt;
    try {
      return parse_quantity(*v);
    } catch (const ConfigError& e) {
      throw ConfigError("[" + sec + "] " + key + ": " + e.what());
    }
  }
  double req(const std::string& sec, const std::string& key) const {
    const auto v = opt(sec, key);
    if (!v) throw ConfigError("missing [" + sec + "] " + key);
    return *v;
  }
  double def(const std::string& sec, const std::string& key, double fallback) const {
    return opt(sec, key).value_or(fallback);
  }
  std::string str(const std::string& sec, const std::string& key, const std::string& fallback) const {
    return doc_.get(sec, key).value_or(fallback);
  }

 private:
  const IniDocument& doc_;
};

AeroSensitivitiesd read_sensitivities(const Reader& r, const std::string& sec, const AeroSensitivitiesd& base,
                                      bool require) {
  auto get = [&](const char* key, double fallback) { return require ? r.req(sec, key) : r.def(sec, key, fallback); };
  AeroSensitivitiesd s;
  s.dTa_dOmega = get("dTa_dOmega", base.dTa_dOmega);
  s.dTa_dV = get("dTa_dV", base.dTa_dV);
  s.dTa_dBeta = get("dTa_dBeta", base.dTa_dBeta);
  s.dFa_dOmega = get("dFa_dOmega", base.dFa_dOmega);
  s.dFa_dV = get("dFa_dV", base.dFa_dV);
  s.dFa_dBeta = get("dFa_dBeta", base.dFa_dBeta);
  s.dTw_dW = r.def(sec, "dTw_dW", base.dTw_dW);
  return s;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const std::string t(trim(text));
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) throw ConfigError("seed must be a non-negative integer");
  return v;
}

Method parse_method(const std::string& s) {
  if (s == "rk4") return Method::rk4;
  if (s == "exact") return Method::exact;
  throw ConfigError("unknown integration method '" + s + "' (rk4, exact)");
}

InputHold parse_hold(const std::string& s) {
  if (s == "continuous") return InputHold::continuous;
  if (s == "zoh") return InputHold::zoh;
  throw ConfigError("unknown input hold '" + s + "' (continuous, zoh)");
}

}  // namespace

RunConfig make_run_config(IniDocument doc, const std::filesystem::path& base_dir,
                          std::optional<std::uint64_t> seed_override) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  const Reader r(doc);

  if (doc.used().empty()) {
    cfg.parameter_set = "inline";
  } else {
    for (const auto& u : doc.used()) cfg.parameter_set += (cfg.parameter_set.empty() ? "" : "+") + u;
  }

  cfg.structure.Ng = r.req("structure", "Ng");
  cfg.structure.Jr = r.req("structure", "Jr");
  cfg.structure.Jt = r.req("structure", "Jt");
  cfg.structure.Dt = r.req("structure", "Dt");
  cfg.structure.Kt = r.req("structure", "Kt");
  cfg.structure.ht = r.req("structure", "ht");
  if (const auto bad = structural_violations(cfg.structure); !bad.empty()) throw ConfigError("structure: " + bad.front());

  cfg.sens = read_sensitivities(r, "sensitivities", {}, true);
  if (!cfg.sens.all_finite()) throw ConfigError("sensitivities must be finite");
  for (const auto& w : above_rated_violations(cfg.sens)) cfg.warnings.push_back("sensitivities: " + w);

  cfg.wind_speed = r.def("operating_point", "wind_speed", 0.0);
  cfg.sim.op.rotor_speed = r.def("operating_point", "rotor_speed", 0.0);
  cfg.sim.op.gen_torque = r.def("operating_point", "gen_torque", 0.0);
  cfg.sim.limits.beta_op = r.def("operating_point", "pitch", 0.0);

  cfg.strategy = StrategySpec::parse(r.str("control", "strategy", "none"), r.def("control", "zeta_plt", 0.1));
  cfg.rotor.zeta_rot = r.def("control", "zeta_rot", 0.6);
  cfg.rotor.nu_rot = r.def("control", "nu_rot", 0.01);
  cfg.m_taug = r.def("control", "m_taug", 0.0);
  cfg.sim.gain_filter_tau = r.def("control", "gain_filter_tau", 10.0);
  cfg.sim.limits.enabled = truthy(r.str("control", "limits", "off"));
  cfg.sim.limits.beta_min = r.def("control", "pitch_min", 0.0);
  cfg.sim.limits.beta_max = r.def("control", "pitch_max", std::numbers::pi / 2);
  cfg.sim.limits.rate = r.def("control", "pitch_rate", units::deg_to_rad(2.0));

  cfg.overrides.kP = r.opt("gains", "kP");
  cfg.overrides.kI = r.opt("gains", "kI");
  cfg.overrides.kBeta = r.opt("gains", "kBeta");
  cfg.overrides.kTauG = r.opt("gains", "kTauG");

  cfg.sim.dt = r.def("simulation", "dt", 0.01);
  cfg.sim.duration = r.def("simulation", "duration", 100.0);
  cfg.sim.method = parse_method(r.str("simulation", "method", "rk4"));
  cfg.sim.hold = parse_hold(r.str("simulation", "hold", "continuous"));
  cfg.sim.x0 << r.def("simulation", "theta0", 0.0), r.def("simulation", "omega0", 0.0),
      r.def("simulation", "phi0", 0.0), r.def("simulation", "phidot0", 0.0);
  cfg.sim.divergence_bound = r.def("simulation", "divergence_bound", std::numeric_limits<double>::infinity());
  if (!(cfg.sim.dt > 0) || !(cfg.sim.duration >= cfg.sim.dt)) throw ConfigError("[simulation] needs dt > 0 and duration >= dt");
  if (cfg.sim.method == Method::exact && cfg.sim.limits.enabled)
    throw ConfigError("[simulation] method = exact cannot be combined with [control] limits = on");

  if (const auto s = doc.get("run", "seed")) cfg.seed = parse_seed(*s);
  if (seed_override) cfg.seed = seed_override;

  std::uint64_t jonswap_ordinal = 0;
  for (const auto& name : doc.sections_with_prefix("disturbance")) {
    const std::string kind = r.str(name, "kind", "");
    DisturbanceSpec d;
    bool explicit_seed = false;
    if (kind == "step-beta") {
      d = StepBeta{r.req(name, "amplitude"), r.def(name, "onset", 0.0)};
    } else if (kind == "step-wind") {
      d = StepWind{r.req(name, "amplitude"), r.def(name, "onset", 0.0)};
    } else if (kind == "mono-wave") {
      d = MonoWave{r.req(name, "height"), r.req(name, "period")};
    } else if (kind == "jonswap-wave") {
      JonswapWave j{r.req(name, "hs"), r.req(name, "tp"), r.def(name, "gamma", 3.3), 0};
      if (const auto s = doc.get(name, "seed")) {
        j.seed = parse_seed(*s);
        explicit_seed = true;
      } else if (cfg.seed) {
        j.seed = *cfg.seed + jonswap_ordinal;
      } else {
        throw ConfigError("[" + name + "] jonswap-wave needs a seed ([run] seed, --seed or a seed key)");
      }
      ++jonswap_ordinal;
      d = j;
    } else if (kind == "wind-file") {
      const std::filesystem::path p = base_dir / r.str(name, "path", "");
      d = WindFile{p.string(), truthy(r.str(name, "remove_mean", "true"))};
    } else {
      throw ConfigError("[" + name + "] unknown kind '" + kind + "'");
    }
    try {
      validate(d);
    } catch (const InvalidArgument& e) {
      throw ConfigError("[" + name + "] " + e.what());
    }
    cfg.disturbances.push_back(d);
    cfg.disturbance_names.push_back(name);
    cfg.seed_explicit.push_back(explicit_seed);
  }

  cfg.fatigue.channel = r.str("fatigue", "channel", "tower_moment");
  cfg.fatigue.m = r.def("fatigue", "m", 3.0);
  cfg.fatigue.f_ref = r.def("fatigue", "f_ref", 1.0);
  cfg.fatigue.n_ref = r.opt("fatigue", "n_ref");
  cfg.fatigue.section_modulus = r.def("fatigue", "section_modulus", 1.0);
  cfg.fatigue.lifetime_scale = r.def("fatigue", "lifetime_scale", 1.0);
  cfg.fatigue.hysteresis = r.def("fatigue", "hysteresis", 1e-3);
  const std::string wohler = r.str("fatigue", "wohler", "bilinear");
  const double knee_cycles = r.def("fatigue", "knee_cycles", 1e6);
  const double knee_stress = r.def("fatigue", "knee_stress", 83.4e6);
  try {
    if (wohler == "bilinear") {
      cfg.fatigue.curve =
          WohlerCurve::bilinear(r.def("fatigue", "m1", 3.0), r.def("fatigue", "m2", 5.0), knee_cycles, knee_stress);
    } else if (wohler == "single") {
      cfg.fatigue.curve = WohlerCurve::single(r.def("fatigue", "m1", 3.0), knee_cycles, knee_stress);
    } else {
      throw ConfigError("[fatigue] wohler must be bilinear or single");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("[fatigue] ") + e.what());
  }
  if (!(cfg.fatigue.section_modulus > 0)) throw ConfigError("[fatigue] section_modulus must be > 0");

  cfg.stats_start = r.def("output", "stats_start", 200.0);

  if (const auto speeds = doc.get("campaign", "wind_speeds"))
    for (const auto& s : split_list(*speeds)) cfg.campaign.wind_speeds.push_back(parse_quantity(s));
  if (const auto strategies = doc.get("campaign", "strategies"))
    for (const auto& s : split_list(*strategies)) cfg.campaign.strategies.push_back(StrategySpec::parse(s, cfg.strategy.zeta_plt));
  cfg.campaign.wind_file_pattern = r.str("campaign", "wind_file", "");
  cfg.campaign.save_series = truthy(r.str("campaign", "save_series", "off"));

  cfg.doc = std::move(doc);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& file, std::optional<std::uint64_t> seed_override) {
  IniDocument doc = IniDocument::load(file, default_param_dir());
  return make_run_config(std::move(doc), file.parent_path(), seed_override);
}

AeroSensitivitiesd sensitivities_for_speed(const RunConfig& cfg, double speed, bool* found) {
  if (found) *found = false;
  const Reader r(cfg.doc);
  for (const auto& name : cfg.doc.sections_with_prefix("sensitivities")) {
    if (name == "sensitivities") continue;
    double v = 0.0;
    std::size_t used = 0;
    const std::string suffix = name.substr(std::string("sensitivities.").size());
    if (!parse_double(suffix, v, used) || used != suffix.size()) continue;
    if (std::abs(v - speed) <= 1e-9 * std::max(1.0, std::abs(speed))) {
      if (found) *found = true;
      return read_sensitivities(r, name, cfg.sens, false);
    }
  }
  return cfg.sens;
}

ControlGainsd synthesize_gains(const StructuralParamsd& p, const AeroSensitivitiesd& s, const RunConfig& cfg,
                               const StrategySpec& strategy) {
  ControlGainsd g;
  const GainOverrides& o = cfg.overrides;
  if (!o.kP || !o.kI) {
    const PiGains<double> pi = tune_pi(p, s, cfg.rotor);
    g.kP = pi.kP;
    g.kI = pi.kI;
  }
  switch (strategy.kind) {
    case Strategy::zeta_fixed:
      g.kBeta = kbeta_zeta_fixed(p, s, PlatformTarget<double>{strategy.zeta_plt});
      break;
    case Strategy::reference:
      g.kBeta = kbeta_reference(p, s);
      break;
    case Strategy::none:
      g.kBeta = 0.0;
      break;
  }
  g.kTauG = ktaug(p, s, cfg.m_taug);
  if (o.kP) g.kP = *o.kP;
  if (o.kI) g.kI = *o.kI;
  if (o.kBeta) g.kBeta = *o.kBeta;
  if (o.kTauG) g.kTauG = *o.kTauG;
  return g;
}

std::vector<DisturbanceSpec> reseeded(const RunConfig& cfg, std::uint64_t seed) {
  std::vector<DisturbanceSpec> out = cfg.disturbances;
  std::uint64_t ordinal = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (auto* j = std::get_if<JonswapWave>(&out[i])) {
      if (!cfg.seed_explicit[i]) j->seed = seed + ordinal;
      ++ordinal;
    }
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::string text = cfg.doc.canonical();
  text += "seed=" + (cfg.seed ? std::to_string(*cfg.seed) : std::string("none")) + "\n";
  return fnv1a64(text);
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

std::string export_gains(const ControlGainsd& g) {
  std::ostringstream out;
  out << "[gains]\n"
      << "kP = " << format_number(g.kP) << "\n"
      << "kI = " << format_number(g.kI) << "\n"
      << "kBeta = " << format_number(g.kBeta) << "\n"
      << "kTauG = " << format_number(g.kTauG) << "\n";
  return out.str();
}

}  // namespace fowt
