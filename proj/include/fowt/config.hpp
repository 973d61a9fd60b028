#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fowt/fatigue.hpp"
#include "fowt/gains.hpp"
#include "fowt/model.hpp"
#include "fowt/sim.hpp"

namespace fowt {

/// Parses "<number> [unit]" into SI. Unit tokens are joined by '.', '*' or
/// '/', may carry an exponent (m^-1) and may use the k, M, G prefixes on N, W
/// and Pa; deg and rpm convert to rad and rad/s.
double parse_quantity(std::string_view text);

/// SI factor of a unit expression such as "kN.m.s/rad"; empty means 1.
double unit_factor(std::string_view unit);

std::vector<std::string> split_list(std::string_view text, char sep = ',');

/// Sectioned key = value document. Keys before the first section live in the
/// section named "". Comments start with '#' or ';'.
class IniDocument {
 public:
  using Section = std::map<std::string, std::string>;

  static IniDocument parse(std::string_view text, const std::string& source = "<string>");

  /// Reads `file` and resolves `use = <name>` lines. At top level the
  /// referenced file's sections are merged in; inside [S] only the section of
  /// the referenced file named like S's prefix before the first '.' is merged
  /// into S. Later keys override earlier ones. Names containing '/' or ending
  /// in .ini are paths relative to the including file; other names resolve to
  /// <param_dir>/<name>.ini.
  static IniDocument load(const std::filesystem::path& file, const std::filesystem::path& param_dir);

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, std::string value);
  bool has_section(const std::string& section) const { return sections_.count(section) > 0; }
  const std::map<std::string, Section>& sections() const { return sections_; }
  /// Section names equal to prefix or starting with prefix + ".".
  std::vector<std::string> sections_with_prefix(const std::string& prefix) const;

  /// Sorted, comment-free rendering used for hashing.
  std::string canonical() const;

  /// Parameter sets pulled in through `use`, in resolution order.
  const std::vector<std::string>& used() const { return used_; }
  const std::string& source() const { return source_; }

 private:
  std::map<std::string, Section> sections_;
  std::vector<std::string> used_;
  std::string source_;
  friend struct IniLoader;
};

/// Directory for `use` names: FOWT_PARAMS if set, else the built-in default.
std::filesystem::path default_param_dir();

enum class Strategy { zeta_fixed, reference, none };

struct StrategySpec {
  Strategy kind{Strategy::none};
  double zeta_plt{0.1};
  /// Accepts "none", "reference", "zeta-fixed" and "zeta-fixed:<zeta>".
  static StrategySpec parse(std::string_view text, double default_zeta);
  std::string label() const;
};

struct FatigueSettings {
  std::string channel{"tower_moment"};
  double m{3.0};
  double f_ref{1.0};
  std::optional<double> n_ref;
  WohlerCurve curve;
  double section_modulus{1.0};
  double lifetime_scale{1.0};
  double hysteresis{1e-3};
  /// n_ref if given, else f_ref times the analysed duration.
  double reference_cycles(double duration) const;
};

struct CampaignSettings {
  std::vector<double> wind_speeds;
  std::vector<StrategySpec> strategies;
  std::string wind_file_pattern;  ///< may contain {speed}
  bool save_series{false};
};

struct GainOverrides {
  std::optional<double> kP, kI, kBeta, kTauG;
};

struct RunConfig {
  IniDocument doc;
  std::filesystem::path base_dir;
  std::string parameter_set;
  StructuralParamsd structure;
  AeroSensitivitiesd sens;
  double wind_speed{0};
  StrategySpec strategy;
  RotorTarget<double> rotor;
  double m_taug{0};
  GainOverrides overrides;
  std::vector<DisturbanceSpec> disturbances;
  std::vector<std::string> disturbance_names;
  std::vector<bool> seed_explicit;  ///< per disturbance; only jonswap entries matter
  SimOptions sim;
  FatigueSettings fatigue;
  double stats_start{200.0};
  std::optional<std::uint64_t> seed;
  CampaignSettings campaign;
  std::vector<std::string> warnings;
};

/// Builds a RunConfig from a resolved document. seed_override replaces
/// [run] seed. Jonswap disturbances without their own seed take the run seed
/// plus their ordinal; a missing seed is a ConfigError.
RunConfig make_run_config(IniDocument doc, const std::filesystem::path& base_dir,
                          std::optional<std::uint64_t> seed_override = std::nullopt);

RunConfig load_run_config(const std::filesystem::path& file, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Sensitivities at a campaign wind speed: [sensitivities.<speed>] layered
/// on top of [sensitivities], or the base set when no such section exists.
AeroSensitivitiesd sensitivities_for_speed(const RunConfig& cfg, double speed, bool* found = nullptr);

/// Strategy gains plus any explicit [gains] overrides.
ControlGainsd synthesize_gains(const StructuralParamsd& p, const AeroSensitivitiesd& s, const RunConfig& cfg,
                               const StrategySpec& strategy);

/// Disturbances with jonswap seeds re-derived from `seed`.
std::vector<DisturbanceSpec> reseeded(const RunConfig& cfg, std::uint64_t seed);

std::uint64_t fnv1a64(std::string_view data);
/// Hash of the canonical document plus the effective seed.
std::uint64_t config_hash(const RunConfig& cfg);
std::string hex64(std::uint64_t v);

/// [gains] section text that make_run_config reads back verbatim.
std::string export_gains(const ControlGainsd& g);

}  // namespace fowt
