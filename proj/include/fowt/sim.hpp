#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fowt/model.hpp"
#include "fowt/timeseries.hpp"

namespace fowt {

/// Open-loop blade-pitch offset added to the feedback command from onset on.
struct StepBeta {
  double amplitude{0};  ///< rad
  double onset{0};      ///< s
};

/// Wind-speed perturbation step.
struct StepWind {
  double amplitude{0};  ///< m/s
  double onset{0};
};

/// Regular wave, see mono_wave_value().
struct MonoWave {
  double height{0};  ///< m, crest to trough
  double period{1};  ///< s
};

struct JonswapWave {
  double hs{0};  ///< m
  double tp{1};  ///< s
  double gamma{3.3};
  std::uint64_t seed{0};
};

/// Two-column (t, v) CSV; linearly interpolated, held constant outside.
struct WindFile {
  std::string path;
  bool remove_mean{true};
};

using DisturbanceSpec = std::variant<StepBeta, StepWind, MonoWave, JonswapWave, WindFile>;

void validate(const DisturbanceSpec& d);
std::string kind_name(const DisturbanceSpec& d);

/// Reads (t, v) samples; lines starting with '#' and a non-numeric header row
/// are skipped. Times must be strictly increasing.
std::pair<Eigen::VectorXd, Eigen::VectorXd> load_wind_file(const std::string& path);

enum class Method { rk4, exact };
/// How inputs are seen inside an integration step.
enum class InputHold { continuous, zoh };

/// Absolute blade-pitch window and rate limit applied to the command.
struct PitchLimits {
  bool enabled{false};
  double beta_op{0};                               ///< rad, operating-point pitch
  double beta_min{0};                              ///< rad, absolute
  double beta_max{std::numbers::pi / 2};           ///< rad, absolute
  double rate{2.0 * std::numbers::pi / 180.0};     ///< rad/s
};

/// Values used only by the generator-power channel.
struct OperatingPoint {
  double rotor_speed{0};  ///< rad/s
  double gen_torque{0};   ///< N m
};

/// Gains that become the low-pass target from `time` on.
struct GainStep {
  double time{0};
  ControlGainsd gains;
};

struct SimOptions {
  double dt{0.01};
  double duration{100.0};
  Method method{Method::rk4};
  InputHold hold{InputHold::continuous};
  Eigen::Vector4d x0{Eigen::Vector4d::Zero()};
  PitchLimits limits;
  OperatingPoint op;
  std::vector<GainStep> schedule;
  double gain_filter_tau{10.0};
  double divergence_bound{std::numeric_limits<double>::infinity()};
};

/// Disturbance inputs (beta_ol, tau_g_ol, v, w) as functions of time.
class InputSignals {
 public:
  InputSignals(const std::vector<DisturbanceSpec>& specs, double dt, double duration);
  Eigen::Vector4d at(double t) const;
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  struct Sampled {
    Eigen::Index column;
    Eigen::VectorXd t;
    Eigen::VectorXd v;
  };
  std::vector<DisturbanceSpec> analytic_;
  std::vector<Sampled> sampled_;
  std::vector<std::string> warnings_;
};

/// Zero-order-hold discretisation: x+ = Phi x + Gamma u, from the matrix
/// exponential of the augmented system.
std::pair<Eigen::Matrix4d, Eigen::Matrix4d> zoh_discretize(const Eigen::Matrix4d& A, const Eigen::Matrix4d& B,
                                                           double dt);

/// Integrates the closed loop. Output channels: theta, omega, phi, phidot,
/// beta, tau_g, v, w, v_rel, tower_moment, power. A non-finite state or one
/// beyond divergence_bound truncates the series and sets diverged_at.
TimeSeries simulate(const StateSpaced& closed, const std::vector<DisturbanceSpec>& disturbances,
                    const SimOptions& options);

struct FreeDecayResult {
  std::optional<double> zeta;
  std::optional<double> nu;
  bool overdamped{false};
  double decay_rate{0};  ///< 1/s, exponential fallback when overdamped
  std::size_t extrema{0};
};

/// Damping and frequency of the phi response from x0 with no input, using the
/// logarithmic decrement of successive extremum-to-extremum swings.
FreeDecayResult free_decay(const Eigen::Matrix4d& A, const Eigen::Vector4d& x0, double dt, double T);

}  // namespace fowt
