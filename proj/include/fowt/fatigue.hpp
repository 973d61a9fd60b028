#pragma once

#include <Eigen/Dense>

#include <vector>

namespace fowt {

struct Cycle {
  double range{0};
  double mean{0};
  double count{1.0};  ///< 0.5 for a half cycle
};

/// Reversal points of x. A reversal is accepted only once the signal has
/// retraced more than `hysteresis` from the running extreme; the first sample
/// and the final extreme are always kept.
std::vector<double> turning_points(const Eigen::Ref<const Eigen::VectorXd>& x, double hysteresis = 0.0);

struct RainflowOptions {
  /// Hysteresis as a fraction of the signal's peak-to-peak range.
  double hysteresis_fraction{1e-3};
};

/// Four-point rainflow counting; what remains on the stack is counted as
/// half cycles between consecutive points.
std::vector<Cycle> rainflow(const Eigen::Ref<const Eigen::VectorXd>& x, const RainflowOptions& options = {});

/// Rainflow on an already extracted turning-point sequence.
std::vector<Cycle> rainflow_turning_points(const std::vector<double>& points);

double total_count(const std::vector<Cycle>& cycles);

/// (sum count * range^m / n_ref)^(1/m); zero for no cycles.
double damage_equivalent_load(const std::vector<Cycle>& cycles, double m, double n_ref);

/// S-N curve N(ds) = knee_cycles * (knee_stress / ds)^m, with exponent m1 at
/// and above knee_stress and m2 below it for the bilinear kind.
struct WohlerCurve {
  enum class Kind { single, bilinear };
  Kind kind{Kind::bilinear};
  double m1{3.0};
  double m2{5.0};
  double knee_cycles{1e6};
  double knee_stress{83.4e6};  ///< Pa

  static WohlerCurve single(double m, double knee_cycles, double knee_stress);
  static WohlerCurve bilinear(double m1, double m2, double knee_cycles, double knee_stress);

  void validate() const;
  /// Infinite for a zero stress range.
  double cycles_to_failure(double stress_range) const;
};

/// lifetime_scale * sum count / N(range / section_modulus).
double miner_damage(const std::vector<Cycle>& cycles, const WohlerCurve& curve, double section_modulus,
                    double lifetime_scale);

}  // namespace fowt
