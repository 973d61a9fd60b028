#pragma once

#include <cmath>

#include "fowt/errors.hpp"
#include "fowt/model.hpp"

namespace fowt {

template <typename Scalar>
struct RotorTarget {
  Scalar zeta_rot{0.6};
  Scalar nu_rot{0.01};  ///< rad/s
};

template <typename Scalar>
struct PlatformTarget {
  Scalar zeta_plt{0.1};
};

template <typename Scalar>
struct PiGains {
  Scalar kP{0};
  Scalar kI{0};
};

/// PI gains placing the reduced rotor loop at (nu_rot, zeta_rot). Signs are
/// those for which the closed-form summary gives positive real nu and zeta.
template <typename Scalar>
PiGains<Scalar> tune_pi(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                        const RotorTarget<Scalar>& target) {
  if (!(target.zeta_rot > 0) || !(target.nu_rot > 0))
    throw InvalidArgument("rotor target requires zeta_rot > 0 and nu_rot > 0");
  if (s.dTa_dBeta == Scalar(0)) throw GainSingularity("dTa_dBeta = 0: PI gains are undefined");
  const Scalar a = p.Ng / p.Jr * s.dTa_dOmega;
  const Scalar b = p.Ng / p.Jr * s.dTa_dBeta;
  return {-(a + Scalar(2) * target.zeta_rot * target.nu_rot) / b, -target.nu_rot * target.nu_rot / b};
}

/// Natural platform damping ratio, i.e. the one obtained with kBeta = 0.
template <typename Scalar>
Scalar natural_platform_zeta(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s) {
  using std::sqrt;
  return (p.Dt + p.ht * p.ht * s.dFa_dV) / (Scalar(2) * sqrt(p.Kt * p.Jt));
}

/// kBeta imposing the reduced platform damping ratio zeta_plt.
template <typename Scalar>
Scalar kbeta_zeta_fixed(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                        const PlatformTarget<Scalar>& target) {
  using std::sqrt;
  if (!(target.zeta_plt > 0)) throw InvalidArgument("platform target requires zeta_plt > 0");
  if (s.dFa_dBeta == Scalar(0)) throw GainSingularity("dFa_dBeta = 0: kBeta is undefined");
  if (p.ht == Scalar(0)) throw GainSingularity("ht = 0: kBeta is undefined");
  if (!(p.Kt > 0) || !(p.Jt > 0)) throw InvalidArgument("Kt and Jt must be positive");
  return (p.Dt + p.ht * p.ht * s.dFa_dV - Scalar(2) * sqrt(p.Kt * p.Jt) * target.zeta_plt) /
         (p.ht * s.dFa_dBeta);
}

/// kBeta cancelling the wind-speed path from platform pitch rate into rotor
/// torque (first-order decoupling).
template <typename Scalar>
Scalar kbeta_reference(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s) {
  if (s.dTa_dBeta == Scalar(0)) throw GainSingularity("dTa_dBeta = 0: reference kBeta is undefined");
  return p.ht * s.dTa_dV / s.dTa_dBeta;
}

/// Generator-torque compensation; m_taug in [0, 1] is the applied fraction.
template <typename Scalar>
Scalar ktaug(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s, Scalar m_taug) {
  if (!(m_taug >= 0 && m_taug <= 1)) throw InvalidArgument("m_taug must lie in [0, 1]");
  if (m_taug == Scalar(0)) return Scalar(0);
  return -m_taug * (p.ht / p.Ng) * s.dTa_dV;
}

/// The A(omega, phidot) entry of the closed loop: first-order coupling from
/// platform pitch rate into rotor acceleration.
template <typename Scalar>
Scalar first_order_coupling(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s, Scalar kBeta,
                            Scalar kTauG) {
  return p.Ng / p.Jr * (-p.ht * s.dTa_dV + kBeta * s.dTa_dBeta - kTauG * p.Ng);
}

/// Sign conditions under which raising zeta_plt strengthens the coupling
/// entry: the uncompensated entry is non-positive and kBeta acts in the
/// same direction.
template <typename Scalar>
struct CouplingInequalities {
  bool uncompensated_nonpositive{false};  ///< ht*dTa_dV + kTauG*Ng >= 0
  bool pitch_ratio_positive{false};       ///< dTa_dBeta/dFa_dBeta > 0
  bool all() const { return uncompensated_nonpositive && pitch_ratio_positive; }
};

template <typename Scalar>
CouplingInequalities<Scalar> coupling_inequalities(const StructuralParams<Scalar>& p,
                                                   const AeroSensitivities<Scalar>& s, Scalar kTauG) {
  CouplingInequalities<Scalar> out;
  out.uncompensated_nonpositive = p.ht * s.dTa_dV + kTauG * p.Ng >= 0;
  out.pitch_ratio_positive = s.dFa_dBeta != Scalar(0) && s.dTa_dBeta / s.dFa_dBeta > 0;
  return out;
}

/// First-order low-pass applied to scheduled gains. A time constant of zero
/// passes targets straight through.
class GainLowPass {
 public:
  explicit GainLowPass(double tau_s = 10.0) : tau_(tau_s) {
    if (!(tau_s >= 0) || !std::isfinite(tau_s)) throw InvalidArgument("gain filter time constant must be >= 0");
  }

  void reset(const ControlGainsd& g) {
    state_ = g;
    primed_ = true;
  }

  const ControlGainsd& update(const ControlGainsd& target, double dt) {
    if (!primed_ || tau_ == 0.0) {
      reset(target);
      return state_;
    }
    const double a = 1.0 - std::exp(-dt / tau_);
    state_.kP += a * (target.kP - state_.kP);
    state_.kI += a * (target.kI - state_.kI);
    state_.kBeta += a * (target.kBeta - state_.kBeta);
    state_.kTauG += a * (target.kTauG - state_.kTauG);
    return state_;
  }

  const ControlGainsd& value() const { return state_; }
  double tau() const { return tau_; }

 private:
  double tau_;
  ControlGainsd state_{};
  bool primed_{false};
};

}  // namespace fowt
