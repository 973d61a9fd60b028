#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fowt/errors.hpp"

namespace fowt {

// State x = (theta, omega, phi, phidot): theta is the integrated generator-speed
// error, phi the platform pitch perturbation.
enum StateIndex : Eigen::Index { kTheta = 0, kOmega = 1, kPhi = 2, kPhiDot = 3 };
// Columns of Bc (control) and Bd (disturbance).
enum ControlInput : Eigen::Index { kBetaInput = 0, kTauGInput = 1 };
enum DisturbanceInput : Eigen::Index { kWindInput = 0, kWaveInput = 1 };
// Columns of the stacked input matrix B = [Bc | Bd].
enum StackedInput : Eigen::Index { kBetaOl = 0, kTauGOl = 1, kWind = 2, kWave = 3 };

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Matrix42 = Eigen::Matrix<Scalar, 4, 2>;
template <typename Scalar>
using Matrix24 = Eigen::Matrix<Scalar, 2, 4>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

/// Partial derivatives of aerodynamic torque/thrust and wave moment at an
/// operating point, SI units.
template <typename Scalar>
struct AeroSensitivities {
  Scalar dTa_dOmega{0};  ///< N m s/rad
  Scalar dTa_dV{0};      ///< N s
  Scalar dTa_dBeta{0};   ///< N m/rad
  Scalar dFa_dOmega{0};  ///< N s/rad
  Scalar dFa_dV{0};      ///< N s/m
  Scalar dFa_dBeta{0};   ///< N/rad
  Scalar dTw_dW{0};      ///< N m s/m

  template <typename Other>
  AeroSensitivities<Other> cast() const {
    return {Other(dTa_dOmega), Other(dTa_dV), Other(dTa_dBeta), Other(dFa_dOmega),
            Other(dFa_dV),     Other(dFa_dBeta), Other(dTw_dW)};
  }

  bool all_finite() const {
    using std::isfinite;
    return isfinite(dTa_dOmega) && isfinite(dTa_dV) && isfinite(dTa_dBeta) && isfinite(dFa_dOmega) &&
           isfinite(dFa_dV) && isfinite(dFa_dBeta) && isfinite(dTw_dW);
  }
};

/// Rigid-body rotor and platform-pitch parameters.
template <typename Scalar>
struct StructuralParams {
  Scalar Ng{1};  ///< gearbox ratio
  Scalar Jr{1};  ///< rotor-side drivetrain inertia, kg m^2
  Scalar Jt{1};  ///< total pitch inertia incl. added mass, kg m^2
  Scalar Dt{0};  ///< linear pitch damping, N m s/rad
  Scalar Kt{1};  ///< pitch restoring stiffness, N m/rad
  Scalar ht{1};  ///< rotor height above the pitch centre, m

  template <typename Other>
  StructuralParams<Other> cast() const {
    return {Other(Ng), Other(Jr), Other(Jt), Other(Dt), Other(Kt), Other(ht)};
  }
};

/// Pitch-controller gains: beta = kP*omega + kI*theta + kBeta*phidot,
/// tau_g = kTauG*phidot.
template <typename Scalar>
struct ControlGains {
  Scalar kP{0};
  Scalar kI{0};
  Scalar kBeta{0};
  Scalar kTauG{0};

  friend ControlGains operator+(const ControlGains& a, const ControlGains& b) {
    return {a.kP + b.kP, a.kI + b.kI, a.kBeta + b.kBeta, a.kTauG + b.kTauG};
  }
  friend bool operator==(const ControlGains&, const ControlGains&) = default;

  bool all_finite() const {
    using std::isfinite;
    return isfinite(kP) && isfinite(kI) && isfinite(kBeta) && isfinite(kTauG);
  }
};

using AeroSensitivitiesd = AeroSensitivities<double>;
using StructuralParamsd = StructuralParams<double>;
using ControlGainsd = ControlGains<double>;

/// Strict structural invariants (Jr, Jt, Kt, ht > 0, Dt >= 0, Ng >= 1).
/// Returns the list of violations; empty when valid.
template <typename Scalar>
std::vector<std::string> structural_violations(const StructuralParams<Scalar>& p) {
  using std::isfinite;
  std::vector<std::string> out;
  if (!(isfinite(p.Ng) && isfinite(p.Jr) && isfinite(p.Jt) && isfinite(p.Dt) && isfinite(p.Kt) &&
        isfinite(p.ht)))
    out.emplace_back("non-finite structural parameter");
  if (!(p.Jr > 0)) out.emplace_back("Jr must be > 0");
  if (!(p.Jt > 0)) out.emplace_back("Jt must be > 0");
  if (!(p.Kt > 0)) out.emplace_back("Kt must be > 0");
  if (!(p.ht > 0)) out.emplace_back("ht must be > 0");
  if (!(p.Dt >= 0)) out.emplace_back("Dt must be >= 0");
  if (!(p.Ng >= 1)) out.emplace_back("Ng must be >= 1");
  return out;
}

/// Sign pattern expected above rated: torque/thrust fall with pitch and speed,
/// rise with wind. Returns violations (informational, not enforced).
template <typename Scalar>
std::vector<std::string> above_rated_violations(const AeroSensitivities<Scalar>& s) {
  std::vector<std::string> out;
  if (!(s.dTa_dBeta < 0)) out.emplace_back("dTa_dBeta should be < 0");
  if (!(s.dFa_dBeta < 0)) out.emplace_back("dFa_dBeta should be < 0");
  if (!(s.dTa_dOmega < 0)) out.emplace_back("dTa_dOmega should be < 0");
  if (!(s.dFa_dOmega < 0)) out.emplace_back("dFa_dOmega should be < 0");
  if (!(s.dTa_dV > 0)) out.emplace_back("dTa_dV should be > 0");
  if (!(s.dFa_dV > 0)) out.emplace_back("dFa_dV should be > 0");
  return out;
}

/// Open-loop matrices of the coupled rotor / platform-pitch model and, once
/// gains are applied, the closed-loop matrix A = A0 + Bc K0.
template <typename Scalar>
struct StateSpace {
  StructuralParams<Scalar> params;
  AeroSensitivities<Scalar> sens;
  Matrix4<Scalar> A0 = Matrix4<Scalar>::Zero();
  Matrix42<Scalar> Bc = Matrix42<Scalar>::Zero();
  Matrix42<Scalar> Bd = Matrix42<Scalar>::Zero();
  std::optional<ControlGains<Scalar>> gains;
  Matrix4<Scalar> A_cl = Matrix4<Scalar>::Zero();

  bool is_closed() const { return gains.has_value(); }

  const Matrix4<Scalar>& A() const {
    if (!gains) throw InvalidArgument("state space has not been closed with gains");
    return A_cl;
  }

  /// Stacked input matrix [Bc | Bd], columns (beta_ol, tau_g_ol, v, w).
  Matrix4<Scalar> B() const {
    Matrix4<Scalar> b;
    b << Bc, Bd;
    return b;
  }
};

using StateSpaced = StateSpace<double>;

/// K0 such that u_c = K0 x.
template <typename Scalar>
Matrix24<Scalar> feedback_matrix(const ControlGains<Scalar>& g) {
  Matrix24<Scalar> k;
  k << g.kI, g.kP, Scalar(0), g.kBeta,  //
      Scalar(0), Scalar(0), Scalar(0), g.kTauG;
  return k;
}

/// Assembles A0, Bc, Bd. Limit cases ht = 0 or Kt = 0 are accepted so the
/// decoupled/zero-stiffness forms can be built; other invariants are enforced.
template <typename Scalar>
StateSpace<Scalar> build_open_loop(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s) {
  using std::isfinite;
  if (!s.all_finite()) throw InvalidArgument("non-finite aerodynamic sensitivity");
  if (!(isfinite(p.Ng) && isfinite(p.Jr) && isfinite(p.Jt) && isfinite(p.Dt) && isfinite(p.Kt) &&
        isfinite(p.ht)))
    throw InvalidArgument("non-finite structural parameter");
  if (!(p.Jr > 0) || !(p.Jt > 0)) throw InvalidArgument("inertias Jr and Jt must be positive");
  if (!(p.Kt >= 0) || !(p.ht >= 0) || !(p.Dt >= 0))
    throw InvalidArgument("Kt, ht and Dt must be non-negative");
  if (!(p.Ng >= 1)) throw InvalidArgument("gearbox ratio Ng must be >= 1");

  const Scalar rot = p.Ng / p.Jr;
  const Scalar plt = p.ht / p.Jt;

  StateSpace<Scalar> ss;
  ss.params = p;
  ss.sens = s;
  ss.A0(kTheta, kOmega) = Scalar(1);
  ss.A0(kOmega, kOmega) = rot * s.dTa_dOmega;
  ss.A0(kOmega, kPhiDot) = -p.ht * rot * s.dTa_dV;
  ss.A0(kPhi, kPhiDot) = Scalar(1);
  ss.A0(kPhiDot, kOmega) = plt * s.dFa_dOmega;
  ss.A0(kPhiDot, kPhi) = -p.Kt / p.Jt;
  ss.A0(kPhiDot, kPhiDot) = -(p.Dt + p.ht * p.ht * s.dFa_dV) / p.Jt;

  ss.Bc(kOmega, kBetaInput) = rot * s.dTa_dBeta;
  ss.Bc(kOmega, kTauGInput) = -p.Ng * p.Ng / p.Jr;
  ss.Bc(kPhiDot, kBetaInput) = plt * s.dFa_dBeta;

  ss.Bd(kOmega, kWindInput) = rot * s.dTa_dV;
  ss.Bd(kPhiDot, kWindInput) = plt * s.dFa_dV;
  ss.Bd(kPhiDot, kWaveInput) = s.dTw_dW / p.Jt;
  return ss;
}

template <typename Scalar>
StateSpace<Scalar> close_loop(const StateSpace<Scalar>& open, const ControlGains<Scalar>& g) {
  if (!g.all_finite()) throw InvalidArgument("non-finite control gain");
  StateSpace<Scalar> ss = open;
  ss.gains = g;
  ss.A_cl = open.A0 + open.Bc * feedback_matrix(g);
  return ss;
}

template <typename Scalar>
StateSpace<Scalar> build_closed_loop(const StructuralParams<Scalar>& p, const AeroSensitivities<Scalar>& s,
                                     const ControlGains<Scalar>& g) {
  return close_loop(build_open_loop(p, s), g);
}

/// Sensitivities with the speed-to-thrust path removed, so platform pitch
/// evolves independently of the rotor (with kP = kI = 0 this is the reduced
/// second-order platform model).
template <typename Scalar>
AeroSensitivities<Scalar> without_speed_thrust_coupling(AeroSensitivities<Scalar> s) {
  s.dFa_dOmega = Scalar(0);
  return s;
}

}  // namespace fowt
